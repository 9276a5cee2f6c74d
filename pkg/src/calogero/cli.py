"""Command line: spectra, figure data, permissibility maps and the
validation suite.

Exit codes: 0 ok, 1 validation failure, 2 bad input, 3 numerical failure.
Floats are written with ``%.12e`` and JSON keys are sorted, so a fixed
configuration always produces identical bytes.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

try:  # Python >= 3.11
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - exercised on 3.10
    import tomli as tomllib

from . import specfun as sf
from .angular import (
    CASE_ALIASES,
    ConnectionMatrix,
    Coupling,
    ExplicitCase,
    MuValue,
    explicit_spectrum,
    f2,
    f2_scaled_imag,
    f_type1,
    permissibility,
    type1_poles,
)
from .angular.equations import f2_weights
from .assembly import EnergySpectrum, ModelConfig, energy_spectrum
from .radial import RadialBoundary, f_lambda, f_lambda_poles
from .symmetry import REP_ORDER

SCHEMA_VERSION = 1
CSV_MAGIC = "# calogero-csv v1"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3

MAX_MAP_CELLS = 10**6


class InputError(ValueError):
    """Bad command-line or config-file input (exit code 2)."""


# ------------------------------------------------------------ formatting


def fmt_float(v: float) -> str:
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return "%.12e" % v


def dump_json(obj: Any) -> str:
    """JSON with sorted keys and every float written as %.12e.  Non-finite
    floats become the strings "inf", "-inf", "nan"."""
    return _dump(obj, 0) + "\n"


def _dump(obj: Any, depth: int) -> str:
    pad = "  " * (depth + 1)
    end = "  " * depth
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return fmt_float(v) if math.isfinite(v) else json.dumps(fmt_float(v))
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_dump(obj[k], depth + 1)}" for k in sorted(obj, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[\n" + ",\n".join(pad + _dump(v, depth + 1) for v in obj) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def csv_text(kind: str, header: Sequence[str], rows: Iterable[Sequence[Any]], extra: str = "") -> str:
    lines = [f"{CSV_MAGIC} {kind}" + (f" {extra}" if extra else ""), ",".join(header)]
    for row in rows:
        lines.append(",".join(_csv_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def _csv_cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt_float(float(v))
    return str(v)


def read_csv(text: str) -> tuple[str, list[str], list[list[str]]]:
    """(kind line, header, rows) of a file written by :func:`csv_text`."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith(CSV_MAGIC):
        raise ValueError("missing calogero-csv header")
    return lines[0][len(CSV_MAGIC) + 1 :], lines[1].split(","), [ln.split(",") for ln in lines[2:]]


def _reps(reps) -> list[str]:
    return [r.value for r in REP_ORDER if r in reps]


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(text.encode("utf-8"))


# ------------------------------------------------------------ run config


@dataclass
class RunConfig:
    """Merged configuration: defaults, then the config file, then flags."""

    nu: float | None = None
    alpha: float | None = None
    beta: float | None = None
    omega: float = 1.0
    kappa: float = 0.0
    emax: float | None = None
    levels: int | None = None
    case: str | None = None
    format: str = "json"
    out: str | None = None
    negative_window: tuple[float, float] | None = None
    expand_pairs: bool = False

    def validate(self) -> None:
        if self.nu is None:
            raise InputError("nu is required (allowed range 1/2 < nu < 3/2, nu != 1)")
        if not (0.5 < self.nu < 1.5) or math.isnan(self.nu):
            raise InputError(f"nu = {self.nu} outside the allowed range 1/2 < nu < 3/2 (nu != 1)")
        if self.nu == 1.0 and self.case != "free":
            raise InputError("nu = 1 is accepted only with case = free (oscillator limit); allowed range 1/2 < nu < 3/2")
        if self.case is not None:
            if self.case not in CASE_ALIASES:
                raise InputError(f"unknown case {self.case!r}; choose from {', '.join(CASE_ALIASES)}")
            if self.alpha is not None or self.beta is not None:
                raise InputError("give either case or alpha/beta, not both")
        elif self.alpha is None:
            raise InputError("give case or alpha (beta defaults to 0)")
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if v is not None and not math.isfinite(v):
                raise InputError(f"{name} must be finite")
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise InputError(f"omega = {self.omega} must be positive")
        if math.isnan(self.kappa):
            raise InputError("kappa must be a real number or inf")
        if self.emax is not None and not (self.emax > 0 and math.isfinite(self.emax)):
            raise InputError("emax must be positive")
        if self.levels is not None and self.levels < 1:
            raise InputError("levels must be at least 1")
        if self.format not in ("json", "csv"):
            raise InputError("format must be json or csv")
        if self.negative_window is not None and not self.negative_window[0] < self.negative_window[1]:
            raise InputError("negative window must satisfy lo < hi")

    def model(self) -> ModelConfig:
        bc = RadialBoundary(self.kappa)
        if self.case is not None:
            return ModelConfig.explicit(self.case, self.nu, self.omega, kappa_policy=bc)
        U = ConnectionMatrix(self.alpha, self.beta or 0.0)
        return ModelConfig(Coupling(self.nu), U, self.omega, bc)


CONFIG_KEYS = {f.name for f in fields(RunConfig)} - {"negative_window", "expand_pairs"}


def load_config_file(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read config file: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise InputError(f"config file is not valid TOML: {exc}") from exc
    unknown = set(data) - CONFIG_KEYS
    if unknown:
        raise InputError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def _coerce(data: dict) -> dict:
    out = {}
    for key, val in data.items():
        if key in ("nu", "alpha", "beta", "omega", "emax"):
            out[key] = _as_float(key, val)
        elif key == "kappa":
            out[key] = _as_float(key, val)
        elif key == "levels":
            if isinstance(val, bool) or not isinstance(val, int):
                raise InputError("levels must be an integer")
            out[key] = val
        else:
            out[key] = val if val is None else str(val)
    return out


def _as_float(key: str, val) -> float:
    if isinstance(val, bool):
        raise InputError(f"{key} must be a number")
    try:
        return float(val)
    except (TypeError, ValueError):
        raise InputError(f"{key} must be a number, got {val!r}") from None


def build_run_config(args: argparse.Namespace) -> RunConfig:
    merged: dict = {}
    if getattr(args, "config", None):
        merged.update(_coerce(load_config_file(args.config)))
    flags = {k: getattr(args, k) for k in CONFIG_KEYS if getattr(args, k, None) is not None}
    merged.update(_coerce(flags))
    if getattr(args, "negative_window", None):
        merged["negative_window"] = tuple(args.negative_window)
    merged["expand_pairs"] = bool(getattr(args, "expand_pairs", False))
    cfg = RunConfig(**merged)
    cfg.validate()
    return cfg


# ------------------------------------------------------------ spectrum


def spectrum_records(spec: EnergySpectrum, expand_pairs: bool = False) -> list[dict]:
    """One record per level.  With ``expand_pairs`` every type-2 level is
    split into its tau and conj(tau) members (multiplicity 1 each), marked by
    ``tau_im`` = +1 / -1; other records get ``tau_im`` = 0."""
    out = []
    for lv in spec.levels:
        rec = {
            "E": lv.E,
            "m": lv.m,
            "mu": lv.mu,
            "lambda": lv.lam,
            "series": lv.series.value,
            "reps": _reps(lv.reps),
            "multiplicity": lv.total_multiplicity,
        }
        if not expand_pairs:
            out.append(rec)
        elif lv.series.is_type2:
            half = lv.total_multiplicity // 2
            out.extend(dict(rec, multiplicity=half, tau_im=sign) for sign in (1, -1))
        else:
            out.append(dict(rec, tau_im=0))
    return out


def spectrum_document(cfg: RunConfig, spec: EnergySpectrum) -> dict:
    model = spec.config
    rep = spec.permissibility
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "spectrum",
        "config": {
            "nu": model.coupling.nu,
            "alpha": model.U.alpha,
            "beta": model.U.beta,
            "omega": model.omega,
            "c": model.c,
            "kappa": cfg.kappa,
            "emax": spec.e_max,
            "levels": cfg.levels,
            "case": model.case.value if model.case is not None else None,
            "separating": model.U.separating,
        },
        "permissible": spec.permissible,
        "permissibility": {
            "negative_count": len(rep.negative_levels),
            "type1_negative_count": rep.type1_negative_count,
            "type2_negative_count": rep.type2_negative_count,
            "most_negative_lambda": rep.most_negative_lambda,
            "criteria_fired": list(rep.criteria_fired),
            "negative_levels": [
                {"x": lv.mu.value, "lambda": lv.lam, "series": lv.series.value, "multiplicity": lv.multiplicity}
                for lv in rep.negative_levels
            ],
        },
        "levels": spectrum_records(spec, cfg.expand_pairs),
        "collated": [
            {"E": g.E, "multiplicity": g.multiplicity, "reps": _reps(g.reps), "members": len(g.members)}
            for g in spec.collated()
        ],
    }
    if spec.negative_branches:
        doc["negative_branches"] = [
            {
                "x": b.angular.mu.value,
                "series": b.angular.series.value,
                "window": list(b.window),
                "epsilon": [r.epsilon for r in b.levels],
                "E": [r.energy for r in b.levels],
            }
            for b in spec.negative_branches
        ]
    return doc


SPECTRUM_HEADER = ("E", "m", "mu", "lambda", "series", "reps", "multiplicity")


def spectrum_csv(spec: EnergySpectrum, expand_pairs: bool = False) -> str:
    header = SPECTRUM_HEADER + (("tau_im",) if expand_pairs else ())
    rows = []
    for r in spectrum_records(spec, expand_pairs):
        row = [r["E"], r["m"], r["mu"], r["lambda"], r["series"], " ".join(r["reps"]), r["multiplicity"]]
        if expand_pairs:
            row.append(r["tau_im"])
        rows.append(tuple(row))
    extra = f"permissible={'true' if spec.permissible else 'false'} negative_count={len(spec.permissibility.negative_levels)}"
    return csv_text("spectrum", header, rows, extra)


def compute_spectrum(cfg: RunConfig) -> EnergySpectrum:
    model = cfg.model()
    if cfg.emax is not None:
        spec = energy_spectrum(model, cfg.emax, cfg.negative_window)
    else:
        # grow the energy cutoff until the requested number of levels exists
        want = cfg.levels or 20
        e_max = 2.0 * model.c * 4.0
        while True:
            spec = energy_spectrum(model, e_max, cfg.negative_window)
            if not spec.permissible or len(spec.levels) >= want:
                break
            e_max *= 2.0
    if cfg.levels is not None and len(spec.levels) > cfg.levels:
        spec = EnergySpectrum(spec.config, spec.levels[: cfg.levels], spec.permissibility, spec.e_max, spec.negative_branches)
    return spec


def cmd_spectrum(args: argparse.Namespace) -> int:
    cfg = build_run_config(args)
    spec = compute_spectrum(cfg)
    if cfg.format == "json":
        text = dump_json(spectrum_document(cfg, spec))
    else:
        text = spectrum_csv(spec, cfg.expand_pairs)
    _write(text, cfg.out)
    return EXIT_OK


# ------------------------------------------------------------ figure data


FIGURE_DEFAULTS = {
    2: {"nu": 2.0 / 3.0},
    3: {
        "left": (21.0 / 20.0, 11.0 * math.pi / 20.0, math.pi / 10.0),
        "right": (1001.0 / 1000.0, 3.0 * math.pi / 10.0, 715.0 * math.pi / 1000.0),
    },
    4: {"lam": 0.2},
    5: {"nu": 0.8},
}


def _masked(values: np.ndarray, grid: np.ndarray, poles: Sequence[float], step: float) -> list:
    out = []
    for g, v in zip(grid, values):
        near = any(abs(g - p) < step for p in poles)
        out.append(None if near or not math.isfinite(v) else float(v))
    return out


def _safe(fn, *a) -> float:
    try:
        return fn(*a)
    except sf.PoleError:
        return math.nan


def figure_files(figure: int, overrides: dict) -> dict[str, str]:
    """File name -> CSV text for one figure."""
    files: dict[str, str] = {}
    if figure == 2:
        nu = overrides.get("nu", FIGURE_DEFAULTS[2]["nu"])
        c = Coupling(nu)
        step = 1e-3
        grid = np.round(np.arange(0.0, 8.0 + step / 2, step), 12)
        poles = {s: [p for p in type1_poles(s, c, 6) if p <= 8.0] for s in "AB"}
        fa = np.array([_safe(f_type1, "A", c, MuValue(float(m))) for m in grid])
        fb = np.array([_safe(f_type1, "B", c, MuValue(float(m))) for m in grid])
        ma = _masked(fa, grid, poles["A"], step)
        mb = _masked(fb, grid, poles["B"], step)
        files["fig2_type1.csv"] = csv_text("fig2-type1", ("mu", "F_A", "F_B"), zip(grid.tolist(), ma, mb), f"nu={fmt_float(nu)}")
        rows = [(s, m, p) for s in "AB" for m, p in enumerate(poles[s])]
        files["fig2_poles.csv"] = csv_text("fig2-poles", ("series", "m", "mu"), rows)
    elif figure == 3:
        nu, a, b = overrides.get("left", FIGURE_DEFAULTS[3]["left"])
        c, U = Coupling(nu), ConnectionMatrix(a, b)
        xs = np.round(np.arange(0.0, 2.0 + 5e-4, 1e-3), 12)
        vals = [math.exp(math.pi * x) * f2_scaled_imag(c, U, float(x)) for x in xs]
        files["fig3_left.csv"] = csv_text(
            "fig3-left", ("x", "F2"), zip(xs.tolist(), vals), f"nu={fmt_float(nu)} alpha={fmt_float(a)} beta={fmt_float(b)}"
        )
        rep = permissibility(c, U)
        rows = [(lv.series.value, lv.mu.value, lv.lam) for lv in rep.negative_levels if lv.series.is_type2]
        files["fig3_left_roots.csv"] = csv_text("fig3-left-roots", ("series", "x", "lambda"), rows)
        nu, a, b = overrides.get("right", FIGURE_DEFAULTS[3]["right"])
        c, U = Coupling(nu), ConnectionMatrix(a, b)
        ms = np.round(np.arange(0.0, 12.0 + 5e-4, 1e-3), 12)
        w0, _, _ = f2_weights(c, U)
        vals = [f2(c, U, MuValue(float(m))) for m in ms]
        files["fig3_right.csv"] = csv_text(
            "fig3-right",
            ("mu", "F2", "first_term"),
            ((m, v, w0 * math.cos(math.pi * m)) for m, v in zip(ms.tolist(), vals)),
            f"nu={fmt_float(nu)} alpha={fmt_float(a)} beta={fmt_float(b)}",
        )
    elif figure == 4:
        lam = overrides.get("lam", FIGURE_DEFAULTS[4]["lam"])
        step = 1e-3
        eps = np.round(np.arange(-2.0, 6.0 + step / 2, step), 12)
        poles = [p for p in f_lambda_poles(lam, 10) if p <= 6.0]
        vals = np.array([_safe(f_lambda, lam, float(e)) for e in eps])
        files["fig4_radial.csv"] = csv_text("fig4-radial", ("epsilon", "F_lambda"), zip(eps.tolist(), _masked(vals, eps, poles, step)), f"lambda={fmt_float(lam)}")
        files["fig4_poles.csv"] = csv_text("fig4-poles", ("m", "epsilon"), enumerate(poles))
    elif figure == 5:
        nu = overrides.get("nu", FIGURE_DEFAULTS[5]["nu"])
        c = Coupling(nu)
        rows = []
        for case in ExplicitCase:
            for lv in explicit_spectrum(case, c, mu_max=8.0):
                sign = {1.0: "+", -1.0: "-", 0.5: "+", -0.5: "-"}.get(lv.re_tau, ".")
                rows.append((case.value, lv.series.value, lv.series.letter or "2", sign, lv.mu.value, lv.multiplicity, " ".join(_reps(lv.reps))))
        files["fig5_ladders.csv"] = csv_text(
            "fig5-ladders", ("case", "series", "letter", "re_tau_sign", "mu", "multiplicity", "reps"), rows, f"nu={fmt_float(nu)}"
        )
        spec = energy_spectrum(ModelConfig.explicit(ExplicitCase.FREE, nu, math.sqrt(8.0 / 3.0)), 2.0 * 12.0)
        files["fig5_energy.csv"] = spectrum_csv(spec)
    else:
        raise InputError(f"unknown figure {figure}; choose 2, 3, 4 or 5")
    return files


def cmd_figure_data(args: argparse.Namespace) -> int:
    overrides = {}
    if args.nu is not None:
        overrides["nu"] = args.nu
    if args.lam is not None:
        overrides["lam"] = args.lam
    files = figure_files(args.figure, overrides)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in sorted(files):
        (out_dir / name).write_bytes(files[name].encode("utf-8"))
        print(out_dir / name)
    return EXIT_OK


# ------------------------------------------------------------ permissibility map


MAP_HEADER = ("alpha", "beta", "separating", "permissible", "negative_count", "type2_negative_count", "most_negative_lambda")


def make_grid(start: float, stop: float, n: float) -> np.ndarray:
    """``n`` evenly spaced points from start to stop inclusive."""
    if n != int(n) or n < 1 or not (math.isfinite(start) and math.isfinite(stop)):
        raise InputError("grid needs finite START STOP and an integer N >= 1")
    return np.linspace(start, stop, int(n))


def map_cell(nu: float, alpha: float, beta: float) -> tuple:
    U = ConnectionMatrix(alpha, beta)
    rep = permissibility(Coupling(nu), U)
    return (alpha, beta, U.separating, rep.permissible, len(rep.negative_levels), rep.type2_negative_count, rep.most_negative_lambda)


def _map_cell_star(args):
    return map_cell(*args)


def permissible_map(nu: float, alphas: np.ndarray, betas: np.ndarray, workers: int = 1) -> list[tuple]:
    Coupling(nu)  # validate before fanning out
    tasks = [(nu, float(a), float(b)) for a in alphas for b in betas]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_map_cell_star, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    return [map_cell(*t) for t in tasks]


def cmd_permissible_map(args: argparse.Namespace) -> int:
    alphas, betas = make_grid(*args.alpha), make_grid(*args.beta)
    if len(alphas) * len(betas) > MAX_MAP_CELLS:
        raise InputError(f"grid has {len(alphas) * len(betas)} cells; the limit is {MAX_MAP_CELLS}")
    if args.workers < 1:
        raise InputError("workers must be at least 1")
    try:
        Coupling(args.nu)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rows = permissible_map(args.nu, alphas, betas, args.workers)
    _write(csv_text("permissible-map", MAP_HEADER, rows, f"nu={fmt_float(args.nu)}"), args.out)
    return EXIT_OK


# ------------------------------------------------------------ validate


def cmd_validate(args: argparse.Namespace) -> int:
    from .validation import CRITERIA, run_suite

    only = None
    if args.only:
        try:
            only = sorted({int(v) for v in args.only.split(",")})
        except ValueError:
            raise InputError("--only takes a comma list of criterion ids") from None
        bad = [i for i in only if i not in CRITERIA]
        if bad:
            raise InputError(f"unknown criterion ids {bad}; valid ids are 1..{max(CRITERIA)}")
    results = run_suite(only, inject_fault=args.inject_fault)
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "kind": "validation",
            "fault_injected": bool(args.inject_fault),
            "passed": not failed,
            "failed": [r.cid for r in failed],
            "criteria": [
                {"id": r.cid, "name": r.name, "passed": r.passed, "detail": _plain(r.detail)} for r in results
            ],
        }
        _write(dump_json(doc), args.out)
    else:
        _write("".join(r.line() + "\n" for r in results), args.out)
    for r in failed:
        print(f"criterion {r.cid} failed: {r.name}", file=sys.stderr)
    return EXIT_VALIDATION if failed else EXIT_OK


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    return str(obj)


# ------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="calogero", description="Spectra of the three-particle Calogero model")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectrum", help="assembled energy spectrum")
    s.add_argument("--config", help="TOML file with flat keys (flags override it)")
    s.add_argument("--nu", type=float)
    s.add_argument("--alpha", type=float)
    s.add_argument("--beta", type=float)
    s.add_argument("--omega", type=float)
    s.add_argument("--kappa", type=float, help="radial extension parameter for lambda < 1 ('inf' allowed)")
    s.add_argument("--emax", type=float)
    s.add_argument("--levels", type=int)
    s.add_argument("--case", choices=sorted(CASE_ALIASES))
    s.add_argument("--format", choices=("json", "csv"))
    s.add_argument("--out")
    s.add_argument("--negative-window", type=float, nargs=2, metavar=("LO", "HI"),
                   help="epsilon window for radial roots on negative angular levels")
    s.add_argument("--expand-pairs", action="store_true",
                   help="list the tau and conj(tau) members of each type-2 level separately")
    s.set_defaults(func=cmd_spectrum)

    f = sub.add_parser("figure-data", help="CSV data behind figures 2-5")
    f.add_argument("figure", type=int)
    f.add_argument("--out-dir", default=".")
    f.add_argument("--nu", type=float)
    f.add_argument("--lam", type=float)
    f.set_defaults(func=cmd_figure_data)

    m = sub.add_parser("permissible-map", help="permissibility over an (alpha, beta) grid")
    m.add_argument("--nu", type=float, required=True)
    m.add_argument("--alpha", type=float, nargs=3, required=True, metavar=("START", "STOP", "N"))
    m.add_argument("--beta", type=float, nargs=3, required=True, metavar=("START", "STOP", "N"))
    m.add_argument("--workers", type=int, default=1)
    m.add_argument("--out")
    m.set_defaults(func=cmd_permissible_map)

    v = sub.add_parser("validate", help="run the acceptance suite")
    v.add_argument("--only", help="comma list of criterion ids")
    v.add_argument("--inject-fault", action="store_true", help="perturb the gamma kernel (test hook)")
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.add_argument("--out")
    v.set_defaults(func=cmd_validate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on bad flags, 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ArithmeticError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
