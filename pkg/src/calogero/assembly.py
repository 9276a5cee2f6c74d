"""Assembly of the relative-motion spectrum from angular and radial levels.

Every angular level mu contributes the radial ladder of
-d^2/dr^2 + c^2 r^2 + (lambda - 1/4)/r^2 with lambda = (3 mu)^2.  Negative
angular eigenvalues make the energy unbounded below, so the permissibility
report is computed first and gates the assembly.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Union

from .angular import (
    AngularLevel,
    ConnectionMatrix,
    Coupling,
    ExplicitCase,
    PermissibilityReport,
    Series,
    angular_spectrum,
    explicit_spectrum,
    permissibility,
)
from .radial import RadialBoundary, RadialLevel, ZeroLambdaError, omega_to_c, solve_radial, solve_radial_negative

COLLATION_TOL = 1e-9  # relative to 2c

KappaPolicy = Union[RadialBoundary, Callable[[float], RadialBoundary]]


@dataclass(frozen=True)
class ModelConfig:
    """Coupling, connection matrix and oscillator frequency (hbar = 2m = 1).

    ``kappa_policy`` is either one radial boundary used for every lambda < 1
    or a callable lambda -> RadialBoundary.  ``case`` names one of the four
    solvable connection matrices; when set, ``U`` is taken from it and the
    angular levels come from the closed forms.
    """

    coupling: Coupling
    U: ConnectionMatrix = field(default_factory=ConnectionMatrix.sigma1)
    omega: float = 1.0
    kappa_policy: KappaPolicy = field(default_factory=RadialBoundary)
    case: ExplicitCase | None = None

    def __post_init__(self):
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise ValueError(f"omega = {self.omega} must be positive")
        if self.case is not None:
            object.__setattr__(self, "case", ExplicitCase(self.case))
            object.__setattr__(self, "U", self.case.connection)

    @property
    def c(self) -> float:
        return omega_to_c(self.omega)

    def boundary_for(self, lam: float) -> RadialBoundary:
        if isinstance(self.kappa_policy, RadialBoundary):
            return self.kappa_policy
        return self.kappa_policy(lam)

    @classmethod
    def explicit(cls, case, nu: float, omega: float = 1.0, **kw) -> "ModelConfig":
        from .angular import CASE_ALIASES

        case = CASE_ALIASES.get(case, case) if isinstance(case, str) else case
        case = ExplicitCase(case)
        coupling = Coupling(nu, allow_oscillator_limit=nu == 1.0)
        return cls(coupling, case.connection, omega, case=case, **kw)


@dataclass(frozen=True)
class EnergyLevel:
    """One radial level m on top of one angular level."""

    E: float
    m: int
    angular: AngularLevel
    reps: frozenset
    total_multiplicity: int

    @property
    def mu(self) -> float:
        return self.angular.mu.value

    @property
    def lam(self) -> float:
        return self.angular.lam

    @property
    def series(self) -> Series:
        return self.angular.series

    def sort_key(self):
        # type-1 and type-2 collisions in E are ordered by series tag
        return (self.E, self.series.rank, self.angular.mu.lam, self.m)


@dataclass(frozen=True)
class CollatedLevel:
    """Energies closer than 1e-9 * 2c merged into one eigenspace."""

    E: float
    members: tuple[EnergyLevel, ...]

    @property
    def multiplicity(self) -> int:
        return sum(lv.total_multiplicity for lv in self.members)

    @property
    def reps(self) -> frozenset:
        out: set = set()
        for lv in self.members:
            out |= lv.reps
        return frozenset(out)


@dataclass(frozen=True)
class NegativeBranch:
    """Windowed radial roots on top of a negative angular level (demo only)."""

    angular: AngularLevel
    window: tuple[float, float]
    levels: tuple[RadialLevel, ...]


@dataclass(frozen=True)
class EnergySpectrum:
    config: ModelConfig
    levels: tuple[EnergyLevel, ...]
    permissibility: PermissibilityReport
    e_max: float
    negative_branches: tuple[NegativeBranch, ...] = ()

    @property
    def permissible(self) -> bool:
        return self.permissibility.permissible

    def collated(self) -> list[CollatedLevel]:
        tol = COLLATION_TOL * 2.0 * self.config.c
        groups: list[list[EnergyLevel]] = []
        for lv in self.levels:
            if groups and abs(lv.E - groups[-1][0].E) < tol:
                groups[-1].append(lv)
            else:
                groups.append([lv])
        return [CollatedLevel(g[0].E, tuple(g)) for g in groups]

    def energies(self) -> list[float]:
        return [lv.E for lv in self.levels]


def _angular_levels(config: ModelConfig, mu_max: float) -> list[AngularLevel]:
    if config.case is not None:
        return explicit_spectrum(config.case, config.coupling, mu_max=mu_max)
    return angular_spectrum(config.coupling, config.U, mu_max)


def _radial_for(config: ModelConfig, level: AngularLevel, e_max: float) -> list[EnergyLevel]:
    c = config.c
    s = 3.0 * level.mu.value
    lam = level.lam
    bc = config.boundary_for(lam)
    # lowest possible ladder is 2m + 1 - s (kappa = inf); one spare level
    # covers the extra root of a generic kappa below the first pole
    n_levels = max(1, int((e_max / (2.0 * c) - 1.0 + s) / 2.0) + 2)
    if lam == 0.0:
        if bc.kappa != 0.0:
            raise ZeroLambdaError("lambda = 0 is only assembled with the regular (kappa = 0) ladder")
        radial = [RadialLevel(2.0 * c * (2 * m + 1), m, (2 * m + 1) / 4.0) for m in range(n_levels)]
    else:
        radial = solve_radial(lam, bc, c, n_levels)
    return [
        EnergyLevel(r.energy, r.m, level, level.reps, level.multiplicity) for r in radial if r.energy <= e_max
    ]


def energy_spectrum(
    config: ModelConfig,
    e_max: float,
    negative_window: tuple[float, float] | None = None,
    workers: int | None = None,
) -> EnergySpectrum:
    """All levels with E <= e_max, sorted by (E, series tag).

    An impermissible configuration yields no levels; its report lists the
    negative angular eigenvalues.  ``negative_window`` (an epsilon window)
    opts in to the windowed radial roots on top of those levels.
    """
    if not e_max > 0:
        raise ValueError("e_max must be positive")
    c = config.c
    if config.coupling.is_oscillator:
        report = PermissibilityReport(True)  # nu = 1: closed forms only, all mu real
    else:
        report = permissibility(config.coupling, config.U)
    if not report.permissible:
        branches = ()
        if negative_window is not None:
            branches = tuple(
                NegativeBranch(
                    lv,
                    tuple(negative_window),
                    tuple(solve_radial_negative(math.sqrt(-lv.lam), config.boundary_for(lv.lam), c, negative_window)),
                )
                for lv in report.negative_levels
                if math.isfinite(lv.mu.value)
            )
        return EnergySpectrum(config, (), report, e_max, branches)
    mu_max = max(e_max / (2.0 * c) - 1.0, 1.0) / 3.0
    angular = [lv for lv in _angular_levels(config, mu_max) if not lv.mu.imaginary]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        chunks = list(pool.map(lambda lv: _radial_for(config, lv, e_max), angular))
    levels = sorted((lv for chunk in chunks for lv in chunk), key=EnergyLevel.sort_key)
    return EnergySpectrum(config, tuple(levels), report, e_max)


# ------------------------------------------------------------ oscillator limit


@dataclass(frozen=True)
class Shell:
    N: int
    energy: float
    degeneracy: int

    @property
    def expected(self) -> int:
        return self.N + 1


@dataclass(frozen=True)
class OscillatorReport:
    c: float
    shells: tuple[Shell, ...]
    continuity_nu: float
    continuity_deviation: float
    continuity_tol: float

    @property
    def shells_ok(self) -> bool:
        return all(s.degeneracy == s.expected for s in self.shells)

    @property
    def ok(self) -> bool:
        return self.shells_ok and self.continuity_deviation <= self.continuity_tol


def oscillator_shells(c: float, e_max: float) -> list[Shell]:
    """Shells 2c(N + 1) of the nu = 1, U = sigma1 closed-form spectrum.

    k = 3 mu runs over the non-negative integers; lambda = k^2 = 0 takes
    the regular radial ladder.
    """
    coupling = Coupling(1.0, allow_oscillator_limit=True)
    k_max = e_max / (2.0 * c) - 1.0
    counts: dict[int, int] = {}
    for lv in explicit_spectrum(ExplicitCase.FREE, coupling, mu_max=k_max / 3.0 + 1e-9):
        k = 3.0 * lv.mu.value
        if abs(k - round(k)) > 1e-9:
            raise ArithmeticError(f"non-integral k = {k} at nu = 1")
        k = int(round(k))
        for m in range((int(k_max) - k) // 2 + 1):
            N = 2 * m + k
            counts[N] = counts.get(N, 0) + lv.multiplicity
    top = int(math.floor(k_max + 1e-9))
    return [Shell(N, 2.0 * c * (N + 1), counts.get(N, 0)) for N in range(top + 1)]


def oscillator_limit_check(omega: float, e_max: float, delta: float = 1e-6) -> OscillatorReport:
    """Shell degeneracies at nu = 1 and distance of the nu = 1 - delta free
    spectrum from the shell energies."""
    c = omega_to_c(omega)
    shells = oscillator_shells(c, e_max)
    nu = 1.0 - delta
    spec = energy_spectrum(ModelConfig.explicit(ExplicitCase.FREE, nu, omega), e_max)
    worst = 0.0
    for lv in spec.levels:
        N = round(lv.E / (2.0 * c) - 1.0)
        worst = max(worst, abs(lv.E - 2.0 * c * (N + 1)))
    return OscillatorReport(c, tuple(shells), nu, worst, 2.0 * c * 1e-5)


# ------------------------------------------------------------ coordinates


def jacobi_coords(r: float, phi: float) -> tuple[float, float, float]:
    """(x1 - x2, x2 - x3, x3 - x1) for polar relative coordinates (r, phi)."""
    k = r * math.sqrt(2.0)
    return (
        k * math.sin(phi),
        k * math.sin(phi + 2.0 * math.pi / 3.0),
        k * math.sin(phi + 4.0 * math.pi / 3.0),
    )


__all__ = [
    "CollatedLevel",
    "EnergyLevel",
    "EnergySpectrum",
    "ModelConfig",
    "NegativeBranch",
    "OscillatorReport",
    "Shell",
    "energy_spectrum",
    "jacobi_coords",
    "oscillator_limit_check",
    "oscillator_shells",
]
