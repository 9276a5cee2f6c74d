"""Root finders for the angular eigenvalue equations, closed-form spectra of
the four solvable cases and the permissibility check.

Type-1 brackets come from the analytic pole ladders.  Type-2 roots have no
such ladder and are located by a sign-change scan with a refinement pass
around local minima of |F2 - Re tau|.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from .. import specfun as sf
from . import equations as eq
from .types import (
    AngularLevel,
    BracketingError,
    ConnectionMatrix,
    Coupling,
    MuValue,
    SeparatingInputError,
    Series,
)

log = logging.getLogger(__name__)

ROOT_XTOL = 1e-12
ROOT_RTOL = 4.0 * np.finfo(float).eps
# type-2 roots on the imaginary axis can sit where F2 grows like e^{pi x};
# they are refined to machine precision
SCAN_XTOL = 1e-15

TYPE2_SCAN_STEP = 1e-2
TYPE2_REFINE_STEP = 1e-4
IMAG_SCAN_STEP_NEAR = 1e-3
IMAG_SCAN_SWITCH = 10.0
# beyond the switch the scaled function is monotone between roots on log x
IMAG_LOG_STEP = 1e-3
X_MAX_START = 10.0
X_MAX_CAP = 1e12

_TYPE1_SERIES = {
    ("A", 1): Series.A_PLUS,
    ("A", -1): Series.A_MINUS,
    ("B", 1): Series.B_PLUS,
    ("B", -1): Series.B_MINUS,
}


def _brent(f, lo, hi, xtol: float = ROOT_XTOL):
    return brentq(f, lo, hi, xtol=xtol, rtol=ROOT_RTOL, maxiter=500)


# ------------------------------------------------------------------ type 1


def type1_real_roots(
    c: Coupling, letter: str, theta: float, n_levels: int | None = None, mu_max: float | None = None
) -> list[float]:
    """Real roots of F(mu) = K tan(theta), one per pole interval.

    Either ``n_levels`` (count) or ``mu_max`` (upper bound) must be given.
    """
    if n_levels is None and mu_max is None:
        raise ValueError("give n_levels or mu_max")
    rhs = eq.rhs_from_theta(c, theta)
    poles_needed = (n_levels or 0) + 2
    if mu_max is not None:
        poles_needed = max(poles_needed, int(mu_max / 2.0) + 3)
    poles = eq.type1_poles(letter, c, poles_needed)

    roots: list[float] = []
    if rhs.divergent:
        roots = list(poles)
    else:
        s, co = rhs.sin_theta, rhs.cos_theta

        def g(m):
            return eq.smooth_type1(letter, c, m, s, co)

        f0 = eq.f_type1_at_zero(letter, c)
        if f0 >= rhs.value:
            if f0 == rhs.value:
                roots.append(0.0)
            else:
                roots.append(_bracketed(g, 0.0, poles[0]))
        for lo, hi in zip(poles[:-1], poles[1:]):
            roots.append(_bracketed(g, lo, hi))
    if mu_max is not None:
        roots = [r for r in roots if r <= mu_max]
    if n_levels is not None:
        roots = roots[:n_levels]
    return roots


def _bracketed(g, lo, hi) -> float:
    glo, ghi = g(lo), g(hi)
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if glo * ghi > 0:
        raise BracketingError(f"no sign change on [{lo}, {hi}]")
    return _brent(g, lo, hi)


def type1_imag_root(c: Coupling, letter: str, theta: float) -> float | None:
    """x > 0 with F(i x) = K tan(theta), or None.  Exists iff F(0) < rhs."""
    rhs = eq.rhs_from_theta(c, theta)
    if rhs.divergent or rhs.value <= 0.0:
        return None
    f0 = eq.f_type1_at_zero(letter, c)
    if not f0 < rhs.value:
        return None
    target = math.log(rhs.value)

    def h(x):
        return eq.log_f_type1_imag(letter, c, x) - target

    lo, hi = 0.0, 1.0
    while h(hi) < 0.0:
        lo, hi = hi, hi * 4.0
        if hi > 1e300:
            raise BracketingError("imaginary type-1 root escaped to infinity")
    return _brent(h, lo, hi)


def solve_type1(
    c: Coupling,
    U: ConnectionMatrix,
    series: str,
    sign: int = 1,
    n_levels: int | None = None,
    mu_max: float | None = None,
) -> list[AngularLevel]:
    """Levels of one type-1 equation sorted by lambda.

    The imaginary root (at most one) is always reported; ``n_levels`` counts
    the real roots.  For a diagonal U the sign is irrelevant and the levels
    carry the separating series tag.
    """
    letter = series.upper()[0] if isinstance(series, str) else series.letter
    if n_levels is None and mu_max is None:
        n_levels = 10
    if U.separating:
        theta = U.alpha / 2.0
        tag = Series.SEP_A if letter == "A" else Series.SEP_B
    else:
        theta = eq.type1_angle(U, sign)
        tag = _TYPE1_SERIES[(letter, 1 if sign > 0 else -1)]
    out = []
    x = type1_imag_root(c, letter, theta)
    if x is not None:
        out.append(AngularLevel(MuValue.imag(x), tag))
    out.extend(AngularLevel(MuValue.real(m), tag) for m in type1_real_roots(c, letter, theta, n_levels, mu_max))
    return out


def separating_spectrum(
    c: Coupling, alpha: float, n_levels: int | None = None, mu_max: float | None = None
) -> list[AngularLevel]:
    """Merged A and B series for U = e^{i alpha} (multiplicity 6 each).

    ``n_levels`` is the number of real levels per series.
    """
    U = ConnectionMatrix(alpha, 0.0)
    if n_levels is None and mu_max is None:
        n_levels = 10
    ea = complex(U.cos_a, U.sin_a)
    closed = None
    if abs(ea + 1.0) < 1e-12:
        closed = _ladders_dirichlet(c.nu)
    elif abs(ea - 1.0) < 1e-12:
        closed = _ladders_neumann(c.nu)
    levels = []
    if closed is not None:
        for tag, ladder in ((Series.SEP_A, closed[0]), (Series.SEP_B, closed[1])):
            levels.extend(AngularLevel(MuValue.real(m), tag) for m in _take(ladder, n_levels, mu_max))
    else:
        levels = solve_type1(c, U, "A", n_levels=n_levels, mu_max=mu_max) + solve_type1(
            c, U, "B", n_levels=n_levels, mu_max=mu_max
        )
    return sorted(levels, key=AngularLevel.sort_key)


# -------------------------------------------------------- closed-form ladders


def _ladders_dirichlet(nu):
    return (lambda n: 2 * n + 1 + nu, lambda n: 2 * n + nu)


def _ladders_neumann(nu):
    return (lambda n: 2 * n + 1 + (1 - nu), lambda n: abs(2 * n + (1 - nu)))


def _take(ladder, n_levels, mu_max) -> list[float]:
    out = []
    n = 0
    while True:
        v = ladder(n)
        if mu_max is not None and v > mu_max:
            break
        if n_levels is not None and len(out) >= n_levels:
            break
        out.append(v)
        n += 1
    return sorted(out)


class ExplicitCase(str, Enum):
    DIRICHLET = "DirichletMinusOne"
    NEUMANN = "NeumannPlusOne"
    FREE = "FreeSigma1"
    MINUS_SIGMA1 = "MinusSigma1"

    @property
    def connection(self) -> ConnectionMatrix:
        return {
            ExplicitCase.DIRICHLET: ConnectionMatrix.minus_identity(),
            ExplicitCase.NEUMANN: ConnectionMatrix.identity(),
            ExplicitCase.FREE: ConnectionMatrix.sigma1(),
            ExplicitCase.MINUS_SIGMA1: ConnectionMatrix.minus_sigma1(),
        }[self]


CASE_ALIASES = {
    "dirichlet": ExplicitCase.DIRICHLET,
    "neumann": ExplicitCase.NEUMANN,
    "free": ExplicitCase.FREE,
    "minus_sigma1": ExplicitCase.MINUS_SIGMA1,
}


def free_ladders(nu: float) -> dict[Series, list]:
    """Closed-form mu ladders (callables of n) for U = sigma1."""
    d = eq.delta_offset(nu)
    return {
        Series.A_MINUS: [lambda n: 2 * n + 1 + nu],
        Series.B_PLUS: [lambda n: abs(2 * n + 1 - nu)],
        Series.B_MINUS: [lambda n: 2 * n + nu],
        Series.A_PLUS: [lambda n: 2 * n + 1 + (1 - nu)],
        Series.TYPE2_PLUS: [lambda n: 2 * n + 1 + d, lambda n: 2 * n + (1 - d)],
        Series.TYPE2_MINUS: [lambda n: 2 * n + d, lambda n: 2 * n + 1 + (1 - d)],
    }


_SWAP = {
    Series.A_PLUS: Series.A_MINUS,
    Series.A_MINUS: Series.A_PLUS,
    Series.B_PLUS: Series.B_MINUS,
    Series.B_MINUS: Series.B_PLUS,
    Series.TYPE2_PLUS: Series.TYPE2_MINUS,
    Series.TYPE2_MINUS: Series.TYPE2_PLUS,
}


def explicit_spectrum(
    case, c: Coupling, n_levels: int | None = None, mu_max: float | None = None
) -> list[AngularLevel]:
    """Closed-form spectrum of U = -1, +1, sigma1 or -sigma1.

    ``n_levels`` is the number of real levels per series (type-2 series get
    ``n_levels`` from the union of their two ladders).  nu = 1 is accepted.
    """
    case = CASE_ALIASES.get(case, case) if isinstance(case, str) else case
    case = ExplicitCase(case)
    if n_levels is None and mu_max is None:
        n_levels = 10
    nu = c.nu
    levels: list[AngularLevel] = []
    if case in (ExplicitCase.DIRICHLET, ExplicitCase.NEUMANN):
        la, lb = _ladders_dirichlet(nu) if case is ExplicitCase.DIRICHLET else _ladders_neumann(nu)
        levels += [AngularLevel(MuValue.real(m), Series.SEP_A) for m in _take(la, n_levels, mu_max)]
        levels += [AngularLevel(MuValue.real(m), Series.SEP_B) for m in _take(lb, n_levels, mu_max)]
    else:
        for tag, ladders in free_ladders(nu).items():
            if case is ExplicitCase.MINUS_SIGMA1:
                tag = _SWAP[tag]
            vals = sorted(v for lad in ladders for v in _take(lad, n_levels, mu_max))
            if n_levels is not None:
                vals = vals[:n_levels]
            levels += [AngularLevel(MuValue.real(m), tag) for m in vals]
    return sorted(levels, key=AngularLevel.sort_key)


# ------------------------------------------------------------------ type 2


def _scan_roots(fun, grid: np.ndarray, refine_step: float) -> list[float]:
    """Sign changes of ``fun`` on ``grid`` plus pairs of close roots hidden
    inside one cell, found by refining local minima of |fun|."""
    vals = np.array([fun(t) for t in grid])
    roots = []
    for i in range(len(grid) - 1):
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            roots.append(float(grid[i]))
        elif a * b < 0:
            roots.append(_brent(fun, float(grid[i]), float(grid[i + 1]), SCAN_XTOL))
    if vals[-1] == 0.0:
        roots.append(float(grid[-1]))
    absv = np.abs(vals)
    for i in range(1, len(grid) - 1):
        if absv[i] < absv[i - 1] and absv[i] < absv[i + 1] and vals[i - 1] * vals[i + 1] > 0 and vals[i] * vals[i - 1] > 0:
            fine = np.arange(grid[i - 1], grid[i + 1] + 0.5 * refine_step, refine_step)
            fv = np.array([fun(t) for t in fine])
            for j in range(len(fine) - 1):
                if fv[j] * fv[j + 1] < 0:
                    roots.append(_brent(fun, float(fine[j]), float(fine[j + 1]), SCAN_XTOL))
    return sorted(roots)


def type2_real_roots(
    c: Coupling, U: ConnectionMatrix, re_tau: float, n_levels: int | None = None, mu_max: float | None = None
) -> list[float]:
    if U.separating:
        raise SeparatingInputError("type-2 levels need a non-diagonal U")
    if n_levels is None and mu_max is None:
        raise ValueError("give n_levels or mu_max")

    def fun(m):
        return eq.f2(c, U, MuValue(m)) - re_tau

    # roots of F2 - r come two per unit-2 period asymptotically
    upper = mu_max if mu_max is not None else n_levels + 4.0
    while True:
        grid = np.arange(0.0, upper + TYPE2_SCAN_STEP, TYPE2_SCAN_STEP)
        roots = _scan_roots(fun, grid, TYPE2_REFINE_STEP)
        if mu_max is not None or len(roots) >= n_levels:
            break
        upper *= 2.0
    if mu_max is not None:
        roots = [r for r in roots if r <= mu_max]
    if n_levels is not None:
        roots = roots[:n_levels]
    return roots


@dataclass(frozen=True)
class ImagCutoff:
    x_max: float
    certified: bool


def certify_imag_cutoff(c: Coupling, U: ConnectionMatrix, threshold: float = 1.0) -> ImagCutoff:
    """Smallest X in 10 * 2^k with |F2(i x)| > threshold for all x >= X.

    Uses the three-term decomposition with each K function bounded by its
    maximal deviation from 1 over a geometric sample of [X, 1e6 X].  Terms
    sharing the sign of the dominant one are dropped from the lower bound;
    opposite-sign terms are subtracted at their largest relative size.
    """
    dec = eq.f2_decomposition(c, U)
    nu = c.nu
    kappas = (dec.kappa0, dec.kappa_minus, dec.kappa_plus)
    powers = dec.exponents(nu)
    order = sorted(
        (i for i in range(3) if abs(kappas[i]) > 1e-14), key=lambda i: powers[i], reverse=True
    )
    if not order:
        return ImagCutoff(X_MAX_START, False)
    dom = order[0]
    X = X_MAX_START
    while X <= X_MAX_CAP:
        xs = np.geomspace(X, X * 1e6, 200)
        dev = [0.0, 0.0, 0.0]
        for x in xs:
            ks = eq.k_functions(nu, float(x))
            for i in range(3):
                dev[i] = max(dev[i], abs(ks[i] - 1.0))
        dev = [1.5 * d + 1e-12 for d in dev]
        inner = abs(kappas[dom]) * (1.0 - dev[dom])
        for i in order[1:]:
            # a term with the dominant sign only helps while its K stays positive
            if kappas[i] * kappas[dom] > 0 and dev[i] < 1.0:
                continue
            inner -= abs(kappas[i]) * X ** (powers[i] - powers[dom]) * (1.0 + dev[i])
        if inner > 0 and math.pi * X + powers[dom] * math.log(X) + math.log(inner) > math.log(threshold):
            return ImagCutoff(X, True)
        X *= 2.0
    log.warning("type-2 imaginary cutoff not certified below x = %g; tail roots estimated", X_MAX_CAP)
    return ImagCutoff(X_MAX_CAP, False)


def imag_tail_estimates(c: Coupling, U: ConnectionMatrix, x_from: float) -> list[float]:
    """Sign changes beyond ``x_from`` of the pure power-law tail
    kappa0 + kappa- t^-1 + kappa+ t with t = x^(2 nu - 1).

    Used only when no cutoff could be certified (nu very close to 1): there
    the K functions equal 1 to working precision and the tail roots are
    those of a quadratic in t.  Locations that overflow come back as inf.
    """
    dec = eq.f2_decomposition(c, U)
    p = 2.0 * c.nu - 1.0
    t_from = x_from**p
    roots = np.roots([dec.kappa_plus, dec.kappa0, dec.kappa_minus]) if dec.kappa_plus else (
        np.array([-dec.kappa_minus / dec.kappa0]) if dec.kappa0 else np.array([])
    )
    out = []
    for t in roots:
        if abs(t.imag) > 1e-12 * abs(t) or t.real <= t_from:
            continue
        log_x = math.log(t.real) / p
        out.append(math.exp(log_x) if log_x < 700.0 else math.inf)
    return sorted(out)


def type2_imag_roots(
    c: Coupling, U: ConnectionMatrix, re_tau: float, cut: ImagCutoff | None = None
) -> list[float]:
    """All x > 0 with F2(i x) = re_tau, up to the certified cutoff.

    If no cutoff is certified the roots past the scan cap are the
    asymptotic estimates of :func:`imag_tail_estimates`.
    """
    if U.separating:
        raise SeparatingInputError("type-2 levels need a non-diagonal U")
    if cut is None:
        cut = certify_imag_cutoff(c, U)

    def fun(x):
        return eq.f2_scaled_imag(c, U, x, re_tau)

    top = min(IMAG_SCAN_SWITCH, cut.x_max)
    near = np.arange(IMAG_SCAN_STEP_NEAR, top + 1e-12, IMAG_SCAN_STEP_NEAR)
    # tiny x: F2 is even in mu, so a root at x -> 0 would be a real root at 0
    grid = np.concatenate([[1e-9], near])
    roots = [r for r in _scan_roots(fun, grid, IMAG_SCAN_STEP_NEAR / 10.0) if r > 1e-9]
    if cut.x_max > top:
        lo, hi = math.log(grid[-1]), math.log(cut.x_max)
        ugrid = np.linspace(lo, hi, max(2, int(math.ceil((hi - lo) / IMAG_LOG_STEP)) + 1))
        far = _scan_roots(lambda u: fun(math.exp(u)), ugrid, IMAG_LOG_STEP / 10.0)
        roots += [math.exp(u) for u in far if u > lo]
    if not cut.certified:
        roots += imag_tail_estimates(c, U, cut.x_max)
    return roots


def solve_type2(
    c: Coupling,
    U: ConnectionMatrix,
    re_tau: float,
    n_levels: int | None = None,
    mu_max: float | None = None,
) -> list[AngularLevel]:
    """Levels with Re tau = +-1/2; each carries a tau pair (multiplicity 2).

    Imaginary roots are always included; ``n_levels`` counts real roots.
    """
    if re_tau not in (0.5, -0.5):
        raise ValueError("re_tau must be +1/2 or -1/2")
    if n_levels is None and mu_max is None:
        n_levels = 10
    tag = Series.TYPE2_PLUS if re_tau > 0 else Series.TYPE2_MINUS
    out = [AngularLevel(MuValue.imag(x), tag) for x in sorted(type2_imag_roots(c, U, re_tau), reverse=True)]
    out += [AngularLevel(MuValue.real(m), tag) for m in type2_real_roots(c, U, re_tau, n_levels, mu_max)]
    return out


# ------------------------------------------------------------ full spectrum


def angular_spectrum(
    c: Coupling, U: ConnectionMatrix, mu_max: float
) -> list[AngularLevel]:
    """All angular levels with mu <= mu_max (imaginary ones included)."""
    if U.separating:
        return separating_spectrum(c, U.alpha, mu_max=mu_max)
    levels = []
    for letter in "AB":
        for sign in (1, -1):
            levels += solve_type1(c, U, letter, sign, mu_max=mu_max)
    for r in (0.5, -0.5):
        levels += solve_type2(c, U, r, mu_max=mu_max)
    return sorted(levels, key=AngularLevel.sort_key)


# ------------------------------------------------------------ permissibility


@dataclass(frozen=True)
class PermissibilityReport:
    permissible: bool
    negative_levels: tuple = field(default_factory=tuple)
    criteria_fired: tuple = field(default_factory=tuple)

    @property
    def type2_negative_count(self) -> int:
        return sum(1 for lv in self.negative_levels if lv.series.is_type2)

    @property
    def type1_negative_count(self) -> int:
        return len(self.negative_levels) - self.type2_negative_count

    @property
    def most_negative_lambda(self) -> float | None:
        if not self.negative_levels:
            return None
        return min(lv.lam for lv in self.negative_levels)


def permissibility(c: Coupling, U: ConnectionMatrix) -> PermissibilityReport:
    """Collect every negative angular eigenvalue of M^U.

    Type-1 checks compare F(0) with the right-hand side (four checks, or two
    for diagonal U); the type-2 check is the certified imaginary-axis scan.
    """
    neg: list[AngularLevel] = []
    fired: list[str] = []
    if U.separating:
        theta = U.alpha / 2.0
        for letter, tag in (("A", Series.SEP_A), ("B", Series.SEP_B)):
            x = type1_imag_root(c, letter, theta)
            if x is not None:
                neg.append(AngularLevel(MuValue.imag(x), tag))
                fired.append(f"separating:{tag.value}")
    else:
        for (letter, sign), tag in _TYPE1_SERIES.items():
            x = type1_imag_root(c, letter, eq.type1_angle(U, sign))
            if x is not None:
                neg.append(AngularLevel(MuValue.imag(x), tag))
                fired.append(f"type1:{tag.value}")
        cut = certify_imag_cutoff(c, U)
        if not cut.certified:
            fired.append("type2:uncertified-tail")
        for r, tag in ((0.5, Series.TYPE2_PLUS), (-0.5, Series.TYPE2_MINUS)):
            xs = type2_imag_roots(c, U, r, cut)
            if xs:
                neg += [AngularLevel(MuValue.imag(x), tag) for x in xs]
                fired.append("type2:+1/2" if r > 0 else "type2:-1/2")
    neg.sort(key=AngularLevel.sort_key)
    return PermissibilityReport(not neg, tuple(neg), tuple(fired))
