"""Radial Hamiltonians -d^2/dr^2 + c^2 r^2 + (lambda - 1/4)/r^2 on L^2(dr).

For lambda >= 1 the operator is essentially self-adjoint.  For lambda < 1 a
real parameter kappa (or infinity) selects the self-adjoint extension.  With
0 < lambda < 1 the spectrum is bounded below; with lambda < 0 it is not, and
roots are reported inside a finite energy window only.

Units: hbar = 2m = 1, c = sqrt(3/8) omega, epsilon = E / (4c).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from . import specfun as sf

ROOT_XTOL = 1e-13


class RadialError(ValueError):
    pass


class ZeroLambdaError(RadialError):
    """lambda = 0 needs a separate logarithmic treatment and is not covered."""


class NotAnEigenvalueError(ArithmeticError):
    pass


@dataclass(frozen=True)
class RadialBoundary:
    """Extension parameter kappa; ``math.inf`` stands for kappa = infinity."""

    kappa: float = 0.0

    def __post_init__(self):
        k = float(self.kappa)
        if math.isnan(k):
            raise RadialError("kappa must be a real number or infinity")
        object.__setattr__(self, "kappa", math.inf if math.isinf(k) else k)

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.kappa)

    @classmethod
    def infinite(cls) -> "RadialBoundary":
        return cls(math.inf)


@dataclass(frozen=True)
class RadialLevel:
    energy: float
    m: int
    epsilon: float


def omega_to_c(omega: float) -> float:
    return math.sqrt(3.0 / 8.0) * omega


# ------------------------------------------------------------ 0 < lambda < 1


def _split(lam: float) -> tuple[float, float]:
    s = math.sqrt(lam)
    return (1.0 - s) / 2.0, (1.0 + s) / 2.0


def f_lambda(lam: float, epsilon: float) -> float:
    """Gamma(-eps + (1 - s)/2) / Gamma(-eps + (1 + s)/2), s = sqrt(lambda)."""
    if not 0.0 < lam < 1.0:
        raise RadialError("f_lambda is defined for 0 < lambda < 1")
    lo, hi = _split(lam)
    num, den = -epsilon + lo, -epsilon + hi
    if sf._is_nonpositive_integer(num):
        raise sf.PoleError(f"F_lambda pole at epsilon = {epsilon}")
    if sf._is_nonpositive_integer(den):
        return 0.0
    return sf.gamma_ratio(num, den)


def f_lambda_poles(lam: float, count: int) -> list[float]:
    lo, _ = _split(lam)
    return [lo + m for m in range(count)]


def f_lambda_zeros(lam: float, count: int) -> list[float]:
    _, hi = _split(lam)
    return [hi + m for m in range(count)]


def radial_rhs(lam: float, bc: RadialBoundary) -> float:
    """-Gamma(-s)/Gamma(s) kappa; positive multiple of kappa for 0 < s < 1."""
    s = math.sqrt(lam)
    if bc.is_infinite:
        return math.inf
    return -sf.gamma_ratio(-s, s) * bc.kappa


def negative_root_predicate(lam: float, bc: RadialBoundary) -> bool:
    """True iff F_lambda(0) > rhs > 0, i.e. exactly one negative level."""
    r = radial_rhs(lam, bc)
    return math.isfinite(r) and f_lambda(lam, 0.0) > r > 0.0


def _smooth(lam: float, rhs: float, eps: float) -> float:
    # 1/Gamma(B) - rhs/Gamma(A): entire in eps and zero exactly at the roots
    lo, hi = _split(lam)
    return sf.rgamma(-eps + hi) - rhs * sf.rgamma(-eps + lo)


def _inverse_f(lam: float, eps: float) -> float:
    lo, hi = _split(lam)
    if sf._is_nonpositive_integer(-eps + lo):
        return 0.0
    return sf.gamma_ratio(-eps + hi, -eps + lo)


def solve_radial(
    lam: float,
    bc: RadialBoundary,
    c: float,
    n_levels: int = 5,
    epsilon_window: tuple[float, float] | None = None,
) -> list[RadialLevel]:
    """Lowest ``n_levels`` radial levels, ascending.

    lambda < 0 is forwarded to :func:`solve_radial_negative` with
    x = sqrt(-lambda) and the given window (default (-20, 20)).
    ``m`` is the closed-form index where one exists, otherwise the rank.
    """
    if c <= 0:
        raise RadialError("c must be positive")
    if lam == 0.0:
        raise ZeroLambdaError("lambda = 0 requires a separate treatment and is not supported")
    if lam < 0.0:
        return solve_radial_negative(math.sqrt(-lam), bc, c, epsilon_window or (-20.0, 20.0))
    s = math.sqrt(lam)
    if lam >= 1.0 or bc.kappa == 0.0:
        return [_level(c, 2 * m + 1 + s, m) for m in range(n_levels)]
    if bc.is_infinite:
        return [_level(c, 2 * m + 1 - s, m) for m in range(n_levels)]
    rhs = radial_rhs(lam, bc)
    poles = f_lambda_poles(lam, n_levels + 1)

    def g(e):
        return _smooth(lam, rhs, e)

    eps: list[float] = []
    if rhs > 0.0:
        # below the first pole 1/Gamma underflows for very negative eps, so the
        # lowest root is taken from 1/F_lambda, which decreases to 0 there
        hi = poles[0]
        lo = min(-1.0, hi - 1.0)
        while _inverse_f(lam, lo) <= 1.0 / rhs:
            lo *= 2.0
            if lo < -1e300:
                raise sf.ConvergenceError("negative radial root lies below -1e300")
        eps.append(_bisect(lambda e: _inverse_f(lam, e) - 1.0 / rhs, lo, hi))
    for a, b in zip(poles[:-1], poles[1:]):
        eps.append(_bisect(g, a, b))
    eps = sorted(eps)[:n_levels]
    return [RadialLevel(4.0 * c * e, i, e) for i, e in enumerate(eps)]


def _level(c: float, twice_eps: float, m: int) -> RadialLevel:
    return RadialLevel(2.0 * c * twice_eps, m, twice_eps / 2.0)


def _bisect(g, a, b) -> float:
    ga, gb = g(a), g(b)
    if ga == 0.0:
        return a
    if gb == 0.0:
        return b
    if ga * gb > 0:
        raise sf.ConvergenceError(f"radial bracket [{a}, {b}] has no sign change")
    return brentq(g, a, b, xtol=ROOT_XTOL, rtol=4 * np.finfo(float).eps, maxiter=500)


# ------------------------------------------------------------ lambda < 0


def omega_density(y: float, x: float) -> float:
    """omega(y, x) = d/dy arg Gamma(-y + 1/2 + i x/2) = -Im psi(...) < 0."""
    return -sf.digamma(complex(-y + 0.5, x / 2.0)).imag


def omega_phase(epsilon: float, x: float, start: float = 0.0, start_value: float | None = None) -> float:
    """Smooth branch of arg Gamma(-eps + 1/2 + i x/2), fixed to the principal
    value at eps = 0 and continued by quadrature of :func:`omega_density`."""
    if start_value is None:
        start, start_value = 0.0, sf.ln_gamma(complex(0.5, x / 2.0)).imag
    if epsilon == start:
        return start_value
    val, err = quad(omega_density, start, epsilon, args=(x,), limit=400, epsabs=1e-13, epsrel=1e-13)
    if not math.isfinite(val):
        raise sf.ConvergenceError("phase quadrature failed")
    return start_value + val


def arccot(y: float) -> float:
    """Branch with values in (0, pi); arccot(+-inf) = 0 / pi."""
    return math.pi / 2.0 - math.atan(y)


def theta_target(x: float, bc: RadialBoundary, c: float) -> float:
    k = bc.kappa
    base = math.pi if bc.is_infinite else arccot(-k)
    return base - sf.ln_gamma(complex(1.0, -x)).imag - 0.5 * x * math.log(c)


class _PhaseTable:
    """Omega on a node table, so each evaluation integrates over at most one
    short panel.  Nodes are unit-spaced above eps = -16, where omega has
    near-poles one unit apart; below, the integrand is smooth and the nodes
    grow geometrically."""

    FAR = 16.0
    RATIO = 1.05

    def __init__(self, x: float, lo: float, hi: float):
        self.x = x
        top = math.ceil(max(hi, 0.0)) + 1.0
        bottom = min(lo, 0.0)
        near = np.arange(max(math.floor(bottom), -self.FAR), top, 1.0)
        far = []
        node = -self.FAR
        while node > bottom:
            node *= self.RATIO
            far.append(node)
        self.nodes = np.concatenate([np.array(far[::-1]), near])
        vals = np.empty_like(self.nodes)
        i0 = int(np.searchsorted(self.nodes, 0.0))
        vals[i0] = omega_phase(0.0, x)
        for i in range(i0 + 1, len(self.nodes)):
            vals[i] = omega_phase(self.nodes[i], x, self.nodes[i - 1], vals[i - 1])
        for i in range(i0 - 1, -1, -1):
            vals[i] = omega_phase(self.nodes[i], x, self.nodes[i + 1], vals[i + 1])
        self.values = vals

    def __call__(self, eps: float) -> float:
        i = int(np.searchsorted(self.nodes, eps))
        if i == len(self.nodes) or (i > 0 and eps - self.nodes[i - 1] < self.nodes[i] - eps):
            i -= 1
        return omega_phase(eps, self.x, float(self.nodes[i]), float(self.values[i]))


def solve_radial_negative(
    x: float, bc: RadialBoundary, c: float, epsilon_window: tuple[float, float]
) -> list[RadialLevel]:
    """All roots of Omega(eps, x) = theta (mod pi) inside the window.

    Here sqrt(lambda) = i x, i.e. lambda = -x^2.  The spectrum is unbounded
    in both directions, so only windowed results exist.
    """
    if x <= 0:
        raise RadialError("x must be positive")
    lo, hi = map(float, epsilon_window)
    if not lo < hi:
        raise RadialError("empty window")
    target = theta_target(x, bc, c)
    phase = _PhaseTable(x, lo, hi)
    top, bottom = phase(lo), phase(hi)  # Omega decreases in eps
    n_lo = math.ceil((bottom - target) / math.pi)
    n_hi = math.floor((top - target) / math.pi)
    eps = []
    for n in range(n_lo, n_hi + 1):
        level = target + n * math.pi

        def h(e, level=level):
            return phase(e) - level

        eps.append(_bisect(h, lo, hi))
    eps.sort()
    return [RadialLevel(4.0 * c * e, i, e) for i, e in enumerate(eps)]


def negative_condition_residual(x: float, bc: RadialBoundary, c: float, epsilon: float) -> float:
    """|cot arg(c^{ix/2} Gamma(1 - ix) Gamma(-eps + (1 + ix)/2)) + kappa|,
    evaluated from principal log-gamma values (independent of the phase
    integral).  For kappa = inf the reciprocal tan(arg) is returned."""
    arg = 0.5 * x * math.log(c) + sf.ln_gamma(complex(1.0, -x)).imag
    arg += sf.ln_gamma(complex(-epsilon + 0.5, x / 2.0)).imag
    if bc.is_infinite:
        return abs(math.tan(arg))
    return abs(1.0 / math.tan(arg) + bc.kappa)


# ------------------------------------------------------------ eigenfunctions


@dataclass
class RadialEigenfunction:
    lam: float
    energy: float
    c: float
    evaluate: Callable[[float], complex]

    def __call__(self, r: float) -> complex:
        return self.evaluate(r)

    def ode_residual(self, r_grid, h: float = 1e-3) -> float:
        """Max relative residual of -rho'' + (c^2 r^2 + (lam - 1/4)/r^2 - E) rho
        with a five-point second difference."""
        worst, scale = 0.0, 0.0
        for r in r_grid:
            f = [self(r + k * h) for k in (-2, -1, 0, 1, 2)]
            d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h)
            pot = self.c ** 2 * r * r + (self.lam - 0.25) / (r * r)
            res = -d2 + (pot - self.energy) * f[2]
            worst = max(worst, abs(res))
            scale = max(scale, abs(d2), abs(pot * f[2]), abs(self.energy * f[2]))
        return worst / scale if scale else math.inf


def rho_basis(k: int, lam: complex, energy: float, c: float) -> Callable[[float], complex]:
    """The two Kummer solutions rho_{E,1}, rho_{E,2} (principal powers)."""
    s = cmath.sqrt(lam) if isinstance(lam, complex) or lam < 0 else complex(math.sqrt(lam))
    xi = energy / (4.0 * c) - (s + 1.0) / 2.0

    def rho(r: float) -> complex:
        sig = c * r * r
        if k == 1:
            return cmath.exp((0.5 + s) / 2.0 * math.log(sig) - sig / 2.0) * sf.kummer_m(-xi, 1.0 + s, sig)
        return cmath.exp((0.5 - s) / 2.0 * math.log(sig) - sig / 2.0) * sf.kummer_m(-xi - s, 1.0 - s, sig)

    return rho


def rho_basis_derivative(k: int, lam: complex, energy: float, c: float) -> Callable[[float], complex]:
    """d/dr of :func:`rho_basis` using M'(a, b, z) = (a/b) M(a+1, b+1, z)."""
    s = cmath.sqrt(lam) if isinstance(lam, complex) or lam < 0 else complex(math.sqrt(lam))
    xi = energy / (4.0 * c) - (s + 1.0) / 2.0
    if k == 1:
        p, a, b = (0.5 + s) / 2.0, -xi, 1.0 + s
    else:
        p, a, b = (0.5 - s) / 2.0, -xi - s, 1.0 - s

    def drho(r: float) -> complex:
        sig = c * r * r
        base = cmath.exp(p * math.log(sig) - sig / 2.0)
        m0 = sf.kummer_m(a, b, sig)
        m1 = (a / b) * sf.kummer_m(a + 1.0, b + 1.0, sig)
        dsig = 2.0 * c * r
        return dsig * base * ((p / sig - 0.5) * m0 + m1)

    return drho


def radial_eigenfunction(
    lam: float, energy: float, c: float, bc: RadialBoundary = RadialBoundary(), tol: float = 1e-6
) -> RadialEigenfunction:
    """Eigenfunction for a solved (lambda, E).  Raises NotAnEigenvalueError
    when the ODE residual on r in [0.05, 10] exceeds ``tol`` or the closed
    form does not apply."""
    if lam == 0.0:
        raise ZeroLambdaError("lambda = 0 is not supported")
    eps = energy / (4.0 * c)
    if lam > 0:
        s = math.sqrt(lam)
        if lam >= 1.0 or bc.kappa == 0.0 or bc.is_infinite:
            sign = -1.0 if (lam < 1.0 and bc.is_infinite) else 1.0
            m_real = eps - (1.0 + sign * s) / 2.0
            m = int(round(m_real))
            if abs(m_real - m) > 1e-9 or m < 0:
                raise NotAnEigenvalueError(f"E = {energy} is not on the closed-form ladder")
            alpha = sign * s

            def ev(r, m=m, alpha=alpha):
                return complex(r ** (0.5 + alpha) * math.exp(-0.5 * c * r * r) * sf.laguerre(m, alpha, c * r * r))

            fn = RadialEigenfunction(lam, energy, c, ev)
        else:
            if abs(_smooth(lam, radial_rhs(lam, bc), eps)) > tol * (1.0 + abs(radial_rhs(lam, bc))):
                raise NotAnEigenvalueError(f"E = {energy} violates the boundary condition")
            xi = eps - (s + 1.0) / 2.0

            def ev(r, xi=xi, s=s):
                sig = c * r * r
                return (sig ** ((0.5 + s) / 2.0)) * math.exp(-sig / 2.0) * sf.tricomi_u(-xi, 1.0 + s, sig)

            fn = RadialEigenfunction(lam, energy, c, ev)
    else:
        x = math.sqrt(-lam)
        if negative_condition_residual(x, bc, c, eps) > tol * (1.0 + abs(bc.kappa) if not bc.is_infinite else tol):
            raise NotAnEigenvalueError(f"E = {energy} violates the boundary condition")
        s = complex(0.0, x)
        xi = eps - (s + 1.0) / 2.0

        def ev(r, xi=xi, s=s):
            sig = c * r * r
            return cmath.exp((0.5 + s) / 2.0 * math.log(sig) - sig / 2.0) * sf.tricomi_u(-xi, 1.0 + s, sig)

        fn = RadialEigenfunction(lam, energy, c, ev)
    res = fn.ode_residual(np.linspace(0.05, 10.0, 60))
    if res > tol:
        raise NotAnEigenvalueError(f"ODE residual {res:.2e} exceeds {tol:.0e}")
    return fn
