"""Coefficient functions and the angular eigenvalue equations.

All gamma quotients are evaluated through reciprocal gamma (entire) or in
log form, so zeros of the coefficients never raise and large arguments do
not overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .. import specfun as sf
from .types import (
    DIVERGENT_TOL,
    ConnectionMatrix,
    Coupling,
    MuValue,
    SeparatingInputError,
    snap,
)

SQRT_PI = math.sqrt(math.pi)


def rhs_scale(c: Coupling) -> float:
    """K = Gamma(nu + 1/2) / Gamma(3/2 - nu)."""
    return sf.gamma_ratio(c.nu + 0.5, 1.5 - c.nu)


def _rg_pair(y: float, half: MuValue) -> float:
    """1 / (Gamma(y + m) Gamma(y - m)) for m = half (real or i x)."""
    if half.imaginary:
        return math.exp(-2.0 * sf.log_abs_gamma(y, half.value))
    m = half.value
    p, q = y + m, y - m
    if sf._is_nonpositive_integer(p) or sf._is_nonpositive_integer(q):
        return 0.0
    lp, sp = sf.ln_gamma_real(p)
    lq, sq = sf.ln_gamma_real(q)
    e = -(lp + lq)
    if e > 709.0:
        return sp * sq * math.inf
    return sp * sq * math.exp(e)


def _scaled(mu: MuValue, k: float) -> MuValue:
    return MuValue(mu.value * k, mu.imaginary) if mu.value else MuValue(0.0)


def ab_coeffs(c: Coupling, mu: MuValue) -> tuple[float, float, float, float]:
    """Values (a1, a2, b1, b2) of the basis functions and their derivatives at
    the sector midpoint pi/6 (approached from below)."""
    nu = c.nu
    if c.is_oscillator:
        return _ab_oscillator(mu)
    half = _scaled(mu, 0.5)
    p1 = math.exp(sf.ln_gamma_real(nu + 0.5)[0]) * SQRT_PI
    p2 = math.exp(sf.ln_gamma_real(1.5 - nu)[0]) * SQRT_PI
    a1 = p1 * _rg_pair((nu + 1.0) / 2.0, half)
    a2 = p2 * _rg_pair((2.0 - nu) / 2.0, half)
    b1 = 6.0 * p1 * _rg_pair(nu / 2.0, half)
    b2 = 6.0 * p2 * _rg_pair((1.0 - nu) / 2.0, half)
    return a1, a2, b1, b2


def _ab_oscillator(mu: MuValue) -> tuple[float, float, float, float]:
    # nu = 1 closed forms
    m = mu.value
    h = math.pi * m / 2.0
    if mu.imaginary:
        sh, ch = math.sinh(h), math.cosh(h)
        return sh / m, ch, 3.0 * ch, 3.0 * m * sh
    a1 = math.pi / 2.0 if m == 0 else math.sin(h) / m
    return a1, math.cos(h), 3.0 * math.cos(h), -3.0 * m * math.sin(h)


_TYPE1_ARGS = {
    # series -> (numerator gamma offsets, denominator gamma offsets) in units of nu
    "A": (lambda nu: (1.0 + nu) / 2.0, lambda nu: (2.0 - nu) / 2.0),
    "B": (lambda nu: nu / 2.0, lambda nu: (1.0 - nu) / 2.0),
}


def _series_key(series) -> str:
    s = getattr(series, "letter", None) or str(series)
    s = s.upper()[0]
    if s not in "AB":
        raise ValueError(f"unknown type-1 series {series!r}")
    return s


def f_type1(series, c: Coupling, mu: MuValue) -> float:
    """F_A or F_B at mu: a ratio of four gamma functions.

    Real mu raises :class:`specfun.PoleError` on the pole ladder; imaginary mu
    uses the modulus-squared form.
    """
    key = _series_key(series)
    num_f, den_f = _TYPE1_ARGS[key]
    p, q = num_f(c.nu), den_f(c.nu)
    half = mu.value / 2.0
    if mu.imaginary:
        return math.exp(log_f_type1_imag(key, c, mu.value))
    num = (p + half, p - half)
    den = (q + half, q - half)
    for v in num:
        if sf._is_nonpositive_integer(v):
            raise sf.PoleError(f"F_{key} pole at mu = {mu.value}")
    if any(sf._is_nonpositive_integer(v) for v in den):
        return 0.0
    lsum, sgn = 0.0, 1
    for v in num:
        l, s = sf.ln_gamma_real(v)
        lsum += l
        sgn *= s
    for v in den:
        l, s = sf.ln_gamma_real(v)
        lsum -= l
        sgn *= s
    if lsum > 709.0:
        return sgn * math.inf
    return sgn * math.exp(lsum)


def log_f_type1_imag(series, c: Coupling, x: float) -> float:
    """log F(i x) = 2 log|Gamma(p + i x/2)| - 2 log|Gamma(q + i x/2)|."""
    key = _series_key(series)
    num_f, den_f = _TYPE1_ARGS[key]
    p, q = num_f(c.nu), den_f(c.nu)
    w = complex(0.0, x / 2.0)
    return 2.0 * sf.ln_gamma_diff(p, q, w).real


def type1_poles(series, c: Coupling, count: int) -> list[float]:
    """First ``count`` poles of F on mu >= 0."""
    key = _series_key(series)
    start = c.nu + 1.0 if key == "A" else c.nu
    return [start + 2.0 * m for m in range(count)]


def type1_zeros(series, c: Coupling, count: int) -> list[float]:
    """First ``count`` zeros of F on mu >= 0."""
    key = _series_key(series)
    nu = c.nu
    if key == "A":
        return [2.0 - nu + 2.0 * m for m in range(count)]
    out = [abs(1.0 - nu)]
    m = 1
    while len(out) < count:
        out.append(1.0 - nu + 2.0 * m)
        m += 1
    return out[:count]


@dataclass(frozen=True)
class Rhs:
    """Right-hand side K tan(theta) of a type-1 equation."""

    value: float
    theta: float
    divergent: bool
    sin_theta: float
    cos_theta: float


def type1_angle(U: ConnectionMatrix, sign: int) -> float:
    if U.separating:
        return U.alpha / 2.0
    return (U.alpha + sign * U.beta) / 2.0


def rhs_from_theta(c: Coupling, theta: float) -> Rhs:
    s, co = snap(math.sin(theta)), snap(math.cos(theta))
    if abs(co) < DIVERGENT_TOL:
        return Rhs(math.copysign(math.inf, s * (co if co else 1.0)), theta, True, s, co)
    return Rhs(rhs_scale(c) * s / co, theta, False, s, co)


def rhs_type1(c: Coupling, U: ConnectionMatrix, sign: int) -> Rhs:
    """K tan((alpha +- beta)/2); flags the divergent-tangent branch."""
    return rhs_from_theta(c, type1_angle(U, sign))


def f_type1_at_zero(series, c: Coupling) -> float:
    return f_type1(series, c, MuValue(0.0))


def smooth_type1(series, c: Coupling, mu: float, sin_t: float, cos_t: float) -> float:
    """a1 sin(theta) - a2 cos(theta) (or the b analogue); vanishes exactly at
    the real roots and is finite at the poles of F."""
    a1, a2, b1, b2 = ab_coeffs(c, MuValue(mu))
    if _series_key(series) == "A":
        return a1 * sin_t - a2 * cos_t
    return b1 * sin_t - b2 * cos_t


# ---------------------------------------------------------------- type 2


def _require_nonseparating(U: ConnectionMatrix) -> None:
    if U.separating:
        raise SeparatingInputError("type-2 equation needs a non-diagonal U")


def f2_weights(c: Coupling, U: ConnectionMatrix) -> tuple[float, float, float]:
    """Weights (w0, w1, w2) with F2 = w0 cos(pi mu) + w1 a1 b1 + w2 a2 b2."""
    _require_nonseparating(U)
    nu = c.nu
    sb = U.sin_b
    cpn = snap(math.cos(math.pi * nu))
    w0 = U.sin_a / sb / cpn
    w1 = (U.cos_b - U.cos_a) / ((6.0 * nu - 3.0) * sb)
    w2 = (U.cos_b + U.cos_a) / ((6.0 * nu - 3.0) * sb)
    return w0, w1, w2


def ab_products(c: Coupling, mu: MuValue) -> tuple[float, float]:
    """(a1 b1, a2 b2) via the duplication-reduced forms."""
    nu = c.nu
    g1 = sf.ln_gamma_real(nu + 0.5)[0]
    g2 = sf.ln_gamma_real(1.5 - nu)[0]
    p1 = 6.0 * math.exp(2.0 * g1 + 2.0 * (nu - 1.0) * math.log(2.0))
    p2 = 6.0 * math.exp(2.0 * g2 - 2.0 * nu * math.log(2.0))
    return p1 * _rg_pair(nu, mu), p2 * _rg_pair(1.0 - nu, mu)


def f2(c: Coupling, U: ConnectionMatrix, mu: MuValue) -> float:
    """The type-2 spectral function F2(mu)."""
    w0, w1, w2 = f2_weights(c, U)
    p1, p2 = ab_products(c, mu)
    cm = math.cosh(math.pi * mu.value) if mu.imaginary else math.cos(math.pi * mu.value)
    return w0 * cm + w1 * p1 + w2 * p2


def f2_scaled_imag(c: Coupling, U: ConnectionMatrix, x: float, shift: float = 0.0) -> float:
    """e^{-pi x} (F2(i x) - shift), finite for every x >= 0."""
    w0, w1, w2 = f2_weights(c, U)
    nu = c.nu
    g1 = sf.ln_gamma_real(nu + 0.5)[0]
    g2 = sf.ln_gamma_real(1.5 - nu)[0]
    ln2 = math.log(2.0)
    e = math.exp(-math.pi * x)
    out = w0 * 0.5 * (1.0 + math.exp(-2.0 * math.pi * x)) - shift * e
    if w1:
        out += w1 * 6.0 * math.exp(
            2.0 * g1 + 2.0 * (nu - 1.0) * ln2 - math.pi * x - 2.0 * sf.log_abs_gamma(nu, x)
        )
    if w2:
        out += w2 * 6.0 * math.exp(
            2.0 * g2 - 2.0 * nu * ln2 - math.pi * x - 2.0 * sf.log_abs_gamma(1.0 - nu, x)
        )
    return out


@dataclass(frozen=True)
class F2Decomposition:
    kappa0: float
    kappa_minus: float
    kappa_plus: float

    def k_functions(self, nu: float, x: float) -> tuple[float, float, float]:
        return k_functions(nu, x)

    def exponents(self, nu: float) -> tuple[float, float, float]:
        return 0.0, 1.0 - 2.0 * nu, 2.0 * nu - 1.0

    def scaled_value(self, nu: float, x: float) -> float:
        k0, km, kp = k_functions(nu, x)
        return (
            self.kappa0 * k0
            + self.kappa_minus * x ** (1.0 - 2.0 * nu) * km
            + self.kappa_plus * x ** (2.0 * nu - 1.0) * kp
        )


def k_functions(nu: float, x: float) -> tuple[float, float, float]:
    """(K0, K-, K+) on the imaginary axis; each tends to 1."""
    ln2pi = math.log(2.0 * math.pi)
    lx = math.log(x)
    k0 = 1.0 + math.exp(-2.0 * math.pi * x)
    km = math.exp(ln2pi + (2.0 * nu - 1.0) * lx - math.pi * x - 2.0 * sf.log_abs_gamma(nu, x))
    kp = math.exp(ln2pi + (1.0 - 2.0 * nu) * lx - math.pi * x - 2.0 * sf.log_abs_gamma(1.0 - nu, x))
    return k0, km, kp


def f2_decomposition(c: Coupling, U: ConnectionMatrix) -> F2Decomposition:
    """Coefficients kappa0, kappa-, kappa+ of the imaginary-axis form."""
    _require_nonseparating(U)
    nu = c.nu
    sb = U.sin_b
    g1 = math.exp(2.0 * sf.ln_gamma_real(nu + 0.5)[0])
    g2 = math.exp(2.0 * sf.ln_gamma_real(1.5 - nu)[0])
    k0 = U.sin_a / (2.0 * snap(math.cos(math.pi * nu)) * sb)
    km = g1 * 2.0 ** (2.0 * (nu - 1.0)) / (math.pi * (2.0 * nu - 1.0)) * (U.cos_b - U.cos_a) / sb
    kp = g2 * 2.0 ** (-2.0 * nu) / (math.pi * (2.0 * nu - 1.0)) * (U.cos_b + U.cos_a) / sb
    return F2Decomposition(k0, km, kp)


def delta_offset(nu: float) -> float:
    """Delta(nu) = arccos(cos(pi nu)/2)/pi, the free-case type-2 offset."""
    return math.acos(0.5 * math.cos(math.pi * nu)) / math.pi
