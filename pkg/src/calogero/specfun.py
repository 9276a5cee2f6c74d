"""Special-function kernel: log-gamma, digamma, Gauss and confluent
hypergeometric functions, classical orthogonal polynomials.

Everything here is scalar and pure Python (``math``/``cmath``); the one
exception is the Laplace-integral route of :func:`tricomi_u`, which uses
adaptive quadrature from scipy.  Poles raise
:class:`PoleError`; series that fail to converge raise
:class:`ConvergenceError`.  The only mutable module state is the Lanczos
coefficient tuple, which :func:`perturbed_gamma_constants` swaps temporarily
for fault-injection runs of the validation suite.
"""

from __future__ import annotations

import cmath
import contextlib
import math
import warnings
from typing import Iterator

__all__ = [
    "SpecfunError",
    "PoleError",
    "ConvergenceError",
    "ln_gamma",
    "ln_gamma_real",
    "ln_gamma_diff",
    "rgamma",
    "rgamma_complex",
    "gamma_ratio",
    "abs_gamma_sq",
    "log_abs_gamma",
    "digamma",
    "gauss_2f1",
    "hyp2f1_complex",
    "kummer_m",
    "tricomi_u",
    "tricomi_combination",
    "laguerre",
    "gegenbauer",
    "perturbed_gamma_constants",
]

EULER_GAMMA = 0.57721566490153286061
LN_SQRT_2PI = 0.91893853320467274178
LN_PI = math.log(math.pi)


class SpecfunError(ArithmeticError):
    """Base class for special-function failures."""


class PoleError(SpecfunError):
    """Argument sits on a pole of the gamma function (or a derived pole)."""


class ConvergenceError(SpecfunError):
    """A series or iteration did not reach its tolerance."""


# Lanczos approximation, g = 671/128, 14 terms (absolute error ~1e-15 in ln).
_LANCZOS_G = 5.2421875
_LANCZOS_C0 = 0.999999999999997092
_LANCZOS_COEFFS: tuple[float, ...] = (
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
)
_SQRT_2PI = 2.5066282746310005

# Bernoulli numbers B_2 .. B_16 for Stirling / digamma asymptotics.
_BERNOULLI_EVEN = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
)

_STIRLING_RADIUS = 40.0


@contextlib.contextmanager
def perturbed_gamma_constants(rel: float = 1e-6) -> Iterator[None]:
    """Temporarily scale the Lanczos coefficients by ``1 + rel``.

    Test hook only: used to check that the validation suite notices a
    corrupted gamma kernel.
    """
    global _LANCZOS_COEFFS, _STIRLING_RADIUS
    saved = (_LANCZOS_COEFFS, _STIRLING_RADIUS)
    _LANCZOS_COEFFS = tuple(c * (1.0 + rel) for c in saved[0])
    _STIRLING_RADIUS = math.inf  # force every evaluation through Lanczos
    try:
        yield
    finally:
        _LANCZOS_COEFFS, _STIRLING_RADIUS = saved


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def _check_pole(z: complex) -> None:
    if z.imag == 0.0 and _is_nonpositive_integer(z.real):
        raise PoleError(f"gamma pole at z = {z.real:g}")


def _lanczos(z: complex) -> complex:
    # Valid for Re z >= 1/2.
    ser = _LANCZOS_C0
    y = z
    for c in _LANCZOS_COEFFS:
        y = y + 1.0
        ser = ser + c / y
    t = z + _LANCZOS_G
    return (z + 0.5) * cmath.log(t) - t + cmath.log(_SQRT_2PI * ser / z)


def _stirling(z: complex) -> complex:
    # Asymptotic series, |z| large and |arg z| < pi.
    lz = cmath.log(z)
    out = (z - 0.5) * lz - z + LN_SQRT_2PI
    zinv = 1.0 / z
    z2 = zinv * zinv
    zp = zinv
    for k, b in enumerate(_BERNOULLI_EVEN, start=1):
        out += b / ((2 * k) * (2 * k - 1)) * zp
        zp *= z2
    return out


def _log_sin_pi(z: complex) -> complex:
    """log(sin(pi z)) for Im z >= 0, stable for large Im z."""
    w = cmath.exp(2j * math.pi * z)
    return -1j * math.pi * z + cmath.log(0.5j) + cmath.log(1.0 - w)


def _ln_gamma_upper(z: complex) -> complex:
    # Some branch of log Gamma for Im z >= 0; caller wraps the imaginary part.
    if abs(z) > _STIRLING_RADIUS and z.real > -0.5 * abs(z):
        return _stirling(z)
    if z.real >= 0.5:
        return _lanczos(z)
    return LN_PI - _log_sin_pi(z) - _ln_gamma_upper(1.0 - z)


def _wrap_phase(t: float) -> float:
    t = math.fmod(t, 2.0 * math.pi)
    if t > math.pi:
        t -= 2.0 * math.pi
    elif t <= -math.pi:
        t += 2.0 * math.pi
    return t


def ln_gamma(z: complex) -> complex:
    """Principal-branch log Gamma(z): real part log|Gamma|, imaginary part
    arg Gamma(z) wrapped into (-pi, pi]."""
    z = complex(z)
    _check_pole(z)
    if z.imag >= 0.0:
        val = _ln_gamma_upper(z)
    else:
        val = _ln_gamma_upper(z.conjugate()).conjugate()
    return complex(val.real, _wrap_phase(val.imag))


def ln_gamma_real(x: float) -> tuple[float, int]:
    """(log|Gamma(x)|, sign Gamma(x)) for real x."""
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma pole at x = {x:g}")
    if x >= 0.5:
        return _ln_gamma_upper(complex(x)).real, 1
    # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    s = math.sin(math.pi * x)
    lg1, _ = ln_gamma_real(1.0 - x)
    return LN_PI - math.log(abs(s)) - lg1, (1 if s > 0 else -1)


def log_abs_gamma(x: float, y: float = 0.0) -> float:
    """log|Gamma(x + iy)|."""
    if y == 0.0:
        return ln_gamma_real(x)[0]
    return ln_gamma(complex(x, y)).real


def rgamma(x: float) -> float:
    """1/Gamma(x) for real x; entire, zero at non-positive integers."""
    x = float(x)
    if _is_nonpositive_integer(x):
        return 0.0
    lg, s = ln_gamma_real(x)
    if -lg > 709.0:
        return s * math.inf
    return s * math.exp(-lg)


def rgamma_complex(z: complex) -> complex:
    """1/Gamma(z) for complex z; zero at the poles of Gamma."""
    z = complex(z)
    if z.imag == 0.0:
        return complex(rgamma(z.real))
    return cmath.exp(-ln_gamma(z))


def gamma_ratio(p: float, q: float) -> float:
    """Gamma(p)/Gamma(q) for real p, q with sign tracking.

    Raises PoleError if p or q is a pole; overflow returns signed infinity.
    """
    lo = min(p, q)
    if lo > 1e3 and abs(p - q) < 10.0:
        # large positive arguments: the difference of two huge logs cancels
        w = math.floor(lo)
        return math.exp(ln_gamma_diff(p - w, q - w, w).real)
    lp, sp = ln_gamma_real(p)
    lq, sq = ln_gamma_real(q)
    d = lp - lq
    if d > 709.0:
        return sp * sq * math.inf
    return sp * sq * math.exp(d)


def abs_gamma_sq(x: float, y: float) -> float:
    """|Gamma(x + iy)|^2."""
    return math.exp(2.0 * log_abs_gamma(x, y))


def _bernoulli_poly(n: int, a: complex) -> complex:
    # Bernoulli polynomials B_n(a), n = 2..7
    if n == 2:
        return a * a - a + 1.0 / 6.0
    if n == 3:
        return a ** 3 - 1.5 * a * a + 0.5 * a
    if n == 4:
        return a ** 4 - 2 * a ** 3 + a * a - 1.0 / 30.0
    if n == 5:
        return a ** 5 - 2.5 * a ** 4 + (5.0 / 3.0) * a ** 3 - a / 6.0
    if n == 6:
        return a ** 6 - 3 * a ** 5 + 2.5 * a ** 4 - 0.5 * a * a + 1.0 / 42.0
    if n == 7:
        return a ** 7 - 3.5 * a ** 6 + 3.5 * a ** 5 - (7.0 / 6.0) * a ** 3 + a / 6.0
    raise ValueError(n)


def ln_gamma_diff(a: complex, b: complex, w: complex) -> complex:
    """log Gamma(w + a) - log Gamma(w + b), cancellation-free for large |w|.

    For |w| below ~1e3 the difference of two :func:`ln_gamma` calls is used;
    beyond that a Bernoulli-polynomial asymptotic expansion in 1/w.  The
    imaginary part is not wrapped.
    """
    w = complex(w)
    if abs(w) < 1e3:
        return _ln_gamma_upper_any(w + a) - _ln_gamma_upper_any(w + b)
    out = (a - b) * cmath.log(w)
    winv = 1.0 / w
    wp = winv
    for n in range(1, 7):
        coef = (-1) ** (n + 1) / (n * (n + 1))
        out += coef * (_bernoulli_poly(n + 1, a) - _bernoulli_poly(n + 1, b)) * wp
        wp *= winv
    return out


def _ln_gamma_upper_any(z: complex) -> complex:
    _check_pole(z)
    if z.imag >= 0.0:
        return _ln_gamma_upper(z)
    return _ln_gamma_upper(z.conjugate()).conjugate()


def _cot_pi(z: complex) -> complex:
    # cot(pi z), stable for large |Im z|
    if abs(z.imag) < 10.0:
        return cmath.cos(math.pi * z) / cmath.sin(math.pi * z)
    sgn = 1.0 if z.imag > 0 else -1.0
    e = cmath.exp(2j * math.pi * z) if sgn > 0 else cmath.exp(-2j * math.pi * z)
    # cot = i (e^{2i pi z} + 1)/(e^{2i pi z} - 1)
    return -1j * sgn * (1.0 + e) / (1.0 - e)


def digamma(z: complex) -> complex:
    """psi(z) = Gamma'(z)/Gamma(z)."""
    z = complex(z)
    _check_pole(z)
    if z.real < 0.5:
        return digamma(1.0 - z) - math.pi * _cot_pi(z)
    acc = 0.0j
    while abs(z) < 15.0:
        acc -= 1.0 / z
        z += 1.0
    zinv = 1.0 / z
    z2 = zinv * zinv
    out = cmath.log(z) - 0.5 * zinv
    zp = z2
    for k, b in enumerate(_BERNOULLI_EVEN, start=1):
        out -= b / (2 * k) * zp
        zp *= z2
    return out + acc


def _series_2f1(a: complex, b: complex, c: complex, z: float, max_terms: int = 5000) -> complex:
    term = 1.0 + 0j
    s = term
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        s += term
        if term == 0 or abs(term) < 1e-17 * abs(s):
            return s
    raise ConvergenceError(f"2F1 series did not converge (z = {z})")


def hyp2f1_complex(a: complex, b: complex, c: float, z: float) -> complex:
    """2F1(a, b; c; z) for real 0 <= z <= 1 with complex a, b allowed.

    Series for z <= 1/2; otherwise the linear transformation to 1 - z, which
    needs c - a - b non-integer.  z = 1 is accepted when Re(c - a - b) > 0.
    """
    if not (0.0 <= z <= 1.0):
        raise ValueError("2F1 argument must lie in [0, 1]")
    if _is_nonpositive_integer(c):
        raise PoleError(f"2F1 parameter c = {c} is a non-positive integer")
    if z <= 0.5:
        return _series_2f1(a, b, c, z)
    s = c - a - b
    s_c = complex(s)
    if s_c.imag == 0.0 and s_c.real == round(s_c.real):
        raise SpecfunError("integer c - a - b is not supported on z > 1/2")
    w = 1.0 - z
    rc = rgamma_complex(c)
    if rc == 0:
        raise PoleError("gamma(c) pole")
    gc = 1.0 / rc
    t1 = gc * _gamma_c(s) * rgamma_complex(c - a) * rgamma_complex(c - b)
    if t1 != 0:
        t1 *= _series_2f1(a, b, 1.0 - s, w)
    if w == 0.0:
        if s_c.real <= 0:
            raise PoleError("2F1 diverges at z = 1")
        return t1
    t2 = gc * _gamma_c(-s) * rgamma_complex(a) * rgamma_complex(b)
    if t2 != 0:
        t2 *= cmath.exp(s * math.log(w)) * _series_2f1(c - a, c - b, 1.0 + s, w)
    return t1 + t2


def _gamma_c(z: complex) -> complex:
    z = complex(z)
    _check_pole(z)
    return cmath.exp(_ln_gamma_upper_any(z))


def gauss_2f1(a: float, b: float, c: float, z: float) -> float:
    """Real 2F1(a, b; c; z) on 0 <= z < 1 (z = 1 allowed if c - a - b > 0)."""
    val = hyp2f1_complex(a, b, c, z)
    return val.real


def kummer_m(a: complex, b: complex, z: float, max_terms: int = 20000) -> complex:
    """Kummer's function M(a, b, z) by its power series, z >= 0."""
    b = complex(b)
    if b.imag == 0.0 and _is_nonpositive_integer(b.real):
        raise PoleError(f"Kummer parameter b = {b.real} is a non-positive integer")
    a = complex(a)
    term = 1.0 + 0j
    s = term
    n = 0
    while n < max_terms:
        term *= (a + n) / ((b + n) * (n + 1)) * z
        s += term
        n += 1
        if term == 0:
            return s
        # stop once terms are negligible and monotonically shrinking
        if n > abs(a) + 1 and abs(term) < 1e-17 * max(abs(s), 1e-300):
            ratio = abs((a + n) / ((b + n) * (n + 1)) * z)
            if ratio < 0.5:
                return s
    raise ConvergenceError(f"Kummer series exceeded {max_terms} terms")


def tricomi_combination(a: complex, b: complex) -> tuple[complex, complex]:
    """Coefficients (p, q) with U(a,b,z) = p M(a,b,z) + q z^(1-b) M(a-b+1, 2-b, z)."""
    p = _gamma_c(1.0 - b) * rgamma_complex(a - b + 1.0)
    q = _gamma_c(b - 1.0) * rgamma_complex(a)
    return p, q


def _tricomi_asymptotic(a: complex, b: complex, z: float) -> tuple[complex, float]:
    # U ~ z^-a sum (a)_n (a-b+1)_n / n! (-z)^-n, truncated at the smallest term
    term = 1.0 + 0j
    s = term
    best = abs(term)
    for n in range(200):
        nxt = term * (a + n) * (a - b + 1.0 + n) / ((n + 1) * (-z))
        if abs(nxt) > best:
            break
        term = nxt
        s += term
        best = abs(term)
        if best < 1e-17 * abs(s):
            break
    return cmath.exp(-a * math.log(z)) * s, best / max(abs(s), 1e-300)


def tricomi_u(a: complex, b: complex, z: float) -> complex:
    """Tricomi's confluent function U(a, b, z), z > 0, non-integer b."""
    if z <= 0:
        raise ValueError("tricomi_u needs z > 0")
    a = complex(a)
    b = complex(b)
    if b.imag == 0.0 and b.real == round(b.real):
        raise SpecfunError("integer b is not supported")
    if z > 20.0:
        val, err = _tricomi_asymptotic(a, b, z)
        if err < 1e-13:
            return val
    p, q = tricomi_combination(a, b)
    t1 = p * kummer_m(a, b, z) if p != 0 else 0j
    t2 = q * cmath.exp((1.0 - b) * math.log(z)) * kummer_m(a - b + 1.0, 2.0 - b, z) if q != 0 else 0j
    out = t1 + t2
    # the two Kummer terms cancel when U is small compared with M
    if max(abs(t1), abs(t2)) > _CANCELLATION_LIMIT * abs(out):
        return _tricomi_by_recurrence(a, b, z)
    return out


def _tricomi_by_recurrence(a: complex, b: complex, z: float) -> complex:
    """Laplace integral at a + n, a + n + 1 (Re >= 2), then the three-term
    recurrence in a run downwards, the stable direction for U."""
    n = max(0, math.ceil(2.0 - a.real))
    hi1 = _tricomi_integral(a + n + 1, b, z)
    hi0 = _tricomi_integral(a + n, b, z)
    for k in range(n, 0, -1):
        ak = a + k
        # U(a-1) = (2a - b + z) U(a) - a (a - b + 1) U(a+1)
        hi0, hi1 = (2.0 * ak - b + z) * hi0 - ak * (ak - b + 1.0) * hi1, hi0
    return hi0


_CANCELLATION_LIMIT = 1e3


def _tricomi_integral(a: complex, b: complex, z: float) -> complex:
    """U(a,b,z) = Gamma(a)^-1 int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt."""
    from scipy.integrate import quad

    lga = ln_gamma(a)
    ar = a.real
    br = b.real
    # peak of the real log-integrand splits the range
    disc_b = (ar - 1.0) - z - (ar - br + 1.0)
    roots = [(disc_b + math.sqrt(disc_b * disc_b + 4.0 * z * (ar - 1.0))) / (2.0 * z)] if ar > 1 else []
    peak = roots[0] if roots and roots[0] > 0 else 1.0 / z

    def log_f(t):
        return -z * t + (a - 1.0) * math.log(t) + (b - a - 1.0) * math.log1p(t) - lga

    ref = log_f(peak).real

    def re_part(t):
        return 0.0 if t == 0.0 else (cmath.exp(log_f(t) - ref)).real

    def im_part(t):
        return 0.0 if t == 0.0 else (cmath.exp(log_f(t) - ref)).imag

    total = 0j
    err = 0.0
    with warnings.catch_warnings():
        # quad warns when 2e-14 is out of reach; the error estimate is checked below
        warnings.simplefilter("ignore")
        for lo, hi in ((0.0, peak), (peak, 4.0 * peak + 50.0 / z), (4.0 * peak + 50.0 / z, math.inf)):
            kw = dict(limit=400, epsabs=1e-15 * max(1.0, peak), epsrel=2e-14)
            r, er = quad(re_part, lo, hi, **kw)
            i, ei = quad(im_part, lo, hi, **kw) if a.imag or b.imag else (0.0, 0.0)
            total += complex(r, i)
            err += er + ei
    if err > 1e-11 * abs(total):
        raise ConvergenceError(f"Laplace integral for U({a}, {b}, {z}) did not converge")
    return total * math.exp(ref)


def laguerre(m: int, s: float, z: float) -> float:
    """Generalized Laguerre polynomial L_m^s(z) by the three-term recurrence."""
    if m < 0:
        raise ValueError("degree must be non-negative")
    prev, cur = 1.0, 1.0 + s - z
    if m == 0:
        return prev
    for k in range(1, m):
        prev, cur = cur, ((2 * k + 1 + s - z) * cur - (k + s) * prev) / (k + 1)
    return cur


def gegenbauer(l: int, nu: float, x: float) -> float:
    """Gegenbauer polynomial C_l^nu(x) by recurrence."""
    if l < 0:
        raise ValueError("degree must be non-negative")
    prev, cur = 1.0, 2.0 * nu * x
    if l == 0:
        return prev
    for n in range(1, l):
        prev, cur = cur, (2.0 * x * (n + nu) * cur - (n + 2.0 * nu - 1.0) * prev) / (n + 1)
    return cur
