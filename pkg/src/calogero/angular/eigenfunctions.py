"""Eigenfunctions of M^U on the circle minus the six singular points.

An eigenfunction is stored through its sector coefficients
``(C_+^k, C_-^k)``, k = 1..6; sector k is ((k-1) pi/3, k pi/3).  Inside
sector 1 the two building blocks are the mirror-even and mirror-odd
combinations of the local solutions v1, v2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .. import specfun as sf
from ..symmetry import RepLabel, rep_of_parities, rep_of_tau
from . import equations as eq
from .transport import n_matrices, projector, tau_for, transport_matrix
from .types import (
    AngularLevel,
    ConnectionMatrix,
    Coupling,
    MuValue,
    NotAnEigenvalueError,
    SERIES_RE_TAU,
    Series,
)

SECTOR = math.pi / 3.0
HALF_SECTOR = math.pi / 6.0


class ZeroEigenvectorError(ArithmeticError):
    pass


# ------------------------------------------------------------ local solutions


def _reduced(phi: float) -> float:
    """Distance-like coordinate in (0, pi/6] using the pi/3 periodicity and
    the mirror symmetry of v1, v2 about pi/6."""
    t = math.fmod(phi, SECTOR)
    if t < 0:
        t += SECTOR
    return SECTOR - t if t > HALF_SECTOR else t


def v_functions(c: Coupling, mu: MuValue, phi: float) -> tuple[float, float]:
    """(v1, v2) at phi; both are pi/3-periodic and even about pi/6."""
    t = _reduced(phi)
    if t == 0.0:
        raise ValueError("v2 is singular (or v1 vanishes) on the singular set")
    nu = c.nu
    if c.is_oscillator:
        m = mu.value
        if mu.imaginary:
            return math.sinh(3 * m * t) / m, math.cosh(3 * m * t)
        v1 = 3 * t if m == 0 else math.sin(3 * m * t) / m
        return v1, math.cos(3 * m * t)
    s = math.sin(3.0 * t)
    z = s * s
    m = mu.complex
    f1 = sf.hyp2f1_complex((nu - m) / 2.0, (nu + m) / 2.0, nu + 0.5, z).real
    f2 = sf.hyp2f1_complex((1.0 - nu - m) / 2.0, (1.0 - nu + m) / 2.0, 1.5 - nu, z).real
    return s ** nu * f1, s ** (1.0 - nu) * f2


def sector_index(phi: float) -> tuple[int, float]:
    """(k, t): sector number 1..6 and local coordinate t in (0, pi/3)."""
    p = math.fmod(phi, 2.0 * math.pi)
    if p < 0:
        p += 2.0 * math.pi
    k = int(p // SECTOR)
    t = p - k * SECTOR
    if t < 1e-15 or SECTOR - t < 1e-15:
        raise ValueError(f"phi = {phi} lies on the singular set")
    return min(k, 5) + 1, t


def reference_mode(c: Coupling, mu0: MuValue, k: int, theta_index: int, phi: float) -> float:
    """Reference mode k (1 or 2) around the singular point theta_index * pi/3,
    normalized so that W[mode1, mode2] = 1."""
    d = phi - theta_index * SECTOR
    d = math.remainder(d, 2.0 * math.pi)
    if abs(d) >= HALF_SECTOR or d == 0.0:
        raise ValueError("reference modes live on a punctured pi/6 neighbourhood")
    v1, v2 = v_functions(c, mu0, abs(d))
    s = math.sqrt(3.0 * (2.0 * c.nu - 1.0))
    if k == 1:
        return math.copysign(v1, d) / s
    return -v2 / s


# ------------------------------------------------------------ eigenfunction


@dataclass
class AngularEigenfunction:
    """psi(phi) = sum_k C_+^k eta_+^k(phi) + C_-^k eta_-^k(phi)."""

    nu: float
    mu: MuValue
    cp: np.ndarray
    cm: np.ndarray
    level: AngularLevel | None = None
    allow_oscillator: bool = False
    _ab: tuple = field(init=False, repr=False)

    def __post_init__(self):
        self.cp = np.asarray(self.cp, dtype=complex)
        self.cm = np.asarray(self.cm, dtype=complex)
        self._ab = eq.ab_coeffs(self.coupling, self.mu)

    @property
    def coupling(self) -> Coupling:
        return Coupling(self.nu, allow_oscillator_limit=self.allow_oscillator or self.nu == 1.0)

    @property
    def ab(self) -> tuple[float, float, float, float]:
        return self._ab

    def eta(self, t: float) -> tuple[float, float]:
        """(eta_+^1, eta_-^1) at local coordinate t in (0, pi/3)."""
        a1, a2, b1, b2 = self._ab
        v1, v2 = v_functions(self.coupling, self.mu, t)
        ep = b2 * v1 - b1 * v2
        em = a2 * v1 - a1 * v2
        if t > HALF_SECTOR:
            em = -em
        return ep, em

    def __call__(self, phi: float) -> complex:
        k, t = sector_index(phi)
        ep, em = self.eta(t)
        return complex(self.cp[k - 1] * ep + self.cm[k - 1] * em)

    def sample(self, phis) -> np.ndarray:
        return np.array([self(p) for p in phis])

    def sector_norms(self) -> tuple[float, float]:
        """(int eta_+^2, int eta_-^2) over one sector.  The mixed integral
        vanishes by mirror symmetry."""
        p = 1.5 - self.nu if self.nu != 1.0 else 1.0
        upper = HALF_SECTOR ** p

        def integrand(u, which):
            if u == 0.0:
                return 0.0
            t = u ** (1.0 / p)
            jac = t / (p * u)
            return self.eta(t)[which] ** 2 * jac

        ip = 2.0 * quad(integrand, 0.0, upper, args=(0,), limit=200, epsabs=1e-14, epsrel=1e-12)[0]
        im = 2.0 * quad(integrand, 0.0, upper, args=(1,), limit=200, epsabs=1e-14, epsrel=1e-12)[0]
        return ip, im

    def norm(self) -> float:
        ip, im = self.sector_norms()
        return math.sqrt(float(np.sum(np.abs(self.cp) ** 2) * ip + np.sum(np.abs(self.cm) ** 2) * im))

    def normalized(self) -> "AngularEigenfunction":
        n = self.norm()
        if n == 0.0:
            raise ZeroEigenvectorError("zero function cannot be normalized")
        return AngularEigenfunction(self.nu, self.mu, self.cp / n, self.cm / n, self.level, self.allow_oscillator)

    def with_coefficients(self, cp, cm) -> "AngularEigenfunction":
        return AngularEigenfunction(self.nu, self.mu, cp, cm, self.level, self.allow_oscillator)


# ----------------------------------------------------- symmetry on coefficients


def rotated(psi: AngularEigenfunction) -> AngularEigenfunction:
    """psi(phi + pi/3): coefficients shift C^k -> C^{k+1}."""
    return psi.with_coefficients(np.roll(psi.cp, -1), np.roll(psi.cm, -1))


def mirrored(psi: AngularEigenfunction) -> AngularEigenfunction:
    """psi(pi/3 - phi): sector k goes to sector 2 - k (mod 6)."""
    idx = [(-k) % 6 for k in range(6)]
    return psi.with_coefficients(psi.cp[idx], -psi.cm[idx])


def exchanged(psi: AngularEigenfunction) -> AngularEigenfunction:
    """psi(-phi): sector k goes to sector 7 - k."""
    idx = [(5 - k) % 6 for k in range(6)]
    return psi.with_coefficients(psi.cp[idx], -psi.cm[idx])


def _coeff_vector(psi: AngularEigenfunction) -> np.ndarray:
    return np.concatenate([psi.cp, psi.cm])


def _eigen_ratio(before: np.ndarray, after: np.ndarray, tol: float = 1e-9) -> complex | None:
    i = int(np.argmax(np.abs(before)))
    if abs(before[i]) == 0.0:
        return None
    r = after[i] / before[i]
    if np.abs(after - r * before).max() > tol * np.abs(before).max():
        return None
    return complex(r)


def rotation_eigenvalue(psi: AngularEigenfunction) -> complex | None:
    """tau with C^{k+1} = tau C^k, or None if psi is not a rotation eigenvector."""
    return _eigen_ratio(_coeff_vector(psi), _coeff_vector(rotated(psi)))


def reflection_parities(psi: AngularEigenfunction) -> tuple[int, int] | None:
    """(mirror parity, exchange parity) for a one-dimensional symmetry type."""
    v = _coeff_vector(psi)
    rm = _eigen_ratio(v, _coeff_vector(mirrored(psi)))
    rp = _eigen_ratio(v, _coeff_vector(exchanged(psi)))
    if rm is None or rp is None:
        return None
    return int(round(rm.real)), int(round(rp.real))


def sector_span_character(series: Series) -> tuple[int, ...]:
    """Character of the six-dimensional span of a separating level.

    Rotations and exchange reflections fix no sector; each mirror fixes two
    sectors with sign +1 (B, mirror-even) or -1 (A, mirror-odd).
    """
    sgn = -1 if series is Series.SEP_A else 1
    return (6, 2 * sgn, 0, 0, 0, 0)


def symmetry_label(psi: AngularEigenfunction) -> RepLabel | None:
    """Irreducible label read off from the coefficients (type-1 or type-2)."""
    tau = rotation_eigenvalue(psi)
    if tau is None:
        return None
    info = rep_of_tau(tau)
    if info.type == 2:
        return info.candidates[0]
    par = reflection_parities(psi)
    if par is None:
        return None
    return rep_of_parities(*par)


# ------------------------------------------------------------ construction


_TYPE1_PATTERNS = {
    Series.A_PLUS: ("m", True),
    Series.A_MINUS: ("m", False),
    Series.B_PLUS: ("p", False),
    Series.B_MINUS: ("p", True),
}


def build_eigenfunction(
    level: AngularLevel, c: Coupling, U: ConnectionMatrix, which: int = 0
) -> AngularEigenfunction:
    """Eigenfunction for ``level``; ``which`` selects a basis vector inside
    a degenerate level (sector 0..5 for separating levels, 0/1 for the
    positive/negative Im tau member of a type-2 pair)."""
    mu = level.mu
    zeros = np.zeros(6, dtype=complex)
    series = level.series
    osc = c.is_oscillator
    if series in (Series.SEP_A, Series.SEP_B):
        if not 0 <= which < 6:
            raise ValueError("separating levels have six basis states")
        e = zeros.copy()
        e[which] = 1.0
        cp, cm = (zeros, e) if series is Series.SEP_A else (e, zeros)
    elif series in _TYPE1_PATTERNS:
        part, alternating = _TYPE1_PATTERNS[series]
        pattern = np.array([(-1.0) ** k if alternating else 1.0 for k in range(6)], dtype=complex)
        cp, cm = (pattern, zeros) if part == "p" else (zeros, pattern)
    else:
        if which not in (0, 1):
            raise ValueError("type-2 levels have two basis states")
        tau = tau_for(SERIES_RE_TAU[series], 1 if which == 0 else -1)
        tm = transport_matrix(c, U, mu)
        try:
            P = projector(tau, tm)
        except NotAnEigenvalueError:
            # Far out on the imaginary axis T has entries ~ e^{pi x} and the
            # projector sum cannot be resolved in double precision.
            first = _null_vector(c, U, mu, tau)
        else:
            first = P[:, 0]
            if np.abs(first).max() < 1e-12 * max(1.0, np.abs(P).max()):
                first = P[:, 1]
            if np.abs(first).max() == 0.0:
                raise ZeroEigenvectorError("projected vector vanishes for both seeds")
        powers = np.array([tau ** k for k in range(6)])
        cp, cm = first[0] * powers, first[1] * powers
    return AngularEigenfunction(c.nu, mu, cp, cm, level, osc)


def _null_vector(c: Coupling, U: ConnectionMatrix, mu: MuValue, tau: complex) -> np.ndarray:
    """Right singular vector of tau N_+ - N_- for its smallest singular value,
    i.e. the sector-1 pair with C^2 = tau C^1 compatible with the boundary
    condition, without forming T."""
    n_plus, n_minus = n_matrices(c, U, mu)
    _, sv, vh = np.linalg.svd(tau * n_plus - n_minus)
    if sv[-1] > 1e-8 * sv[0]:
        raise NotAnEigenvalueError(f"tau = {tau} is not an eigenvalue of T at mu = {mu}")
    return vh.conj()[-1]


# ------------------------------------------------------------ boundary data


def boundary_vectors(psi: AngularEigenfunction) -> list[tuple[np.ndarray, np.ndarray]]:
    """(B_theta, B'_theta) at theta = j pi/3, j = 0..5, from the coefficients."""
    a1, a2, b1, b2 = psi.ab
    s = math.sqrt(3.0 * (2.0 * psi.nu - 1.0))
    out = []
    for j in range(6):
        right = j % 6  # sector to the right of theta_j (0-based)
        left = (j - 1) % 6
        cpr, cmr = psi.cp[right], psi.cm[right]
        cpl, cml = psi.cp[left], psi.cm[left]
        B = s * np.array([-cpr * b1 - cmr * a1, -cpl * b1 + cml * a1])
        Bp = s * np.array([cpr * b2 + cmr * a2, cpl * b2 - cml * a2])
        if j % 2:
            B, Bp = B[::-1], Bp[::-1]
        out.append((B, Bp))
    return out


def boundary_residual(psi: AngularEigenfunction, U: ConnectionMatrix) -> float:
    """max_theta |(U - 1) B + i (U + 1) B'|, relative to max |B| + |B'|."""
    Um = U.matrix()
    one = np.eye(2)
    worst, scale = 0.0, 0.0
    for B, Bp in boundary_vectors(psi):
        r = (Um - one) @ B + 1j * (Um + one) @ Bp
        worst = max(worst, float(np.linalg.norm(r)))
        scale = max(scale, float(np.linalg.norm(B) + np.linalg.norm(Bp)))
    if scale == 0.0:
        return math.inf
    return worst / scale


def numerical_wronskian(f, g, phi: float, h: float = 1e-5) -> complex:
    """W[f, g] = f g' - f' g with central differences (test oracle only)."""
    fd = (f(phi + h) - f(phi - h)) / (2 * h)
    gd = (g(phi + h) - g(phi - h)) / (2 * h)
    return f(phi) * gd - fd * g(phi)


# ------------------------------------------------------------ free case


def free_q(c: Coupling, mu: float) -> float:
    """q(mu) for the closed-form type-2 states of U = sigma1."""
    nu = c.nu
    pref = 3.0 * math.cos(math.pi * nu) ** 2 / (2.0 * math.pi ** 2) * 2.0 ** (-2.0 * nu)
    lg = 0.0
    sgn = 1
    for arg in (0.5 - nu, 1.5 - nu, nu + mu, nu - mu):
        l, s = sf.ln_gamma_real(arg)
        lg += l
        sgn *= s
    return sgn * pref * math.exp(lg)


def free_type2_closed_form(c: Coupling, mu: float, tau: complex, phi: float) -> complex:
    """-i q / Im(tau) v1 + v2 on the first half of sector 1."""
    if not 0.0 < phi <= HALF_SECTOR:
        raise ValueError("closed form holds on (0, pi/6]")
    v1, v2 = v_functions(c, MuValue(mu), phi)
    return -1j * free_q(c, mu) / complex(tau).imag * v1 + v2


def oscillator_plane_wave(mu: float, sign: int, phi: float) -> complex:
    return cmath.exp(1j * sign * 3.0 * mu * phi)


__all__ = [
    "AngularEigenfunction",
    "ZeroEigenvectorError",
    "NotAnEigenvalueError",
    "boundary_residual",
    "boundary_vectors",
    "build_eigenfunction",
    "exchanged",
    "free_q",
    "free_type2_closed_form",
    "mirrored",
    "numerical_wronskian",
    "oscillator_plane_wave",
    "reference_mode",
    "reflection_parities",
    "rotated",
    "rotation_eigenvalue",
    "sector_index",
    "sector_span_character",
    "symmetry_label",
    "v_functions",
]
