"""Value types shared by the angular solvers."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum

from ..symmetry import RepLabel

SEPARATING_TOL = 1e-12
DIVERGENT_TOL = 1e-12
_SNAP = 1e-15


class AngularError(ValueError):
    pass


class SeparatingInputError(AngularError):
    """Operation needs a non-diagonal connection matrix."""


class BracketingError(ArithmeticError):
    """A root bracket derived from the analytic ladders failed."""


class NotAnEigenvalueError(ArithmeticError):
    pass


def snap(v: float) -> float:
    return 0.0 if abs(v) < _SNAP else v


@dataclass(frozen=True)
class Coupling:
    """Coupling g = 2 nu (nu - 1) with 1/2 < nu < 3/2, nu != 1.

    ``allow_oscillator_limit`` admits nu = 1 for the closed-form harmonic
    oscillator checks only.
    """

    nu: float
    allow_oscillator_limit: bool = False

    def __post_init__(self):
        nu = float(self.nu)
        if not (0.5 < nu < 1.5) or math.isnan(nu):
            raise AngularError(f"nu = {nu} outside the allowed range (1/2, 3/2)")
        if nu == 1.0 and not self.allow_oscillator_limit:
            raise AngularError("nu = 1 is only admitted for the oscillator-limit checks")
        object.__setattr__(self, "nu", nu)

    @property
    def g(self) -> float:
        return 2.0 * self.nu * (self.nu - 1.0)

    @property
    def is_oscillator(self) -> bool:
        return self.nu == 1.0


def _canonical_angle(t: float) -> float:
    t = math.fmod(float(t), 2.0 * math.pi)
    if t > math.pi:
        t -= 2.0 * math.pi
    elif t <= -math.pi:
        t += 2.0 * math.pi
    return t


@dataclass(frozen=True)
class ConnectionMatrix:
    """U = e^{i alpha} [[cos beta, i sin beta], [i sin beta, cos beta]].

    Angles are stored in (-pi, pi].  A diagonal U with cos beta < 0 is stored
    as (alpha + pi, 0), since both describe the same matrix.
    """

    alpha: float
    beta: float

    def __post_init__(self):
        a = _canonical_angle(self.alpha)
        b = _canonical_angle(self.beta)
        if abs(math.sin(b)) < SEPARATING_TOL and math.cos(b) < 0:
            a = _canonical_angle(a + math.pi)
            b = 0.0
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @classmethod
    def identity(cls) -> "ConnectionMatrix":
        return cls(0.0, 0.0)

    @classmethod
    def minus_identity(cls) -> "ConnectionMatrix":
        return cls(math.pi, 0.0)

    @classmethod
    def sigma1(cls) -> "ConnectionMatrix":
        return cls(-math.pi / 2, math.pi / 2)

    @classmethod
    def minus_sigma1(cls) -> "ConnectionMatrix":
        return cls(math.pi / 2, math.pi / 2)

    @property
    def sin_a(self) -> float:
        return snap(math.sin(self.alpha))

    @property
    def cos_a(self) -> float:
        return snap(math.cos(self.alpha))

    @property
    def sin_b(self) -> float:
        return snap(math.sin(self.beta))

    @property
    def cos_b(self) -> float:
        return snap(math.cos(self.beta))

    @property
    def separating(self) -> bool:
        return abs(math.sin(self.beta)) < SEPARATING_TOL

    @property
    def entry_a(self) -> complex:
        return complex(self.cos_a, self.sin_a) * self.cos_b

    @property
    def entry_b(self) -> complex:
        return 1j * complex(self.cos_a, self.sin_a) * self.sin_b

    def matrix(self):
        import numpy as np

        A, B = self.entry_a, self.entry_b
        return np.array([[A, B], [B, A]], dtype=complex)


@dataclass(frozen=True, order=True)
class MuValue:
    """Spectral parameter mu: real (>= 0) or purely imaginary i x (x > 0).

    Ordering follows lambda = (3 mu)^2.
    """

    lam: float = field(init=False, repr=False)
    value: float
    imaginary: bool = False

    def __post_init__(self):
        v = float(self.value)
        if v < 0:
            raise AngularError("mu is stored by its non-negative modulus")
        if self.imaginary and v == 0:
            raise AngularError("imaginary mu needs x > 0")
        object.__setattr__(self, "value", v)
        object.__setattr__(self, "lam", (-9.0 if self.imaginary else 9.0) * v * v)

    @classmethod
    def real(cls, mu: float) -> "MuValue":
        return cls(abs(mu), False)

    @classmethod
    def imag(cls, x: float) -> "MuValue":
        return cls(abs(x), True)

    @property
    def complex(self) -> complex:
        return complex(0.0, self.value) if self.imaginary else complex(self.value)

    @property
    def kind(self) -> str:
        return "imaginary" if self.imaginary else "real"

    @property
    def sqrt_lambda(self) -> complex:
        return 3.0 * self.complex

    def shifted(self, delta: float) -> "MuValue":
        return MuValue(self.value + delta, self.imaginary)


class Series(str, Enum):
    SEP_A = "SepA"
    SEP_B = "SepB"
    A_PLUS = "A+"
    A_MINUS = "A-"
    B_PLUS = "B+"
    B_MINUS = "B-"
    TYPE2_PLUS = "Type2(+1/2)"
    TYPE2_MINUS = "Type2(-1/2)"

    @property
    def rank(self) -> int:
        return list(Series).index(self)

    @property
    def is_type2(self) -> bool:
        return self in (Series.TYPE2_PLUS, Series.TYPE2_MINUS)

    @property
    def letter(self) -> str:
        return {"SepA": "A", "A+": "A", "A-": "A", "SepB": "B", "B+": "B", "B-": "B"}.get(self.value, "")


SERIES_REPS = {
    Series.SEP_A: frozenset({RepLabel.MP, RepLabel.MM, RepLabel.TWO, RepLabel.TWO_TILDE}),
    Series.SEP_B: frozenset({RepLabel.PP, RepLabel.PM, RepLabel.TWO, RepLabel.TWO_TILDE}),
    Series.A_PLUS: frozenset({RepLabel.MP}),
    Series.A_MINUS: frozenset({RepLabel.MM}),
    Series.B_PLUS: frozenset({RepLabel.PP}),
    Series.B_MINUS: frozenset({RepLabel.PM}),
    Series.TYPE2_PLUS: frozenset({RepLabel.TWO}),
    Series.TYPE2_MINUS: frozenset({RepLabel.TWO_TILDE}),
}

SERIES_MULTIPLICITY = {
    Series.SEP_A: 6,
    Series.SEP_B: 6,
    Series.A_PLUS: 1,
    Series.A_MINUS: 1,
    Series.B_PLUS: 1,
    Series.B_MINUS: 1,
    Series.TYPE2_PLUS: 2,
    Series.TYPE2_MINUS: 2,
}

# real part of the rotation eigenvalue tau carried by each series
SERIES_RE_TAU = {
    Series.A_PLUS: -1.0,
    Series.A_MINUS: 1.0,
    Series.B_PLUS: 1.0,
    Series.B_MINUS: -1.0,
    Series.TYPE2_PLUS: 0.5,
    Series.TYPE2_MINUS: -0.5,
}


@dataclass(frozen=True)
class AngularLevel:
    mu: MuValue
    series: Series
    reps: frozenset = frozenset()
    multiplicity: int = 0

    def __post_init__(self):
        if not self.reps:
            object.__setattr__(self, "reps", SERIES_REPS[self.series])
        if not self.multiplicity:
            object.__setattr__(self, "multiplicity", SERIES_MULTIPLICITY[self.series])

    @classmethod
    def make(cls, mu: MuValue, series: Series) -> "AngularLevel":
        return cls(mu, series)

    @property
    def re_tau(self) -> float | None:
        return SERIES_RE_TAU.get(self.series)

    @property
    def lam(self) -> float:
        return self.mu.lam

    def sort_key(self):
        return (self.mu.lam, self.series.rank)


def tau_from_re(re_tau: float, im_sign: int = 1) -> complex:
    """Sixth root of unity with the given real part (imaginary sign chosen)."""
    if abs(abs(re_tau) - 1.0) < 1e-12:
        return complex(re_tau, 0.0)
    return complex(re_tau, im_sign * math.sqrt(3.0) / 2.0)


def unit_phase(t: float) -> complex:
    return cmath.exp(1j * t)
