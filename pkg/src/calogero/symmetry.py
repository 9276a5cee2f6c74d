"""Dihedral group D6: conjugacy classes, irreducible characters and the
link between rotation eigenvalues and representation labels.

Class order (frozen, also used in serialized output)::

    e, R_i (3 mirror reflections), P_i (3 exchange reflections),
    rot^{+-1}, rot^{+-2}, rot^3

where ``rot`` is the rotation by pi/3.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

CLASS_NAMES = ("e", "R", "P", "rot1", "rot2", "rot3")
CLASS_SIZES = (1, 3, 3, 2, 2, 1)
GROUP_ORDER = sum(CLASS_SIZES)


class RepLabel(str, Enum):
    """The six irreducible representations.  One-dimensional labels carry
    the (mirror parity, exchange parity) pair."""

    PP = "++"
    MP = "-+"
    PM = "+-"
    MM = "--"
    TWO = "(2)"
    TWO_TILDE = "~(2)"

    @property
    def dimension(self) -> int:
        return 2 if self in (RepLabel.TWO, RepLabel.TWO_TILDE) else 1

    @property
    def parities(self) -> tuple[int, int] | None:
        """(mirror parity, exchange parity) for 1-d labels, else None."""
        if self.dimension == 2:
            return None
        s = self.value
        return (1 if s[0] == "+" else -1, 1 if s[1] == "+" else -1)


REP_ORDER = (RepLabel.PP, RepLabel.MP, RepLabel.PM, RepLabel.MM, RepLabel.TWO, RepLabel.TWO_TILDE)

CharacterVector = tuple[int, int, int, int, int, int]

_TABLE: dict[RepLabel, CharacterVector] = {
    RepLabel.PP: (1, 1, 1, 1, 1, 1),
    RepLabel.MP: (1, -1, 1, -1, 1, -1),
    RepLabel.PM: (1, 1, -1, -1, 1, -1),
    RepLabel.MM: (1, -1, -1, 1, 1, 1),
    RepLabel.TWO: (2, 0, 0, 1, -1, -2),
    RepLabel.TWO_TILDE: (2, 0, 0, -1, -1, 2),
}


class InvalidCharacterError(ValueError):
    pass


def character_table() -> dict[RepLabel, CharacterVector]:
    return dict(_TABLE)


def inner_product(chi1, chi2) -> Fraction:
    """Class-weighted inner product (1/|G|) sum_C |C| chi1(C) chi2(C)."""
    total = sum(n * a * b for n, a, b in zip(CLASS_SIZES, chi1, chi2))
    return Fraction(total, GROUP_ORDER)


def decompose(chi) -> dict[RepLabel, int]:
    """Multiplicity of every irreducible in the (real-valued) character chi."""
    if len(chi) != len(CLASS_SIZES):
        raise InvalidCharacterError("character must have six class values")
    out = {}
    for rep in REP_ORDER:
        m = inner_product(chi, _TABLE[rep])
        if m.denominator != 1 or m < 0:
            raise InvalidCharacterError(f"multiplicity of {rep.value} is {m}")
        out[rep] = int(m)
    return out


def compose(mults: dict[RepLabel, int]) -> CharacterVector:
    """Character of the direct sum with the given multiplicities."""
    vals = [0] * 6
    for rep, m in mults.items():
        for i, v in enumerate(_TABLE[rep]):
            vals[i] += m * v
    return tuple(vals)  # type: ignore[return-value]


J = cmath.exp(2j * math.pi / 3)


@dataclass(frozen=True)
class TauInfo:
    type: int
    candidates: tuple[RepLabel, ...]


def _sixth_root_index(tau: complex, tol: float = 1e-9) -> int:
    tau = complex(tau)
    if abs(abs(tau) - 1.0) > tol:
        raise ValueError(f"{tau} is not a sixth root of unity")
    k = round(cmath.phase(tau) / (math.pi / 3)) % 6
    if abs(tau - cmath.exp(1j * math.pi * k / 3)) > tol:
        raise ValueError(f"{tau} is not a sixth root of unity")
    return k


def rep_of_tau(tau: complex) -> TauInfo:
    """Representation type of a joint eigenstate with rotation eigenvalue tau.

    tau = +1 or -1 gives type 1 (two candidate 1-d labels each, told apart by
    the exchange parity); -j, -conj(j) give the defining 2-d representation
    and j, conj(j) the twisted one.
    """
    k = _sixth_root_index(tau)
    if k == 0:
        return TauInfo(1, (RepLabel.PP, RepLabel.MM))
    if k == 3:
        return TauInfo(1, (RepLabel.MP, RepLabel.PM))
    if k in (1, 5):  # e^{+-i pi/3} = -conj(j), -j
        return TauInfo(2, (RepLabel.TWO,))
    return TauInfo(2, (RepLabel.TWO_TILDE,))


def rep_of_parities(mirror: int, exchange: int) -> RepLabel:
    return {
        (1, 1): RepLabel.PP,
        (-1, 1): RepLabel.MP,
        (1, -1): RepLabel.PM,
        (-1, -1): RepLabel.MM,
    }[(mirror, exchange)]


def exchange_class(rep: RepLabel) -> str:
    """Restriction to the particle-exchange S3: bosonic, fermionic or 2-d."""
    if rep.dimension == 2:
        return "mixed"
    return "bosonic" if rep.parities[1] == 1 else "fermionic"
