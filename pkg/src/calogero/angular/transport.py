"""Transport matrix T(mu) relating the coefficient pairs of adjacent sectors,
and the projectors onto its eigenvectors at type-2 eigenvalues."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import equations as eq
from .types import ConnectionMatrix, Coupling, MuValue, NotAnEigenvalueError, SeparatingInputError

PROJECTOR_TOL = 1e-9


@dataclass(frozen=True)
class TransportMatrix:
    """T = N_+^{-1} N_- with the entry polynomials x, y, z and det N_+.

    Sector coefficients obey (C_+^{k+1}, C_-^{k+1}) = T (C_+^k, C_-^k).
    """

    matrix: np.ndarray
    x: complex
    y: complex
    z: complex
    det_np: complex

    @property
    def det(self) -> complex:
        return complex(np.linalg.det(self.matrix))

    @property
    def half_trace(self) -> float:
        """x / det N_+, which equals Re(tau) at a type-2 eigenvalue."""
        return (self.x / self.det_np).real

    def power(self, k: int) -> np.ndarray:
        return np.linalg.matrix_power(self.matrix, k)


def _complex_ab(c: Coupling, mu: MuValue) -> tuple[complex, complex]:
    a1, a2, b1, b2 = eq.ab_coeffs(c, mu)
    return complex(a1, a2), complex(b1, b2)


def n_matrices(c: Coupling, U: ConnectionMatrix, mu: MuValue) -> tuple[np.ndarray, np.ndarray]:
    """(N_+, N_-) from the boundary conditions at the two ends of a sector."""
    a, b = _complex_ab(c, mu)
    A, B = U.entry_a, U.entry_b
    ac, bc = a.conjugate(), b.conjugate()
    n_plus = np.array([[b - bc * A, a - ac * A], [-bc * B, -ac * B]], dtype=complex)
    n_minus = np.array([[bc * B, -ac * B], [-b + bc * A, a - ac * A]], dtype=complex)
    return n_plus, n_minus


def transport_matrix(c: Coupling, U: ConnectionMatrix, mu: MuValue) -> TransportMatrix:
    if U.separating:
        raise SeparatingInputError("transport matrix needs a non-diagonal U")
    a, b = _complex_ab(c, mu)
    A, B = U.entry_a, U.entry_b
    ac, bc = a.conjugate(), b.conjugate()
    x = -ac * bc * B * B + (ac * A - a) * (bc * A - b)
    y = ac * ac * B * B - (ac * A - a) ** 2
    z = bc * bc * B * B - (bc * A - b) ** 2
    det_np = -2j * (3.0 - 6.0 * c.nu) * B
    T = np.array([[x, y], [z, x]], dtype=complex) / det_np
    return TransportMatrix(T, complex(x), complex(y), complex(z), complex(det_np))


def projector(tau: complex, tm: TransportMatrix, tol: float = PROJECTOR_TOL) -> np.ndarray:
    """pi_tau = (1/6) sum_k conj(tau)^k T^k.

    Raises :class:`NotAnEigenvalueError` unless the result is an idempotent
    with T pi = tau pi.
    """
    tau = complex(tau)
    T = tm.matrix
    acc = np.zeros((2, 2), dtype=complex)
    Tk = np.eye(2, dtype=complex)
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, 7):
            Tk = Tk @ T
            acc += tau.conjugate() ** k * Tk
        P = acc / 6.0
        scale = max(1.0, float(np.abs(P).max()))
        idem = float(np.abs(P @ P - P).max())
        eig = float(np.abs(T @ P - tau * P).max())
    if not np.isfinite(P).all() or not idem <= tol * scale or not eig <= tol * scale * max(1.0, np.abs(T).max()):
        raise NotAnEigenvalueError(f"tau = {tau} is not an eigenvalue of T at this mu")
    return P


def projector_closed_form(tau: complex, tm: TransportMatrix) -> np.ndarray:
    """Diagonal 1/2, off-diagonals -2i (y or z) Im(tau) / (3 det N_+)."""
    im = complex(tau).imag
    f = -2j * im / (3.0 * tm.det_np)
    return np.array([[0.5, f * tm.y], [f * tm.z, 0.5]], dtype=complex)


def sixth_power_defect(tm: TransportMatrix) -> float:
    return float(np.abs(tm.power(6) - np.eye(2)).max())


def tau_for(re_tau: float, im_sign: int) -> complex:
    return complex(re_tau, math.copysign(math.sqrt(3.0) / 2.0, im_sign))
