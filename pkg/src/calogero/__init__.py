"""Spectral solver for the three-particle Calogero model under the
D6-symmetric family of self-adjoint boundary conditions U(alpha, beta).

Layout:

* :mod:`calogero.specfun` - gamma, digamma, hypergeometric kernels
* :mod:`calogero.symmetry` - D6 character table and labels
* :mod:`calogero.angular` - angular eigenvalue problem
* :mod:`calogero.radial` - radial eigenvalue problem
* :mod:`calogero.assembly` - assembled energy spectrum
* :mod:`calogero.cli` - command line (``python -m calogero``)
"""

from .angular import AngularLevel, ConnectionMatrix, Coupling, MuValue, Series
from .assembly import EnergyLevel, EnergySpectrum, ModelConfig, energy_spectrum, jacobi_coords, oscillator_limit_check
from .radial import RadialBoundary, RadialLevel, solve_radial
from .symmetry import RepLabel

__version__ = "0.1.0"

__all__ = [
    "AngularLevel",
    "ConnectionMatrix",
    "Coupling",
    "EnergyLevel",
    "EnergySpectrum",
    "ModelConfig",
    "MuValue",
    "RadialBoundary",
    "RadialLevel",
    "RepLabel",
    "Series",
    "energy_spectrum",
    "jacobi_coords",
    "oscillator_limit_check",
    "solve_radial",
]
