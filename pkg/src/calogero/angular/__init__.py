"""Angular operator M^U: eigenvalue equations, solvers, transport matrices
and eigenfunctions."""

from .eigenfunctions import (
    AngularEigenfunction,
    ZeroEigenvectorError,
    boundary_residual,
    boundary_vectors,
    build_eigenfunction,
    free_q,
    free_type2_closed_form,
    reference_mode,
    symmetry_label,
    v_functions,
)
from .equations import (
    ab_coeffs,
    ab_products,
    delta_offset,
    f2,
    f2_decomposition,
    f2_scaled_imag,
    f_type1,
    log_f_type1_imag,
    rhs_scale,
    rhs_type1,
    type1_poles,
    type1_zeros,
)
from .solvers import (
    CASE_ALIASES,
    ExplicitCase,
    PermissibilityReport,
    angular_spectrum,
    certify_imag_cutoff,
    explicit_spectrum,
    permissibility,
    separating_spectrum,
    solve_type1,
    solve_type2,
)
from .transport import TransportMatrix, projector, projector_closed_form, transport_matrix
from .types import (
    AngularError,
    AngularLevel,
    BracketingError,
    ConnectionMatrix,
    Coupling,
    MuValue,
    NotAnEigenvalueError,
    SeparatingInputError,
    Series,
)

__all__ = [name for name in dir() if not name.startswith("_")]
