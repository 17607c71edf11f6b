"""Bargmann invariants tr(rho_1 ... rho_n) of bosonic Gaussian states."""

from .gaussian import (
    DomainError,
    GaussianState,
    PhysicalityError,
    ShapeError,
    characteristic_function,
    conjugate,
    is_pure,
    make_coherent,
    make_squeezed,
    make_squeezed_coherent,
    make_thermal,
    make_vacuum,
    random_state,
    symplectic_eigenvalues,
    symplectic_form,
    tensor,
    validate_state,
)
from .invariant import (
    IllConditionedError,
    InvariantResult,
    assemble_Lambda,
    assemble_M,
    bargmann_invariant,
    overlap,
    sqrt_branch,
    trace_power_det,
    trace_power_symplectic,
)

__version__ = "0.1.0"
