"""Exact orthogonality of superpositions of two coherent states."""

__version__ = "0.1.0"

from .coherent import (
    cat_inner_product,
    cat_norm_squared,
    coherent_overlap,
    inner_product,
    metric_form,
    norm_squared,
    normalized_inner_product,
    symplectic_form,
)
from .errors import CatOrthoError
from .fock import (
    FockState,
    fock_expand,
    fock_expand_cat,
    fock_expand_coherent,
    fock_inner_product,
    oracle_inner_product,
    recommended_truncation,
)
from .husimi import GridGeometry, QGrid, husimi_cat, husimi_grid, husimi_quadrature_check
from .solver import (
    PhaseRegion,
    QuantizationClass,
    RegionKind,
    band_areas,
    classify_phase_pair,
    coherent_vs_cat_partner,
    equal_photon_radius,
    even_cat_partner,
    j_vector_partner,
    odd_cat_partner,
    solve_beta_family,
    solve_phi2,
)
from .states import CatVector, Superposition, reduce_phase
