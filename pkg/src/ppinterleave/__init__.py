"""Permutation-polynomial interleavers over Z_N: construction, spread and
non-linearity metrics, inverses, and exhaustive searches."""

from .designs import BoundReport, bounds, linear_ms_enumerate, ms_qpp, ub_D, ub_DE
from .geometry import (
    InterleaverCode,
    NotAPermutation,
    OrbitDecomposition,
    intra_orbit_bound,
    isometry_group,
    l1_dist,
    lee_dist,
    local_spread,
    orbits,
    qpp_orbit_translations,
    spread_D,
    spread_DE,
    spread_profile,
    spread_via_representatives,
)
from .inverse import (
    InverseResult,
    fit_polynomial_inverse,
    inverse_permutation,
    ms_inverse,
    shifted_inverse,
)
from .metrics import (
    MetricsReport,
    corner_merit,
    epsilon,
    omega,
    omega_refined,
    optimize_constant,
    parameter_entropy,
    zeta,
    zeta_refined,
)
from .modring import (
    RingPolynomial,
    eval_sequence,
    evaluate,
    functional_equal,
    reduce_degree,
    zero_polynomial,
)
from .permcheck import (
    PermutationVerdict,
    exists_irreducible_qpp,
    is_irreducible_degree,
    is_permutation,
    is_qpp_fast,
    scan_existence,
)
from .search import (
    Objective,
    SearchResult,
    SearchSpec,
    evaluate_candidate,
    search_max_D,
    search_omega,
)

__version__ = "0.1.0"
