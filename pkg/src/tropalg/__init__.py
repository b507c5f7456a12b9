"""tropalg: max-plus / weighted-lattice algebra, tropical geometry, and
convex piecewise-linear regression.

The library is organized around a scalar clodum (a complete lattice with a
pair of dual multiplications) that every higher-level object carries:
vectors, matrices and signals (:mod:`tropalg.wlattice`), optimal solvers for
max-mul linear systems (:mod:`tropalg.solver`), tropical polynomials,
Newton polytopes and halfspaces (:mod:`tropalg.tropgeom`), and max-affine
regression (:mod:`tropalg.regression`).
"""

from .clodum import (
    MAX_MIN,
    MAX_PLUS,
    MAX_TIMES,
    CarrierError,
    Clodum,
    TropicalError,
    UnsupportedClodumError,
    max_softmin,
    soft_add,
)
from .formats import (
    format_polynomial,
    format_tropmat,
    parse_polynomial,
    parse_tropmat,
    read_polynomial,
    read_tropmat,
    read_tropvec,
    write_polynomial,
    write_tropmat,
)
from .regression import (
    AutoSlopes,
    FitProblem,
    FitReport,
    GivenSlopes,
    estimate_slopes_1d,
    estimate_slopes_nd,
    fit_line,
    fit_max_affine,
    fit_plane,
    least_squares_line,
)
from .solver import (
    SolveResult,
    canonical_projection,
    greatest_subsolution,
    hilbert_metric,
    mmae_solution,
    solve,
)
from .tropgeom import (
    Polytope,
    TropicalHalfspace,
    TropicalPolynomial,
    argmax_terms,
    convex_hull_2d,
    halfspace_contains,
    newton_polytope,
    on_variety,
    polytope_equal,
    polytope_join,
    polytope_minkowski_sum,
    tropical_max,
    tropical_sum,
)
from .wlattice import (
    ClodumMismatchError,
    DimensionMismatchError,
    Signal1D,
    TropicalMatrix,
    TropicalVector,
    conj_transpose,
    matmul_dilate,
    matmul_erode,
    matvec_dilate,
    matvec_erode,
    signal_dilate,
    signal_erode,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_MIN",
    "MAX_PLUS",
    "MAX_TIMES",
    "CarrierError",
    "Clodum",
    "TropicalError",
    "UnsupportedClodumError",
    "max_softmin",
    "soft_add",
    "ClodumMismatchError",
    "DimensionMismatchError",
    "Signal1D",
    "TropicalMatrix",
    "TropicalVector",
    "conj_transpose",
    "matmul_dilate",
    "matmul_erode",
    "matvec_dilate",
    "matvec_erode",
    "signal_dilate",
    "signal_erode",
    "SolveResult",
    "canonical_projection",
    "greatest_subsolution",
    "hilbert_metric",
    "mmae_solution",
    "solve",
    "Polytope",
    "TropicalHalfspace",
    "TropicalPolynomial",
    "argmax_terms",
    "convex_hull_2d",
    "halfspace_contains",
    "newton_polytope",
    "on_variety",
    "polytope_equal",
    "polytope_join",
    "polytope_minkowski_sum",
    "tropical_max",
    "tropical_sum",
    "AutoSlopes",
    "FitProblem",
    "FitReport",
    "GivenSlopes",
    "estimate_slopes_1d",
    "estimate_slopes_nd",
    "fit_line",
    "fit_max_affine",
    "fit_plane",
    "least_squares_line",
    "format_polynomial",
    "format_tropmat",
    "parse_polynomial",
    "parse_tropmat",
    "read_polynomial",
    "read_tropmat",
    "read_tropvec",
    "write_polynomial",
    "write_tropmat",
]
