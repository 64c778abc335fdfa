"""torusint: unlikely intersections of rational curves with subtori.

Find, exactly certify, and analyze the points of a rationally
parametrized curve in the n-torus that lie in algebraic subgroups of
codimension at least two: exact search and verification, Weil and
Grassmannian heights, multiplicative decompositions, and a numeric
counting harness for the bounded-height subspace growth rate.
"""

__version__ = "0.1.0"

from .chain import ChainReport, degree_chain
from .curve import Curve, check_hypothesis, curve_from_coeffs, load_curve
from .errors import (
    BudgetExceededError,
    EmptyRegionError,
    HypothesisViolationError,
    InconsistentDecompositionError,
    InvalidInputError,
    PoleError,
    PrecisionExhaustedError,
    RankDeficiencyError,
    TorusintError,
)
from .gamma import (
    GammaDecomposition,
    SmallVectorSet,
    SubspaceDiagnostics,
    build_subspace,
    choose_generators,
    relation_lattice_of_point,
    small_vectors,
)
from .heights import (
    AlgebraicNumber,
    GrassmannHeight,
    TorusPoint,
    bm_floor,
    grassmann_height,
    point_height,
    torsion_order,
    weil_height,
)
from .logcount import (
    CountReport,
    GrowthVerdict,
    Region,
    choose_delta,
    count_subspaces,
    growth_report,
    pick_B,
)
from .numfield import NFElement
from .polys import IntPolynomial, from_coeffs
from .search import SearchReport, enumerate_lattices, intersect, search

__all__ = [
    "AlgebraicNumber",
    "BudgetExceededError",
    "ChainReport",
    "CountReport",
    "Curve",
    "EmptyRegionError",
    "GammaDecomposition",
    "GrassmannHeight",
    "GrowthVerdict",
    "HypothesisViolationError",
    "InconsistentDecompositionError",
    "IntPolynomial",
    "InvalidInputError",
    "NFElement",
    "PoleError",
    "PrecisionExhaustedError",
    "RankDeficiencyError",
    "Region",
    "SearchReport",
    "SmallVectorSet",
    "SubspaceDiagnostics",
    "TorusPoint",
    "TorusintError",
    "bm_floor",
    "build_subspace",
    "check_hypothesis",
    "choose_delta",
    "choose_generators",
    "count_subspaces",
    "curve_from_coeffs",
    "degree_chain",
    "enumerate_lattices",
    "from_coeffs",
    "grassmann_height",
    "growth_report",
    "intersect",
    "load_curve",
    "pick_B",
    "point_height",
    "relation_lattice_of_point",
    "search",
    "small_vectors",
    "torsion_order",
    "weil_height",
]
