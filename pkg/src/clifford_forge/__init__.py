"""Exact Clifford algebras of homogeneous forms.

Build presentations from forms, rewrite in the truncated quotient, search and
verify matrix representations, and check the Ulrich property of the
corresponding modules over P^1.
"""

from .errors import CliffordError
from .field import GF, QQ, FieldSpec
from .kernels import BACKEND
from .normalform import FilteredDims, RewriteSystem, truncated_completion
from .parse import parse_ncpoly, parse_poly, print_poly
from .poly import CPoly, MixedPoly, NCPoly, coeff_of_xmonomial, mixed_mul, mixed_pow
from .presentation import (
    FormSpec,
    HypersurfaceData,
    Presentation,
    clifford_relations,
    generators,
    hypersurface_equation,
    nondiagonal,
    roby,
    weighted,
)
from .representations import (
    MatrixRep,
    SearchReport,
    check_rank_divisibility,
    is_specialization,
    reduced_compatible,
    search_reps,
    verify_rep,
)
from .ulrichmod import (
    CurveData,
    GradedModule,
    SplittingType,
    UlrichReport,
    genus,
    graded_dimension,
    module_from_rep,
    rep_from_module,
    splitting_type,
    twist,
    ulrich_check,
)

__version__ = "0.1.0"
