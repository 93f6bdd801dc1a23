"""Evaluation codes on plane curves with prescribed automorphism groups.

Build generator matrices for codes whose evaluation sets are group orbits,
verify the construction conditions exactly over small finite fields, and
certify that the acting group embeds faithfully into the code's
permutation automorphism group.
"""

from .errors import CheckFailure, CheckReport, OrbitCodesError, PreconditionError
from .gf import Embedding, FieldElement, FieldSpec, embedding, frobenius, make_field, root_of_unity
from .geometry import (
    PlaneCurve,
    ProjPoint,
    fermat_curve,
    plane_curve,
    point,
    projective_line,
    trace_fermat_curve,
)
from .autgroup import AutGroup, ProjMap, builtin_generators, close, diagonal_map, identity_map
from .code_analysis import (
    CoordPermutation,
    EvalCode,
    min_distance_exact,
    permutation_of,
    preserves_code,
    rank_and_rref,
    verify_faithful,
)
from .construction import (
    ConstructionResult,
    Divisor,
    EvalBasis,
    Instance,
    build_basis,
    build_code,
    build_divisor,
    builtin_instance,
    check_condition_b,
    check_condition_d,
    run_construction,
)

__version__ = "0.1.0"
