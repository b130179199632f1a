"""
superjordan: exact super-Jordan verification and Wedderburn complements over JP_n
"""

from .errors import (
    SuperJordanError,
    InvalidParameter,
    DimensionMismatch,
    NonHomogeneousError,
    QuadraticTermError,
    NotInSpan,
    NotAnIdeal,
    DecompositionIncomplete,
    IncoherentXi,
    NoSolution,
)
from .scalars import AffineForm, Unknown, affine_add, affine_mul, to_scalar
from .base_check import BaseCheck, Report, configure_logging
from .graded import (
    Parity,
    Label,
    Element,
    GradedBasis,
    GradedAlgebra,
    multiply,
    algebra_to_json,
    algebra_from_json,
    subalgebra_check,
    quotient_by_ideal,
    check_isomorphism,
    complement_algebra,
)
from .identities import check_supercommutative, check_super_jordan, SuperJordanCheck, SupercommutativityCheck
from .matrix_models import (
    SuperMatrix,
    assoc_multiply,
    trp,
    supersymmetric_product,
    split_by_involution,
    build_jpn,
    build_pn_action,
    build_mnn,
    coordinates,
    check_superinvolution,
)
from .bimodules import (
    BimoduleAction,
    SplitNullExtension,
    regular_bimodule,
    opposite_bimodule,
    relabel,
    split_null_extension,
    check_jordan_bimodule,
    unit_element,
    verify_unit,
)
from .cases import Case, parse_case, build_case_extension
from .peirce import (
    PeirceDecomposition,
    verify_orthogonal_idempotents,
    peirce_decompose,
    check_peirce_relations,
    peirce_summary,
    same_subspace,
)
from .constraints import ConstraintSystem, reduce_constraints
from .symbolic import symbolic_lift, derive_constraints, derive_case, curated_instances, exhaustive_instances
from .wpt import (
    CorrectionPlan,
    complement_unit,
    read_xi,
    case1_correction,
    shear_twist,
    xi_pattern_twist,
    solve_complement,
    verify_complement,
)

__all__ = [
    'SuperJordanError', 'InvalidParameter', 'DimensionMismatch', 'NonHomogeneousError',
    'QuadraticTermError', 'NotInSpan', 'NotAnIdeal', 'DecompositionIncomplete', 'IncoherentXi',
    'NoSolution',
    'AffineForm', 'Unknown', 'affine_add', 'affine_mul', 'to_scalar',
    'BaseCheck', 'Report', 'configure_logging',
    'Parity', 'Label', 'Element', 'GradedBasis', 'GradedAlgebra', 'multiply', 'algebra_to_json',
    'algebra_from_json', 'subalgebra_check', 'quotient_by_ideal', 'check_isomorphism',
    'complement_algebra',
    'check_supercommutative', 'check_super_jordan', 'SuperJordanCheck', 'SupercommutativityCheck',
    'SuperMatrix', 'assoc_multiply', 'trp', 'supersymmetric_product', 'split_by_involution',
    'build_jpn', 'build_pn_action', 'build_mnn', 'coordinates', 'check_superinvolution',
    'BimoduleAction', 'SplitNullExtension', 'regular_bimodule', 'opposite_bimodule', 'relabel',
    'split_null_extension', 'check_jordan_bimodule', 'unit_element', 'verify_unit',
    'Case', 'parse_case', 'build_case_extension',
    'PeirceDecomposition', 'verify_orthogonal_idempotents', 'peirce_decompose',
    'check_peirce_relations', 'peirce_summary', 'same_subspace',
    'ConstraintSystem', 'reduce_constraints',
    'symbolic_lift', 'derive_constraints', 'derive_case', 'curated_instances', 'exhaustive_instances',
    'CorrectionPlan', 'read_xi', 'case1_correction', 'shear_twist', 'xi_pattern_twist',
    'solve_complement', 'verify_complement', 'complement_unit',
]
