"""Exact computational algebra for free nilpotent groups, integral free Lie
algebras, bracketing kernels, labeled unitrivalent trees, and filtrations of
nilpotent automorphism groups."""

from .errors import NotOrientable, PreconditionError, ValidationError
from .words import (
    Alphabet,
    GroupWord,
    TruncatedSeries,
    commutator,
    conjugate,
    embed_word,
    generator,
    lcs_weight,
    magnus_expand,
    nilpotent_equal,
    omega,
    parse_word,
    project_y,
    render_word,
    word,
)
from .lie import (
    HallBasis,
    LieElement,
    generator_element,
    graded_class,
    hall_basis,
    lie_bracket,
    lift_lie_element,
    lyndon_words,
    vector_element,
    witt_dimension,
)
from .snf import integer_rank, smith_normal_form
from .brackets import (
    TensorElement,
    a1_dimensions,
    bracket_map,
    dk_basis,
    dk_rank,
    simple_tensor,
    tensor_from_components,
    tensor_from_json,
    tensor_to_json,
)
from .trees import (
    ClasperGraph,
    clasper_from_json,
    clasper_to_json,
    h_tree,
    make_graph,
    span_check,
    tree_to_dk,
    tripod,
)
from .automorphisms import (
    LongitudeTuple,
    NilAut,
    aut_from_json,
    aut_to_json,
    check_aut0,
    compose,
    extract_longitudes,
    filtration_degree,
    framing_tuple,
    full_twist_tuple,
    identity_aut,
    invert_aut,
    is_identity,
    johnson_element,
    kernel_lift_tuple,
    milnor_compose,
    phi_hat,
    psi_hat,
    reduce_level,
    symplectic_matrix,
    tuple_from_json,
    tuple_to_json,
    tuples_equal,
    validate_tuple,
)
from .lagrangian import (
    LagrangianReport,
    cocycle_check,
    gap_table,
    jl_element,
    lagrangian_degree,
    pure_braid_rank,
)
from .orientation import (
    count_valid_orientations,
    enumerate_unitrivalent,
    orient,
    verify_orientation,
)

__all__ = [
    "Alphabet",
    "ClasperGraph",
    "GroupWord",
    "HallBasis",
    "LagrangianReport",
    "LieElement",
    "LongitudeTuple",
    "NilAut",
    "NotOrientable",
    "PreconditionError",
    "TensorElement",
    "TruncatedSeries",
    "ValidationError",
    "a1_dimensions",
    "aut_from_json",
    "aut_to_json",
    "bracket_map",
    "check_aut0",
    "clasper_from_json",
    "clasper_to_json",
    "cocycle_check",
    "commutator",
    "compose",
    "conjugate",
    "count_valid_orientations",
    "dk_basis",
    "dk_rank",
    "embed_word",
    "enumerate_unitrivalent",
    "extract_longitudes",
    "filtration_degree",
    "framing_tuple",
    "full_twist_tuple",
    "gap_table",
    "generator",
    "generator_element",
    "graded_class",
    "h_tree",
    "hall_basis",
    "identity_aut",
    "integer_rank",
    "invert_aut",
    "is_identity",
    "jl_element",
    "johnson_element",
    "kernel_lift_tuple",
    "lagrangian_degree",
    "lcs_weight",
    "lie_bracket",
    "lift_lie_element",
    "lyndon_words",
    "magnus_expand",
    "make_graph",
    "milnor_compose",
    "nilpotent_equal",
    "omega",
    "orient",
    "parse_word",
    "phi_hat",
    "project_y",
    "psi_hat",
    "pure_braid_rank",
    "reduce_level",
    "render_word",
    "simple_tensor",
    "smith_normal_form",
    "span_check",
    "symplectic_matrix",
    "tensor_from_components",
    "tensor_from_json",
    "tensor_to_json",
    "tree_to_dk",
    "tripod",
    "tuple_from_json",
    "tuple_to_json",
    "tuples_equal",
    "validate_tuple",
    "vector_element",
    "verify_orientation",
    "witt_dimension",
    "word",
]
