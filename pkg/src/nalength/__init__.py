"""nalength: exact-arithmetic length computations for finite-dimensional
nonassociative algebras given by structure constants.

The public surface re-exported here covers the whole pipeline: exact
linear algebra over Q and GF(p), bracketed words, multilinear monomial
sets, span filtrations and characteristic sequences, identity and
class-membership checking, and algebra-level length search.
"""

from .algebra import (
    Algebra,
    ExampleParams,
    build,
    build_example,
    dumps,
    load,
    loads,
    make_algebra,
    multiply,
    save,
)
from .classify import (
    FormalIdentity,
    IdentityReport,
    RepresentationSupport,
    check_anticommutative,
    check_identity,
    check_jacobi,
    check_k_membership,
    check_malcev,
    classify_battery,
    decompose,
    identity_family,
    verify_rewrites,
)
from .errors import (
    DimensionMismatch,
    InvariantViolation,
    NalengthError,
    NotGeneratingError,
    ParseError,
    PreconditionError,
    ResourceBudgetError,
    ValidationError,
)
from .exactfield import (
    QQ,
    BasisBuilder,
    Field,
    FieldSpec,
    Matrix,
    PrimeField,
    Rationals,
    SubspaceBasis,
    extend_basis,
    field_from_json,
    field_from_text,
    membership,
    rref,
    solve_affine,
)
from .filtration import (
    CharSeq,
    Filtration,
    GapReport,
    GenSet,
    StepSearchResult,
    analyze_charseq,
    char_seq,
    compute_filtration,
    equivalent,
    find_irreducible_words,
    find_step_words,
    is_irreducible,
    length_of_set,
)
from .monomials import (
    MonomialSet,
    VarSet,
    build_D,
    build_D0,
    build_D_prime,
    build_Dl,
    build_Dr,
    build_P,
    build_Q_l,
    build_Q_r,
    build_W,
)
from .search import (
    Bound,
    BoundCertificate,
    GapSurvey,
    LengthReport,
    assert_respects_bounds,
    certify_bounds,
    count_subspaces,
    enumerate_subspaces,
    gaussian_binomial,
    length_exhaustive,
    length_random,
    scan_gap_structure,
)
from .words import (
    SproutAnalysis,
    Word,
    catalan,
    enumerate_shapes,
    enumerate_words,
    evaluate,
    format_word,
    is_k_bounded,
    leaf,
    node,
    parse_word,
    sprout_analyses,
    step_sigma,
    subword_lengths,
    subwords,
    unit_word,
    word_count,
)

__version__ = "0.1.0"
