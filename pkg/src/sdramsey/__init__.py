"""Connection calculus, Hales-Jewett word machinery, and exhaustive Ramsey
witness search at desk scale."""

from .core import (
    ChoiceInjection,
    Connection,
    MODE_CONNECTIONS,
    MODE_INJECTIONS,
    MODE_SURJECTIONS,
    RigidSurjection,
    SpaceSpec,
    ValidationReport,
    Violation,
    compose,
    compose_surjections,
    connection,
    connection_from_json,
    connection_to_json,
    empty_connection,
    enumerate_space,
    format_connection,
    identity_connection,
    initial_segments,
    is_initial_segment,
    nth_initial_segment,
    nth_segment_set,
    parse_connection,
    reduct_witness,
    stirling2,
    validate_connection,
    with_least_choice,
)
from .engine import BACKEND, DEFAULT_NODE_BUDGET, backend_name, find_bad_assignment
from .errors import (
    BudgetExceededError,
    DomainError,
    EnumerationGuardError,
    FrozenWitnessInvalidError,
    FusionIncoherentError,
    InputError,
    InvariantError,
    NotInRangeError,
)
from .search import (
    Coloring,
    CopyEdge,
    CopyFamily,
    WitnessResult,
    coloring_to_json,
    copy_family,
    find_bad_coloring,
    find_mono_copy,
    min_witness_n,
)
from .words import (
    Decomposition,
    VariableWord,
    Word,
    WordSpace,
    classify,
    enumerate_lines,
    hj_min_n,
    span_membership,
    substitute,
)
from .maps import (
    AlphabetShift,
    absorb_shift,
    apply_shift,
    canonical_projection,
    cylinder_map,
    extend_shift,
    freeze_below,
    fuse,
    left_words_to_surjection,
    word_to_zero_segment,
    zero_segment_to_word,
)
from .axioms import (
    ApproximationRecord,
    AxiomsReport,
    ClauseReport,
    approximate,
    check_axioms,
    fin_reducts,
    verify_a4_instance,
)

__version__ = "0.1.0"
