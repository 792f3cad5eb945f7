"""Decide, certify, and refute cyclic inequalities with exponent weights.

For a permutation sigma of {1, ..., n} and a real exponent k, the central
question is whether

    sum_i (x_i / x_{i+1})^k  >=  sum_i x_i / x_{sigma(i)}

holds for every positive vector x.  The answer is a sharp displacement
threshold (``classify``), witnessed constructively for rational k by an
exact rearrangement certificate (``witness``) and refuted outside the
admissible range by closed-form vectors (``refute``).  Numeric oracles
(``search``) and band-permutation counting (``count``) round out the
toolkit; ``cli`` wires everything into one command.
"""

from .classify import ExponentVerdict, admissible_exponents, holds, violating_indices
from .count import (
    BandMatrix,
    LucasRow,
    band_matrix,
    brute_force_count,
    count_band_permutations,
    lucas,
    lucas_identity_report,
)
from .errors import (
    BadDimension,
    BudgetExceeded,
    CyclineqError,
    DimensionMismatch,
    IndexOutOfRange,
    IrrationalExponent,
    MatchingFailed,
    NonPositiveInput,
    NotABijection,
    NotAdmissible,
    NotRefutable,
)
from .perm import (
    CycleDecomposition,
    Permutation,
    backward_displacement,
    cycle_decomposition,
    forward_displacement,
    identity_permutation,
    make_permutation,
    max_backward_displacement,
    max_forward_displacement,
    shift_permutation,
    wrap_index,
)
from .refute import (
    CounterexampleReport,
    refute_main,
    refute_main_negative_k,
    refute_main_positive_k,
    refute_nesbitt_exponent,
    refute_shapiro_type,
)
from .search import (
    GapReport,
    InequalityInstance,
    InequalityKind,
    SearchConfig,
    evaluate,
    exponent_monotonicity_check,
    gap_and_gradient,
    grid_oracle,
    main_instance,
    minimize_gap,
    nesbitt_classic_instance,
    nesbitt_exponent_instance,
    shapiro_exponent_instance,
    shapiro_type_instance,
    shift_instance,
    sweep_exponent,
)
from .witness import (
    CheckResult,
    CyclicBlock,
    DecompositionCertificate,
    RationalExponent,
    RatioVector,
    as_rational,
    block_alphabet_counts,
    build_certificate,
    certificate_sides,
    check_certificate,
    cyclic_blocks,
    is_cyclically_constructed,
    ratio_rewrite,
)

__version__ = "0.1.0"
