"""
Garside calculus for left-cancellative monoids and categories.

Build a context from a presentation (PresentedContext), a finite partial
product table (GermContext / germ_from_groupoid), or the catalog; then
compute greedy and Δ-normal forms, decide the word problem via subword
reversing or rewriting, take lcm/gcd in the divisor lattice, and decide
conjugacy through sliding-circuit sets.  The `gk` command exposes the same
operations over two small text formats.
"""

from .bounded import (
    DeltaNormal,
    GarsideMap,
    Unbounded,
    build_garside_map,
    delta_normalize,
    gcd,
    lcm_left,
    lcm_right,
)
from .config import DEFAULT_LIMITS, Limits
from .conjugacy import (
    ConjugacyOrbitNode,
    No,
    SlidingCircuitSet,
    Yes,
    are_conjugate,
    conj,
    cycling,
    cyclic_sliding,
    decycling,
    preferred_prefix,
    slide_to_circuit,
    sliding_circuit_set,
)
from .contexts import PresentedContext
from .core import (
    CategoryContext,
    Generator,
    ObjectId,
    Presentation,
    SignedWord,
    Word,
    concat,
    concat_signed,
    empty_word,
    free_reduce,
    mirror_signed,
    mirror_word,
)
from .errors import (
    CompositionError,
    ExplosionGuard,
    GarsideError,
    HeadUndefined,
    INCONCLUSIVE,
    NotADivisor,
    ParseError,
    UnsupportedError,
    ValidationError,
)
from .garside import (
    GarsideFamily,
    NormalDecomposition,
    SymmetricNormal,
    Verdict,
    is_garside_family,
    left_fraction,
    symmetric_normalize,
    word_problem,
)
from .germs import (
    FiniteGroup,
    Germ,
    GermContext,
    GermElement,
    GermWitness,
    Valid,
    Violation,
    germ_category,
    germ_from_groupoid,
    is_garside_germ,
    validate_germ,
)
from .reversing import (
    Complement,
    Complete,
    CounterExample,
    Diverged,
    NoCommonMultiple,
    Reversed,
    Stuck,
    check_cube_condition,
    extract_complement,
    reverse,
    reverse_word_pair,
    reverses_to_empty,
    word_complement,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # core
    "CategoryContext",
    "Generator",
    "ObjectId",
    "Presentation",
    "SignedWord",
    "Word",
    "concat",
    "concat_signed",
    "empty_word",
    "free_reduce",
    "mirror_signed",
    "mirror_word",
    # config
    "DEFAULT_LIMITS",
    "Limits",
    # errors
    "CompositionError",
    "ExplosionGuard",
    "GarsideError",
    "HeadUndefined",
    "INCONCLUSIVE",
    "NotADivisor",
    "ParseError",
    "UnsupportedError",
    "ValidationError",
    # contexts
    "PresentedContext",
    # reversing
    "Complement",
    "Complete",
    "CounterExample",
    "Diverged",
    "NoCommonMultiple",
    "Reversed",
    "Stuck",
    "check_cube_condition",
    "extract_complement",
    "reverse",
    "reverse_word_pair",
    "reverses_to_empty",
    "word_complement",
    # germs
    "FiniteGroup",
    "Germ",
    "GermContext",
    "GermElement",
    "GermWitness",
    "Valid",
    "Violation",
    "germ_category",
    "germ_from_groupoid",
    "is_garside_germ",
    "validate_germ",
    # garside families
    "GarsideFamily",
    "NormalDecomposition",
    "SymmetricNormal",
    "Verdict",
    "is_garside_family",
    "left_fraction",
    "symmetric_normalize",
    "word_problem",
    # bounded structure
    "DeltaNormal",
    "GarsideMap",
    "Unbounded",
    "build_garside_map",
    "delta_normalize",
    "gcd",
    "lcm_left",
    "lcm_right",
    # conjugacy
    "ConjugacyOrbitNode",
    "No",
    "SlidingCircuitSet",
    "Yes",
    "are_conjugate",
    "conj",
    "cycling",
    "cyclic_sliding",
    "decycling",
    "preferred_prefix",
    "slide_to_circuit",
    "sliding_circuit_set",
]
