"""Exact computation in the Thompson-Higman monoids of right-ideal morphisms.

Elements are finite tables over prefix codes; the package provides the
monoid product with canonical forms, normalization, submonoid and
Green's-relation classification, constructive factorization over the
explicit finite generating set, and a polynomial-time word-problem
decider built on acyclic-DFA inverse images, validated against a
pointwise brute-force oracle.
"""

from .codes import (
    CodeKind,
    NotASubidealError,
    PrefixCode,
    code_kind,
    equalize_sizes,
    essentially_equal,
    ideal_intersection,
    is_essential_in,
    make_q_code,
    saturate,
)
from .morphisms import Morphism, MorphismClass, NotInjectiveError, compose, multiply
from .structure import (
    DClassIndex,
    GenWord,
    GreenLink,
    Token,
    UnsupportedAlphabetError,
    all_to_zero_word,
    d_class_index,
    d_witness,
    deficiency_split,
    evaluate,
    factor,
    factor_pieces,
    inline_token,
    named_token,
    parse_genword,
    standard_generators,
    tau,
    tau_token,
)
from .wordproblem import (
    AcyclicDfa,
    BoundTooSmallError,
    PreconditionError,
    ResourceLimitError,
    covering_image_set,
    dfa_equivalent,
    dfa_for_word,
    enumerate_language,
    imc_of_genword,
    inverse_image_dfa,
    iterated_inverse_image_dfa,
    resolve_genword,
    word_problem_bruteforce,
    word_problem_poly,
)
from .words import EMPTY_WORD_TOKEN, letter, parse_word, word_str

__version__ = "0.1.0"

__all__ = [
    "AcyclicDfa",
    "BoundTooSmallError",
    "CodeKind",
    "DClassIndex",
    "EMPTY_WORD_TOKEN",
    "GenWord",
    "GreenLink",
    "Morphism",
    "MorphismClass",
    "NotASubidealError",
    "NotInjectiveError",
    "PrefixCode",
    "PreconditionError",
    "ResourceLimitError",
    "Token",
    "UnsupportedAlphabetError",
    "all_to_zero_word",
    "code_kind",
    "compose",
    "covering_image_set",
    "d_class_index",
    "d_witness",
    "deficiency_split",
    "dfa_equivalent",
    "dfa_for_word",
    "enumerate_language",
    "equalize_sizes",
    "essentially_equal",
    "evaluate",
    "factor",
    "factor_pieces",
    "ideal_intersection",
    "imc_of_genword",
    "inline_token",
    "inverse_image_dfa",
    "is_essential_in",
    "iterated_inverse_image_dfa",
    "letter",
    "make_q_code",
    "multiply",
    "named_token",
    "parse_genword",
    "parse_word",
    "resolve_genword",
    "saturate",
    "standard_generators",
    "tau",
    "tau_token",
    "word_problem_bruteforce",
    "word_problem_poly",
    "word_str",
]
