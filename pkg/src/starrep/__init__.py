"""starrep: exact noncommutative Gröbner bases for *-algebras with
representability checks and certified pre-Hilbert representations."""

from .freealg import (
    EMPTY_WORD,
    FreeStarAlgebra,
    Poly,
    bar,
    leading,
    star_poly,
    star_word,
    word_compare,
)
from .groebner import (
    BWEnumeration,
    Composition,
    GroebnerBasis,
    complete,
    diamond,
    enumerate_bw,
    find_compositions,
    ideal_member,
    normal_form,
    reduce_with_strategy,
)
from .parser import (
    Presentation,
    PresentationError,
    parse_expression,
    parse_presentation,
    parse_presentation_json,
    presentation_to_json,
    print_presentation,
)
from .scalars import QI, Scalar

__version__ = "0.1.0"

__all__ = [
    "EMPTY_WORD",
    "FreeStarAlgebra",
    "Poly",
    "QI",
    "Scalar",
    "bar",
    "leading",
    "star_poly",
    "star_word",
    "word_compare",
    "BWEnumeration",
    "Composition",
    "GroebnerBasis",
    "complete",
    "diamond",
    "enumerate_bw",
    "find_compositions",
    "ideal_member",
    "normal_form",
    "reduce_with_strategy",
    "Presentation",
    "PresentationError",
    "parse_expression",
    "parse_presentation",
    "parse_presentation_json",
    "presentation_to_json",
    "print_presentation",
]
