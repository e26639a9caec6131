"""The shared test corpus: presentations plus the checker verdicts each one
is expected to earn.  `implication_corpus` members also feed the
sufficient-condition => bounded-non-expanding sweeps.
"""

from __future__ import annotations

from fractions import Fraction

from starrep import complete, parse_presentation
from starrep.examples import make_stardouble, preset
from starrep.parser import Presentation


def engineered_expanding() -> Presentation:
    """Complete and symmetric, yet the normal form of u v* contains u u* for
    u > v; found by a targeted search over two-generator relation pairs."""
    return parse_presentation(
        """
generators: x, y;
order: y* > x* > y > x;
relations:
  y* x*^2 y + y* x* x y - x* x^2 y - y* x^2 y,
  y* x*^2 x - 2 y* x* x y + x* x^2 y
"""
    )


def ccr() -> Presentation:
    """One degree-preserving self-adjoint relation; normal ordering."""
    return parse_presentation("generators: x;\nrelations: x* x - x x* - 1")


# name -> (presentation builder, passing sufficient conditions, expects strict)
CORPUS = {
    "A_x2": (lambda: preset("A_x2"), ("kir", "appropriate"), True),
    "monomial-x3": (lambda: preset("monomial:xxx"), ("kir", "appropriate"), True),
    "monomial-xyx*": (lambda: preset("monomial:xyx*"), ("kir", "appropriate"), True),
    "uea-heisenberg": (lambda: preset("uea-heisenberg"), ("corollary",), False),
    "uea-sl2": (lambda: preset("uea-sl2"), ("corollary",), False),
    "wick": (lambda: preset("wick"), ("corollary", "appropriate"), True),
    "double-idempotent": (
        lambda: preset("stardouble:q q - q"),
        ("stardouble", "appropriate"),
        True,
    ),
    "double-t2": (lambda: preset("stardouble:t t"), ("stardouble", "kir"), True),
    # weakly non-expanding; d d* leaves the basis words whenever d ends starred
    "ccr": (lambda: ccr(), (), False),
}


def corpus_basis(name: str, cap: int = 8):
    builder, conditions, strict = CORPUS[name]
    pres = builder()
    return complete(pres.relations, cap), conditions, strict


def t3_completed(cap: int = 8):
    return complete(preset("T3").relations, cap)


def b4_completed(cap: int = 8):
    return complete(preset("B4").relations, cap)


def q4_completed(alpha=Fraction(0), cap: int = 8):
    return complete(preset("Q4", alpha=alpha).relations, cap)
