"""Free *-algebra arithmetic: generators with involution, words, deglex order,
and polynomials with exact coefficients.

Generators are encoded as small ints: generator k (0-based) is `2*k` and its
starred partner is `2*k + 1`, so the involution on letters is `g ^ 1`.  Words
are tuples of letters; the empty tuple is the unit word.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .scalars import QI, SCALAR_ONE, Scalar

Word = tuple  # tuple[int, ...]

EMPTY_WORD: Word = ()


def star_gen(g: int) -> int:
    return g ^ 1


def star_word(w: Word) -> Word:
    """Reverse the word and star each letter (anti-multiplicative involution)."""
    return tuple(g ^ 1 for g in reversed(w))


def is_subword(inner: Word, outer: Word) -> bool:
    n, m = len(inner), len(outer)
    if n > m:
        return False
    return any(outer[p : p + n] == inner for p in range(m - n + 1))


def subword_positions(inner: Word, outer: Word) -> list:
    n = len(inner)
    return [p for p in range(len(outer) - n + 1) if outer[p : p + n] == inner]


class FreeStarAlgebra:
    """Context object: generator names, the order on letters, the parameter.

    The order is deglex: words of greater length are greater, words of equal
    length compare lexicographically by the letter order.  The default letter
    order puts every starred generator above every unstarred one:
    x1* > x2* > ... > xn* > x1 > ... > xn.
    """

    def __init__(
        self,
        generators: Sequence[str],
        order: Optional[Sequence[str]] = None,
        parameter: Optional[str] = None,
    ):
        names = list(generators)
        if not names:
            raise ValueError("at least one generator is required")
        seen = set()
        for nm in names:
            if not nm.isidentifier():
                raise ValueError(f"invalid generator name {nm!r}")
            if nm == "i":
                raise ValueError("'i' is reserved for the imaginary unit")
            if nm in seen:
                raise ValueError(f"duplicate generator name {nm!r}")
            seen.add(nm)
        if parameter is not None:
            if not parameter.isidentifier() or parameter == "i":
                raise ValueError(f"invalid parameter name {parameter!r}")
            if parameter in seen:
                raise ValueError(f"parameter {parameter!r} collides with a generator")

        self.generators = names
        self.n = len(names)
        self.parameter = parameter

        decorated = [nm + "*" for nm in names] + names
        if order is None:
            order_names = decorated
        else:
            order_names = list(order)
            if sorted(order_names) != sorted(decorated):
                raise ValueError(
                    "order must list every generator and its star exactly once"
                )
        self.order_names = order_names  # descending

        self._id_by_name = {}
        for k, nm in enumerate(names):
            self._id_by_name[nm] = 2 * k
            self._id_by_name[nm + "*"] = 2 * k + 1
        # rank: larger value = greater letter
        self._rank = [0] * (2 * self.n)
        for pos, nm in enumerate(order_names):
            self._rank[self._id_by_name[nm]] = len(order_names) - pos

    # -- letters and names ---------------------------------------------

    def gen_id(self, name: str) -> int:
        try:
            return self._id_by_name[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def gen_name(self, g: int) -> str:
        base = self.generators[g >> 1]
        return base + "*" if g & 1 else base

    def letters(self) -> range:
        return range(2 * self.n)

    # -- word order ------------------------------------------------------

    def word_key(self, w: Word):
        rank = self._rank
        return (len(w), tuple(rank[g] for g in w))

    def compare_words(self, u: Word, v: Word) -> int:
        ku, kv = self.word_key(u), self.word_key(v)
        return (ku > kv) - (ku < kv)

    def word_text(self, w: Word) -> str:
        if not w:
            return "1"
        return " ".join(self.gen_name(g) for g in w)

    def word_from_text(self, text: str) -> Word:
        text = text.strip()
        if text == "1" or text == "":
            return EMPTY_WORD
        return tuple(self.gen_id(t) for t in text.split())

    # -- polynomial constructors ------------------------------------------

    def poly(self, terms: dict) -> "Poly":
        return Poly(self, terms)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {EMPTY_WORD: SCALAR_ONE})

    def scalar_poly(self, value) -> "Poly":
        return Poly(self, {EMPTY_WORD: Scalar.coerce(value)})

    def word_poly(self, w: Word, coeff=SCALAR_ONE) -> "Poly":
        return Poly(self, {tuple(w): Scalar.coerce(coeff)})

    def gen_poly(self, name: str) -> "Poly":
        return self.word_poly((self.gen_id(name),))

    def same_context(self, other: "FreeStarAlgebra") -> bool:
        return (
            self.generators == other.generators
            and self.order_names == other.order_names
            and self.parameter == other.parameter
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeStarAlgebra):
            return NotImplemented
        return self.same_context(other)

    def __hash__(self):
        return hash((tuple(self.generators), tuple(self.order_names), self.parameter))

    def __repr__(self):
        return f"FreeStarAlgebra({', '.join(self.generators)})"


class Poly:
    """A finite Word -> Scalar map; the universal element of the free *-algebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: FreeStarAlgebra, terms: dict):
        self.alg = alg
        cleaned = {}
        for w, c in terms.items():
            c = Scalar.coerce(c)
            if not c.is_zero():
                cleaned[tuple(w)] = c
        self.terms = cleaned

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def support(self) -> list:
        return sorted(self.terms, key=self.alg.word_key)

    def coefficient(self, w: Word) -> Scalar:
        return self.terms.get(tuple(w), Scalar.zero())

    def leading(self):
        """(greatest word, its coefficient); undefined for the zero element."""
        if not self.terms:
            raise ValueError("the zero element has no leading word")
        w = max(self.terms, key=self.alg.word_key)
        return w, self.terms[w]

    def leading_word(self) -> Word:
        return self.leading()[0]

    def leading_coeff(self) -> Scalar:
        return self.leading()[1]

    def degree(self) -> int:
        return len(self.leading_word())

    def bar(self) -> "Poly":
        """leading word minus the monic rescaling: f = lc * (head - bar(f))."""
        w, c = self.leading()
        out = dict(self.monic().terms)
        out.pop(w)
        return Poly(self.alg, {u: -v for u, v in out.items()})

    def monic(self) -> "Poly":
        w, c = self.leading()
        if c.is_one():
            return self
        return Poly(self.alg, {u: v / c for u, v in self.terms.items()})

    def is_monic(self) -> bool:
        return self.leading_coeff().is_one()

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.alg is not other.alg and not self.alg.same_context(other.alg):
            raise ValueError("elements belong to different algebras")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, Scalar.zero()) + c
            if s.is_zero():
                terms.pop(w, None)
            else:
                terms[w] = s
        out = Poly.__new__(Poly)
        out.alg, out.terms = self.alg, terms
        return out

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        out = Poly.__new__(Poly)
        out.alg = self.alg
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        terms: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = terms.get(w, Scalar.zero()) + c1 * c2
                if s.is_zero():
                    terms.pop(w, None)
                else:
                    terms[w] = s
        out = Poly.__new__(Poly)
        out.alg, out.terms = self.alg, terms
        return out

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, value) -> "Poly":
        c = Scalar.coerce(value)
        if c.is_zero():
            return self.alg.zero()
        out = Poly.__new__(Poly)
        out.alg = self.alg
        out.terms = {w: v * c for w, v in self.terms.items()}
        return out

    def star(self) -> "Poly":
        """Conjugate-linear anti-homomorphism: coefficients conjugate, words reverse-star."""
        out = Poly.__new__(Poly)
        out.alg = self.alg
        out.terms = {star_word(w): c.conjugate() for w, c in self.terms.items()}
        return out

    def substitute_parameter(self, value) -> "Poly":
        v = Fraction(value)
        return Poly(self.alg, {w: c.evaluate(v) for w, c in self.terms.items()})

    # -- comparison and text ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.alg.same_context(other.alg) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pname = self.alg.parameter or "a"
        parts = []
        for w in sorted(self.terms, key=self.alg.word_key, reverse=True):
            c = self.terms[w]
            wt = self.alg.word_text(w)
            if c.is_simple_term():
                ((neg, mag),) = [c._pieces(pname)[0]]
                if w:
                    body = f"{mag} {wt}" if mag != "1" else wt
                else:
                    body = mag
            else:
                neg = False
                body = f"({c.to_text(pname)})" if w == EMPTY_WORD else f"({c.to_text(pname)}) {wt}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return self.to_text()


# -- module-level operation names ------------------------------------------


def word_compare(u: Word, v: Word, alg: FreeStarAlgebra) -> int:
    """-1, 0 or 1: deglex comparison under the algebra's letter order."""
    return alg.compare_words(u, v)


def star_poly(f: Poly) -> Poly:
    return f.star()


def leading(f: Poly):
    return f.leading()


def bar(f: Poly) -> Poly:
    return f.bar()


def words_of_length(alg: FreeStarAlgebra, length: int) -> Iterable[Word]:
    """All words of exactly the given length, in no particular order."""
    letters = list(alg.letters())
    current = [EMPTY_WORD]
    for _ in range(length):
        current = [w + (g,) for w in current for g in letters]
    yield from current
