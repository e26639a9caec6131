"""The sesquilinear form on basis words, inductive weight selection, and exact
positive-definiteness certificates.

The form is linear in the first slot and conjugate-linear in the second.  Its
Gram matrix entry at (i, j) is the weighted sum of half-words of positive
words in the normal form of u v*, with the diagonal set directly to the
weight of the word.  Weights are chosen row by row so that every leading
principal minor lands at 1 + |p| + p >= 1; all arithmetic stays exact, so the
minors are a certificate rather than an estimate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .freealg import FreeStarAlgebra, Poly, Word, star_word
from .groebner import BWEnumeration, GroebnerBasis
from .scalars import QI, QI_ONE, QI_ZERO, Scalar
from .starcheck import positive_split


class FormNotHermitian(ValueError):
    """The assembled form failed conjugate symmetry; carries the offending pair."""

    def __init__(self, i: int, j: int, gij: QI, gji: QI):
        self.pair = (i, j)
        self.values = (gij, gji)
        super().__init__(
            f"form is not Hermitian at ({i}, {j}): {gij!r} vs conj {gji!r}"
        )


class WeightUnavailable(ValueError):
    """An entry needed a weight index at or beyond the current row.

    Under the non-expanding inequality every contributing half-word sits
    strictly below the larger argument, so this error is evidence against
    that hypothesis for the algebra at hand.
    """

    def __init__(self, index: int, limit: int, half: str):
        self.index = index
        self.limit = limit
        self.half = half
        super().__init__(
            f"weight {index} for half-word {half!r} requested before it was chosen "
            f"(only {limit} available)"
        )


def half_word(w: Word) -> Optional[Word]:
    """The u with w = u star(u), when that form exists (the empty word counts)."""
    return positive_split(tuple(w))


def positive_part(f: Poly) -> list:
    """(half-word, coefficient) for every positive word in the support."""
    out = []
    for w, c in f.terms.items():
        h = positive_split(w)
        if h is not None:
            out.append((h, c))
    return out


def gram_entry(
    u: Word,
    v: Word,
    gb: GroebnerBasis,
    weights: Sequence[Fraction],
    phi: dict,
) -> QI:
    """The form at basis words (u, v): weights[phi(u)] on the diagonal, else the
    weighted half-word sum of the normal form of u v*.  `weights` holds the
    already-chosen values, 1-based via `phi`."""
    alg = gb.algebra
    u, v = tuple(u), tuple(v)
    if u == v:
        idx = phi[u]
        if idx > len(weights):
            raise WeightUnavailable(idx, len(weights), alg.word_text(u))
        return QI(weights[idx - 1])
    r = gb.reduce(alg.word_poly(u + star_word(v)))
    total = QI_ZERO
    limit = max(phi[u], phi[v])
    for h, c in positive_part(r):
        if h not in phi:
            raise WeightUnavailable(-1, len(weights), alg.word_text(h))
        idx = phi[h]
        if idx >= limit or idx > len(weights):
            raise WeightUnavailable(idx, min(limit - 1, len(weights)), alg.word_text(h))
        total = total + c.constant() * QI(weights[idx - 1])
    return total


@dataclass
class WeightSequence:
    values: list  # positive Fractions, 1-based semantics
    rule: str = "minor-forcing: a_m = (1 + |p_m|) / minor_{m-1}"

    def __len__(self):
        return len(self.values)


@dataclass
class GramMatrix:
    words: list  # enumeration order
    entries: list  # N x N of QI
    weights: WeightSequence
    minors: list = field(default_factory=list)  # Fractions, leading principal
    enumeration_monotone: bool = True

    @property
    def size(self) -> int:
        return len(self.words)

    def entry(self, i: int, j: int) -> QI:
        return self.entries[i - 1][j - 1]

    def is_hermitian(self) -> bool:
        n = self.size
        return all(
            self.entries[i][j] == self.entries[j][i].conjugate()
            for i in range(n)
            for j in range(i, n)
        )

    def to_json_obj(self, alg: FreeStarAlgebra) -> dict:
        sparse = []
        for i in range(self.size):
            for j in range(self.size):
                c = self.entries[i][j]
                if not c.is_zero():
                    sparse.append([i + 1, j + 1, Scalar.from_qi(c).to_text()])
        return {
            "enumeration": [alg.word_text(w) for w in self.words],
            "enumeration_monotone": self.enumeration_monotone,
            "weights": [str(v) for v in self.weights.values],
            "weight_rule": self.weights.rule,
            "minors": [str(m) for m in self.minors],
            "entries": sparse,
        }


def det_exact(matrix: Sequence[Sequence[QI]]) -> QI:
    """Fraction-free (Bareiss) determinant of an exact matrix."""
    n = len(matrix)
    if n == 0:
        return QI_ONE
    a = [list(row) for row in matrix]
    sign = 1
    prev = QI_ONE
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return QI_ZERO
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) / prev
            a[i][k] = QI_ZERO
        prev = pivot
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def choose_weights(
    gb: GroebnerBasis, bw: BWEnumeration, n: Optional[int] = None
) -> tuple:
    """Pick the weight for each basis word so every leading principal minor is
    at least 1, assembling the Gram matrix row by row.

    Row m only needs weights below m; that availability is exactly the
    non-expanding inequality and is asserted at runtime.  Both triangles are
    computed independently and conjugate symmetry is checked, never assumed.
    """
    n = len(bw.words) if n is None else n
    if n > len(bw.words):
        raise ValueError(f"requested size {n} exceeds the enumeration ({len(bw.words)})")
    words = bw.words[:n]
    phi = {w: k + 1 for k, w in enumerate(words)}

    weights: list = []
    entries = [[QI_ZERO] * n for _ in range(n)]
    minors: list = []
    prev_minor = Fraction(1)

    for m in range(1, n + 1):
        for i in range(1, m):
            gim = gram_entry(words[i - 1], words[m - 1], gb, weights, phi)
            gmi = gram_entry(words[m - 1], words[i - 1], gb, weights, phi)
            if gim != gmi.conjugate():
                raise FormNotHermitian(i, m, gim, gmi)
            entries[i - 1][m - 1] = gim
            entries[m - 1][i - 1] = gmi
        # p_m: the m x m minor with the yet-unchosen diagonal entry set to 0
        block = [row[:m] for row in entries[:m]]
        block[m - 1][m - 1] = QI_ZERO
        p = det_exact(block)
        if not p.is_real():
            raise FormNotHermitian(m, m, p, p)
        p_m = p.re
        a_m = (1 + abs(p_m)) / prev_minor
        weights.append(a_m)
        entries[m - 1][m - 1] = QI(a_m)
        minor = det_exact([row[:m] for row in entries[:m]])
        if not minor.is_real():
            raise FormNotHermitian(m, m, minor, minor)
        minor_m = minor.re
        assert minor_m == prev_minor * a_m + p_m, "minor expansion identity failed"
        assert minor_m >= 1, "weight rule must force the minor to at least 1"
        minors.append(minor_m)
        prev_minor = minor_m

    gram = GramMatrix(words, entries, WeightSequence(weights), minors)
    return gram.weights, gram


def assemble_gram(
    gb: GroebnerBasis,
    words: Sequence[Word],
    weight_of: Callable[[Word], Fraction],
    enumeration_monotone: bool = True,
) -> GramMatrix:
    """Gram matrix for a given weight functional (weight per half-word).

    Used when the weights come from elsewhere, for instance moment sequences;
    no inductive availability is needed because the functional is total.
    """
    alg = gb.algebra
    words = [tuple(w) for w in words]
    n = len(words)
    entries = [[QI_ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                entries[i][j] = QI(weight_of(words[i]))
                continue
            r = gb.reduce(alg.word_poly(words[i] + star_word(words[j])))
            total = QI_ZERO
            for h, c in positive_part(r):
                total = total + c.constant() * QI(weight_of(h))
            entries[i][j] = total
    for i in range(n):
        for j in range(i + 1, n):
            if entries[i][j] != entries[j][i].conjugate():
                raise FormNotHermitian(i + 1, j + 1, entries[i][j], entries[j][i])
    values = [weight_of(w) for w in words]
    return GramMatrix(
        words,
        entries,
        WeightSequence(values, rule="externally supplied functional"),
        minors=[],
        enumeration_monotone=enumeration_monotone,
    )


def verify_positive(gram: GramMatrix) -> tuple:
    """(is positive definite, all leading principal minors) by exact elimination."""
    if not gram.is_hermitian():
        raise FormNotHermitian(0, 0, QI_ZERO, QI_ZERO)
    minors = []
    for m in range(1, gram.size + 1):
        d = det_exact([row[:m] for row in gram.entries[:m]])
        if not d.is_real():
            raise FormNotHermitian(m, m, d, d)
        minors.append(d.re)
    gram.minors = minors
    return all(d > 0 for d in minors), minors


def hermitian_form(gram: GramMatrix, index: dict, p: Poly, q: Poly) -> QI:
    """<p, q> for elements supported on the enumerated words; linear in p,
    conjugate-linear in q."""
    total = QI_ZERO
    for wp, cp in p.terms.items():
        i = index[wp]
        for wq, cq in q.terms.items():
            j = index[wq]
            total = total + cp.constant() * cq.constant().conjugate() * gram.entry(i, j)
    return total
