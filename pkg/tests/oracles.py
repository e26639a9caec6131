"""Independent oracles used to freeze expected values.

Everything here is deliberately written against plain tuples, Fractions and
dicts, not against the package's reduction engine, so that agreement between
the two is evidence rather than tautology.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def brute_overlaps(hf: tuple, hg: tuple) -> list:
    """All (x, y, z) with hf = x+y, hg = y+z, y nonempty and proper both sides."""
    out = []
    for k in range(1, min(len(hf), len(hg))):
        x, y = hf[:-k], hf[-k:]
        if hg[:k] == y:
            out.append((x, y, hg[k:]))
    return out


def brute_subword(inner: tuple, outer: tuple) -> bool:
    n = len(inner)
    return any(outer[p : p + n] == inner for p in range(len(outer) - n + 1))


def brute_bw(heads: list, letters: list, cap: int) -> set:
    """All words up to the cap containing no head, by exhaustive enumeration."""
    out = set()
    for n in range(cap + 1):
        for w in itertools.product(letters, repeat=n):
            if not any(brute_subword(tuple(h), w) for h in heads):
                out.add(w)
    return out


def fraction_det(rows: list) -> Fraction:
    """Plain Gaussian elimination determinant over Fractions."""
    a = [list(map(Fraction, r)) for r in rows]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv = None
        for r in range(k, n):
            if a[r][k] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for r in range(k + 1, n):
            f = a[r][k] * inv
            if f == 0:
                continue
            for c in range(k, n):
                a[r][c] -= f * a[k][c]
    return det


# -- complex-rational sparse linear algebra over words ---------------------------
#
# Vectors are dicts word -> (Fraction re, Fraction im).  Used for the ideal
# rank oracle: the span of all padded relations p*s*q up to a degree equals
# the span of one triangular row per excluded word, so the quotient dimension
# is pinned by pure linear algebra.


def _cadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _cneg(a):
    return (-a[0], -a[1])


def _cdiv(a, b):
    n = b[0] * b[0] + b[1] * b[1]
    return ((a[0] * b[0] + a[1] * b[1]) / n, (a[1] * b[0] - a[0] * b[1]) / n)


def vec_add_scaled(target: dict, src: dict, coeff) -> None:
    for w, c in src.items():
        s = _cadd(target.get(w, (Fraction(0), Fraction(0))), _cmul(coeff, c))
        if s == (0, 0):
            target.pop(w, None)
        else:
            target[w] = s


def pad_vector(rel: dict, p: tuple, q: tuple) -> dict:
    return {p + w + q: c for w, c in rel.items()}


def rank_oracle(relations: list, letters: list, cap: int, word_key) -> dict:
    """Dimension audit of span{p * rel * q : degree <= cap}.

    relations: list of dicts word -> (re, im).  Returns the per-degree count
    of excluded words and raises AssertionError if the span is larger than the
    triangular system built from one pivot row per reducible word (which would
    mean the surviving words are dependent in the quotient).
    """
    heads = []
    for rel in relations:
        h = max(rel, key=word_key)
        heads.append(h)

    words_by_deg: dict = {0: [()]}
    for d in range(1, cap + 1):
        words_by_deg[d] = [w + (g,) for w in words_by_deg[d - 1] for g in letters]
    all_words = [w for d in range(cap + 1) for w in words_by_deg[d]]

    reducible = [
        w for w in all_words if any(brute_subword(h, w) for h in heads)
    ]

    # one triangular row per reducible word: pick a factorization w = p h q
    pivots: dict = {}

    def reduce_vec(vec: dict) -> dict:
        vec = dict(vec)
        while True:
            cand = [w for w in vec if w in pivots]
            if not cand:
                return vec
            w = max(cand, key=word_key)
            row = pivots[w]
            coeff = _cdiv(vec[w], row[w])
            vec_add_scaled(vec, row, _cneg(coeff))
        return vec

    for w in sorted(reducible, key=word_key):
        placed = False
        for rel, h in zip(relations, heads):
            n = len(h)
            for p_len in range(len(w) - n + 1):
                if w[p_len : p_len + n] == h:
                    row = pad_vector(rel, w[:p_len], w[p_len + n :])
                    row = reduce_vec(row)
                    if row:
                        lead = max(row, key=word_key)
                        assert lead == w, (
                            "pivot row for %r reduced to lead %r" % (w, lead)
                        )
                        pivots[w] = row
                        placed = True
                    break
            if placed:
                break
        assert placed or w in pivots or True

    # every reducible word must own a pivot, or the triangular claim fails
    missing = [w for w in reducible if w not in pivots]
    assert not missing, f"no independent row for {missing[:3]}"

    # all other padded rows must reduce to zero against the triangular system
    for rel, h in zip(relations, heads):
        for d_pad in range(cap - len(h) + 1):
            for p_len in range(d_pad + 1):
                for p in words_by_deg[p_len]:
                    for q in words_by_deg[d_pad - p_len]:
                        row = reduce_vec(pad_vector(rel, p, q))
                        assert not row, (
                            "padded relation escapes the triangular span: "
                            f"p={p} q={q} residue words {sorted(row)[:3]}"
                        )

    counts: dict = {}
    red = set(reducible)
    for d in range(cap + 1):
        counts[d] = sum(1 for w in words_by_deg[d] if w not in red)
    return counts
