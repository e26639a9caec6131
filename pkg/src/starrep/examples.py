"""Built-in presentations and the special studies they support: monomial
algebras, the rank-one nilpotent model with its moment weights and Hankel
blocks, enveloping algebras of Lie algebras, Wick-type relation systems,
star-doubles, and the idempotent/tripotent parameter families.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence

from .freealg import EMPTY_WORD, FreeStarAlgebra, Poly, Word, star_word
from .gram import GramMatrix, assemble_gram, det_exact, verify_positive
from .groebner import GroebnerBasis, complete
from .parser import Presentation, parse_expression, parse_presentation
from .rep import norm_estimate, regular_matrix
from .scalars import QI, QI_ZERO, Scalar


# -- preset catalogue ---------------------------------------------------------


def _a_x2_text() -> str:
    return "generators: x;\nrelations: x^2, x*^2"


def _t3_text() -> str:
    return (
        "generators: q1, q2;\n"
        "order: q2* > q1* > q2 > q1;\n"
        "parameters: a;\n"
        "relations:\n"
        "  q1^3 - q1,\n"
        "  q2^3 - q2,\n"
        "  (a - q1 - q2)^3 - (a - q1 - q2)"
    )


def _b4_text() -> str:
    return (
        "generators: q1, q2, q3;\n"
        "order: q3* > q2* > q1* > q3 > q2 > q1;\n"
        "parameters: a;\n"
        "relations:\n"
        "  q1^2 - q1,\n"
        "  q2^2 - q2,\n"
        "  q3^2 - q3,\n"
        "  (a - q1 - q2 - q3)^2 - (a - q1 - q2 - q3)"
    )


def _q4_text() -> str:
    return (
        "generators: q1, q2, q3, q4;\n"
        "order: q4* > q3* > q2* > q1* > q4 > q3 > q2 > q1;\n"
        "parameters: a;\n"
        "relations:\n"
        "  q1^2 - q1, q2^2 - q2, q3^2 - q3, q4^2 - q4,\n"
        "  q1 + q2 + q3 + q4 - a,\n"
        "  q1*^2 - q1*, q2*^2 - q2*, q3*^2 - q3*, q4*^2 - q4*,\n"
        "  q1* + q2* + q3* + q4* - a"
    )


def _uea_heisenberg_text() -> str:
    return (
        "generators: e1, e2, e3;\n"
        "relations:\n"
        "  e1 e2 - e2 e1 - e3,\n"
        "  e1 e3 - e3 e1,\n"
        "  e2 e3 - e3 e2,\n"
        "  e1* + e1, e2* + e2, e3* + e3"
    )


def _uea_sl2_text() -> str:
    # brackets [e1,e2] = e3, [e1,e3] = -2 e1, [e2,e3] = 2 e2
    return (
        "generators: e1, e2, e3;\n"
        "relations:\n"
        "  e1 e2 - e2 e1 - e3,\n"
        "  e1 e3 - e3 e1 + 2 e1,\n"
        "  e2 e3 - e3 e2 - 2 e2,\n"
        "  e1* + e1, e2* + e2, e3* + e3"
    )


def _monomial_words(payload: str) -> str:
    """Compact word list like 'xyx*,xy*x*': single-letter generators, postfix
    stars.  The relation set is symmetrized by adding the starred words."""
    if not payload:
        raise ValueError("monomial preset needs a word list, e.g. monomial:xyx*")
    words = [w.strip() for w in payload.split(",") if w.strip()]
    letters: list = []
    spelled = []
    for raw in words:
        out = []
        k = 0
        while k < len(raw):
            ch = raw[k]
            if not ch.isalpha():
                raise ValueError(f"unexpected character {ch!r} in monomial word {raw!r}")
            if ch not in letters:
                letters.append(ch)
            if k + 1 < len(raw) and raw[k + 1] == "*":
                out.append(ch + "*")
                k += 2
            else:
                out.append(ch)
                k += 1
        spelled.append(" ".join(out))
    alg = FreeStarAlgebra(sorted(letters))
    rels = [parse_expression(s, alg) for s in spelled]
    symmetrized = list(rels)
    for r in rels:
        rs = r.star().monic()
        if rs not in symmetrized:
            symmetrized.append(rs)
    return Presentation(alg, symmetrized, {"preset": "monomial", "words": words})


def wick_presentation(n: int, tensor: Dict[tuple, Scalar]) -> Presentation:
    """Relations a_i* a_j -> sum of T[(i,j,k,l)] a_l a_k* for i != j, k != l.

    Requires the Hermitian symmetry T[(i,j,k,l)] = conj(T[(j,i,l,k)]).
    """
    for (i, j, k, l), c in tensor.items():
        if i == j or k == l:
            raise ValueError("tensor indices need i != j and k != l")
        mirror = tensor.get((j, i, l, k), Scalar.zero())
        if mirror != c.conjugate():
            raise ValueError(
                f"tensor breaks the required symmetry at {(i, j, k, l)}: "
                f"{c} vs conj {mirror}"
            )
    names = [f"a{k}" for k in range(1, n + 1)]
    alg = FreeStarAlgebra(names)
    rels = []
    pairs = sorted({(i, j) for (i, j, _, _) in tensor})
    for i, j in pairs:
        lead = alg.gen_poly(f"a{i}*") * alg.gen_poly(f"a{j}")
        tail = alg.zero()
        for (ii, jj, k, l), c in sorted(tensor.items()):
            if (ii, jj) != (i, j):
                continue
            tail = tail + alg.gen_poly(f"a{l}") * alg.gen_poly(f"a{k}*") * c
        rels.append(lead - tail)
    return Presentation(alg, rels, {"preset": "wick", "n": n})


def _wick_default(payload: str) -> Presentation:
    # two generators; payload "t1,t2" gives T[(1,2,1,2)] and T[(1,2,2,1)]
    probe = FreeStarAlgebra(["t"])  # scalar-only parsing context
    if payload:
        parts = payload.split(",")
        if len(parts) != 2:
            raise ValueError("wick preset takes two coefficients, e.g. wick:1/2 i,1/3")
        vals = []
        for p in parts:
            poly = parse_expression(p, probe)
            if set(poly.terms) - {EMPTY_WORD}:
                raise ValueError(f"wick coefficient {p!r} is not a scalar")
            vals.append(poly.coefficient(EMPTY_WORD))
        t1, t2 = vals
    else:
        t1 = Scalar.from_qi(QI(0, Fraction(1, 2)))
        t2 = Scalar.from_rational(Fraction(1, 3))
    tensor = {
        (1, 2, 1, 2): t1,
        (1, 2, 2, 1): t2,
        (2, 1, 2, 1): t1.conjugate(),
        (2, 1, 1, 2): t2.conjugate(),
    }
    return wick_presentation(2, tensor)


def make_stardouble(source: Presentation) -> Presentation:
    """The doubled presentation: the input relations plus their stars.

    The input must not mention starred letters; the doubled order mirrors the
    plain order onto the starred half.
    """
    alg = source.algebra
    for r in source.relations:
        for w in r.terms:
            if any(g & 1 for g in w):
                raise ValueError(
                    f"star-double input mentions a starred letter in {r.to_text()}"
                )
    doubled = list(source.relations)
    for r in source.relations:
        rs = r.star().monic()
        if rs not in doubled:
            doubled.append(rs)
    meta = dict(source.meta)
    meta["stardouble"] = True
    return Presentation(alg, doubled, meta)


def _stardouble_payload(payload: str) -> Presentation:
    if not payload:
        raise ValueError("stardouble preset needs relations, e.g. 'stardouble:q q - q'")
    names = sorted({ch for ch in payload if ch.isalpha() and ch != "i"})
    alg = FreeStarAlgebra(names)
    rels = []
    for part in payload.split(";"):
        part = part.strip()
        if part:
            rels.append(parse_expression(part, alg))
    return make_stardouble(Presentation(alg, rels, {"preset": "stardouble"}))


PRESET_NAMES = (
    "A_x2",
    "T3",
    "B4",
    "Q4",
    "uea-heisenberg",
    "uea-sl2",
    "wick",
    "monomial:<words>",
    "stardouble:<relations>",
)


def preset(name: str, alpha: Optional[Fraction] = None) -> Presentation:
    """A ready presentation by name; `alpha` instantiates the parameter."""
    base, _, payload = name.partition(":")
    if base == "A_x2":
        pres = parse_presentation(_a_x2_text())
        pres.meta["preset"] = "A_x2"
    elif base == "T3":
        pres = parse_presentation(_t3_text())
        pres.meta["preset"] = "T3"
    elif base == "B4":
        pres = parse_presentation(_b4_text())
        pres.meta["preset"] = "B4"
    elif base == "Q4":
        pres = parse_presentation(_q4_text())
        pres.meta["preset"] = "Q4"
    elif base == "uea-heisenberg":
        pres = parse_presentation(_uea_heisenberg_text())
        pres.meta["preset"] = "uea-heisenberg"
    elif base == "uea-sl2":
        pres = parse_presentation(_uea_sl2_text())
        pres.meta["preset"] = "uea-sl2"
    elif base == "wick":
        pres = _wick_default(payload)
    elif base == "monomial":
        pres = _monomial_words(payload)
    elif base == "stardouble":
        pres = _stardouble_payload(payload)
    else:
        raise ValueError(f"unknown preset {name!r}; known: {', '.join(PRESET_NAMES)}")
    if alpha is not None and pres.algebra.parameter is not None:
        pres = pres.at_parameter(alpha)
        if base == "Q4" and alpha == 0:
            # bounded operators collapse for this value; only the unbounded
            # construction carries information
            pres.meta["no_bounded_representation"] = True
    return pres


def uea_presentation(brackets: Dict[tuple, Sequence[Fraction]], n: int) -> Presentation:
    """Enveloping-algebra presentation from structure constants.

    brackets[(i, j)] (i < j, 1-based) lists the coefficients of e_1..e_n in
    [e_i, e_j]; antisymmetry is implied by storing only i < j.  Generators are
    anti-selfadjoint.
    """
    for (i, j) in brackets:
        if not (1 <= i < j <= n):
            raise ValueError(f"bracket indices must satisfy 1 <= i < j <= n, got {(i, j)}")
        if len(brackets[(i, j)]) != n:
            raise ValueError("each bracket needs one coefficient per generator")
    names = [f"e{k}" for k in range(1, n + 1)]
    alg = FreeStarAlgebra(names)
    rels = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            ei, ej = alg.gen_poly(f"e{i}"), alg.gen_poly(f"e{j}")
            r = ei * ej - ej * ei
            for k, c in enumerate(brackets.get((i, j), [0] * n), start=1):
                r = r - alg.gen_poly(f"e{k}") * Scalar.from_rational(c)
            rels.append(r)
    for k in range(1, n + 1):
        rels.append(alg.gen_poly(f"e{k}*") + alg.gen_poly(f"e{k}"))
    return Presentation(alg, rels, {"preset": "uea"})


# -- moment model ----------------------------------------------------------------


@dataclass
class MomentModel:
    """Moments of a polynomial density on [0, 1] and the Hankel blocks they fill.

    moment(m) = integral of t^(m+1) * density over [0, 1], exactly.
    block A has entries moment(i+j-1); block A' drops the first column,
    entries moment(i+j).  The second pair is taken equal to the first.
    """

    density: list  # Fraction coefficients, density(t) = sum c_k t^k
    m_max: int
    moments: list = field(default_factory=list)  # index m = 0..m_max

    def __post_init__(self):
        if not self.moments:
            self.moments = [self._integral(m) for m in range(self.m_max + 1)]

    def _integral(self, m: int) -> Fraction:
        # integral of t^(m+1) * sum c_k t^k = sum c_k / (m + k + 2)
        return sum(
            (c / (m + k + 2) for k, c in enumerate(self.density)), Fraction(0)
        )

    def moment(self, m: int) -> Fraction:
        if m > self.m_max:
            raise ValueError(f"moment {m} beyond the computed range {self.m_max}")
        return self.moments[m]

    def block(self, kind: str, size: int) -> list:
        """Hankel block entries as QI: 'A' uses moment(i+j-1), 'A_shift' moment(i+j)."""
        off = 0 if kind == "A" else 1
        return [
            [QI(self.moment(i + j + 1 + off)) for j in range(size)]
            for i in range(size)
        ]


def _sturm_positive_on_unit_interval(coeffs: Sequence[Fraction]) -> bool:
    """Exact positivity of a polynomial on [0, 1] via endpoint signs and a
    Sturm-sequence root count on the open interval."""
    poly = [Fraction(c) for c in coeffs]
    while poly and poly[-1] == 0:
        poly.pop()
    if not poly:
        return False

    def ev(p, x):
        total = Fraction(0)
        for c in reversed(p):
            total = total * x + c
        return total

    if ev(poly, Fraction(0)) <= 0 or ev(poly, Fraction(1)) <= 0:
        return False
    if len(poly) == 1:
        return poly[0] > 0

    def derive(p):
        return [c * k for k, c in enumerate(p)][1:]

    def rem_neg(a, b):
        a = list(a)
        while len(a) >= len(b) and any(a):
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            for k in range(len(b)):
                a[shift + k] -= f * b[k]
            while a and a[-1] == 0:
                a.pop()
        return [-c for c in a]

    chain = [poly, derive(poly)]
    while chain[-1]:
        nxt = rem_neg(chain[-2], chain[-1])
        if not nxt:
            break
        chain.append(nxt)

    def signs_at(x):
        vals = [ev(p, x) for p in chain if p]
        changes = 0
        prev = 0
        for v in vals:
            s = (v > 0) - (v < 0)
            if s == 0:
                continue
            if prev and s != prev:
                changes += 1
            prev = s
        return changes

    return signs_at(Fraction(0)) - signs_at(Fraction(1)) == 0


def moment_weights(density: Sequence[Fraction], m_max: int) -> MomentModel:
    """Exact moments for a density strictly positive on [0, 1]."""
    coeffs = [Fraction(c) for c in density]
    simple = coeffs and all(c >= 0 for c in coeffs) and coeffs[0] > 0
    if not simple and not _sturm_positive_on_unit_interval(coeffs):
        raise ValueError("density must be strictly positive on [0, 1]")
    return MomentModel(coeffs, m_max)


# -- the rank-one nilpotent model study ----------------------------------------------


def _x2_basis(cap: int) -> GroebnerBasis:
    pres = preset("A_x2")
    return complete(pres.relations, cap)


def x2_family(alg: FreeStarAlgebra, w: Word) -> Optional[tuple]:
    """Classify an alternating word: ("u", k), ("v", k), ("a", m), ("b", m) or
    ("unit", 0)."""
    if not w:
        return ("unit", 0)
    x = alg.gen_id("x")
    xs = alg.gen_id("x*")
    expected = w[0]
    for g in w:
        if g != expected:
            return None
        expected = expected ^ 1
    n = len(w)
    if n % 2 == 0:
        return ("a", n // 2) if w[0] == x else ("b", n // 2)
    return ("u", (n - 1) // 2) if w[0] == x else ("v", (n - 1) // 2)


def x2_block_structure(k_max: int, model: Optional[MomentModel] = None) -> dict:
    """Families, the product table, and the block-diagonal Gram under the
    family-ordered enumeration u_0..u_K, a_1..a_M, v_0..v_K, b_1..b_M with the
    unit handled on the side."""
    if model is None:
        model = moment_weights([Fraction(1)], 4 * k_max + 8)
    gb = _x2_basis(8)
    alg = gb.algebra
    x = alg.gen_id("x")
    xs = alg.gen_id("x*")

    def u_(k):
        return (x,) + (xs, x) * k

    def v_(k):
        return (xs,) + (x, xs) * k

    def a_(m):
        return (x, xs) * m

    def b_(m):
        return (xs, x) * m

    m_top = k_max + 1
    table_checks = []
    ok = True
    for k in range(k_max + 1):
        for t in range(k_max + 1):
            lhs = gb.reduce(alg.word_poly(u_(k) + star_word(u_(t))))
            expect = alg.word_poly(a_(k + t + 1))
            table_checks.append(("u u*", k, t, lhs == expect))
            lhs = gb.reduce(alg.word_poly(v_(k) + star_word(v_(t))))
            expect = alg.word_poly(b_(k + t + 1))
            table_checks.append(("v v*", k, t, lhs == expect))
    for m in range(1, m_top + 1):
        for n_ in range(1, m_top + 1):
            lhs = gb.reduce(alg.word_poly(a_(m) + star_word(a_(n_))))
            table_checks.append(("a a*", m, n_, lhs == alg.word_poly(a_(m + n_))))
            lhs = gb.reduce(alg.word_poly(b_(m) + star_word(b_(n_))))
            table_checks.append(("b b*", m, n_, lhs == alg.word_poly(b_(m + n_))))
    ok = all(t[-1] for t in table_checks)

    def weight_of(w: Word) -> Fraction:
        fam = x2_family(alg, w)
        assert fam is not None, "half-words of this model stay in the four families"
        kind, k = fam
        if kind == "unit":
            return Fraction(1)
        if kind in ("u", "v"):
            return model.moment(2 * k + 1)
        return model.moment(2 * k)

    enum_words = (
        [u_(k) for k in range(k_max + 1)]
        + [a_(m) for m in range(1, m_top + 1)]
        + [v_(k) for k in range(k_max + 1)]
        + [b_(m) for m in range(1, m_top + 1)]
    )
    gram = assemble_gram(gb, enum_words, weight_of, enumeration_monotone=False)

    sizes = [k_max + 1, m_top, k_max + 1, m_top]
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    cross_zero = True
    for bi in range(4):
        for bj in range(4):
            if bi == bj:
                continue
            for i in range(offsets[bi], offsets[bi + 1]):
                for j in range(offsets[bj], offsets[bj + 1]):
                    if not gram.entries[i][j].is_zero():
                        cross_zero = False

    blocks = {}
    names = ["u", "a", "v", "b"]
    for bi in range(4):
        sub = [
            [gram.entries[i][j] for j in range(offsets[bi], offsets[bi + 1])]
            for i in range(offsets[bi], offsets[bi + 1])
        ]
        blocks[names[bi]] = sub

    # the unit couples only to the a and b families
    unit_row = {}
    for w in enum_words:
        r = gb.reduce(alg.word_poly(star_word(w)))
        total = QI_ZERO
        for word, c in r.terms.items():
            from .starcheck import positive_split

            h = positive_split(word)
            if h is not None:
                total = total + c.constant() * QI(weight_of(h))
        if not total.is_zero():
            unit_row[alg.word_text(w)] = str(Scalar.from_qi(total))

    pd_ok, _ = verify_positive(gram)
    return {
        "k_max": k_max,
        "families": {"u": k_max + 1, "a": m_top, "v": k_max + 1, "b": m_top},
        "product_table_verified": ok,
        "table_size": len(table_checks),
        "block_diagonal": cross_zero,
        "blocks": blocks,
        "gram": gram,
        "unit_couplings": unit_row,
        "positive_definite": pd_ok,
        "basis": gb,
        "enumeration": enum_words,
    }


def x2_boundedness(model: MomentModel, k_max: int, cap: Optional[int] = None) -> dict:
    """Moment monotonicity, the squared-norm ratio table for left
    multiplication by the generator, and a float cross-check of the truncated
    operator norm."""
    cap = cap if cap is not None else 2 * k_max + 2
    gb = _x2_basis(max(8, cap))
    alg = gb.algebra
    x = alg.gen_id("x")
    xs = alg.gen_id("x*")

    mono_shifted = all(
        model.moment(2 * (k + 1)) <= model.moment(2 * k - 1)
        for k in range(1, k_max + 1)
    )
    mono_adjacent = all(
        model.moment(m + 1) <= model.moment(m) for m in range(0, 2 * k_max + 1)
    )

    ratios = []
    for k in range(k_max + 1):
        # x . v_k = a_{k+1}: squared norms moment(2k+2) vs moment(2k+1)
        ratios.append(
            {
                "vector": f"v_{k}",
                "image_sq": str(model.moment(2 * (k + 1))),
                "norm_sq": str(model.moment(2 * k + 1)),
                "bounded_by_one": model.moment(2 * (k + 1)) <= model.moment(2 * k + 1),
            }
        )
    for m in range(1, k_max + 1):
        # x . b_m = u_m: squared norms moment(2m+1) vs moment(2m)
        ratios.append(
            {
                "vector": f"b_{m}",
                "image_sq": str(model.moment(2 * m + 1)),
                "norm_sq": str(model.moment(2 * m)),
                "bounded_by_one": model.moment(2 * m + 1) <= model.moment(2 * m),
            }
        )

    # float cross-check on the family-ordered truncation, unit included
    def words_up_to(cap):
        out = [EMPTY_WORD]
        for k in range(0, (cap - 1) // 2 + 1):
            out.append((x,) + (xs, x) * k)
            out.append((xs,) + (x, xs) * k)
        for m in range(1, cap // 2 + 1):
            out.append((x, xs) * m)
            out.append((xs, x) * m)
        return [w for w in out if len(w) <= cap]

    def weight_of(w):
        fam = x2_family(alg, w)
        kind, k = fam
        if kind == "unit":
            return Fraction(1)
        if kind in ("u", "v"):
            return model.moment(2 * k + 1)
        return model.moment(2 * k)

    words = words_up_to(cap)
    gram = assemble_gram(gb, words, weight_of, enumeration_monotone=False)
    pd_ok, _ = verify_positive(gram)

    from .groebner import BWEnumeration

    listing = BWEnumeration(cap, words, {w: k + 1 for k, w in enumerate(words)})
    M = regular_matrix(alg.gen_poly("x"), gb, listing, side="left")
    norm = norm_estimate(M, gram)

    return {
        "k_max": k_max,
        "cap": cap,
        "monotone_shifted_indexing": mono_shifted,
        "monotone_adjacent_indexing": mono_adjacent,
        "ratio_table": ratios,
        "gram_positive_definite": pd_ok,
        "norm": norm,
        "norm_bounded_by_one": norm.value <= 1 + 1e-9,
    }
