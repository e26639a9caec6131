"""Involution-compatibility checks on a completed relation set.

Each check returns a CheckReport whose failure witnesses carry enough data to
re-run the violated condition independently.  The bounded non-expanding check
is a semi-decision: it verifies the defining inequality on all basis-word
pairs up to a degree budget and can therefore only report pass_up_to_cap or
fail.  The other checks are exact syntactic conditions on the basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .freealg import EMPTY_WORD, Poly, Word, star_word
from .groebner import GroebnerBasis, find_compositions, head_overlaps

PASS = "pass"
FAIL = "fail"
PASS_UP_TO_CAP = "pass_up_to_cap"


@dataclass
class CheckReport:
    condition: str
    verdict: str
    witnesses: list = field(default_factory=list)
    cap: Optional[int] = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict in (PASS, PASS_UP_TO_CAP)

    def to_json_obj(self) -> dict:
        return {
            "condition": self.condition,
            "verdict": self.verdict,
            "cap": self.cap,
            "witnesses": self.witnesses,
            "details": self.details,
        }


def _wt(gb: GroebnerBasis, w: Word) -> str:
    return gb.algebra.word_text(w)


# -- unshrinkability ------------------------------------------------------------


def shrink_witness(w: Word) -> Optional[dict]:
    """A split showing w = d*d u (prefix) or w = u d d* (suffix), or None."""
    n = len(w)
    for k in range(1, n // 2 + 1):
        d = w[k : 2 * k]
        if star_word(d) == w[:k]:
            return {"kind": "prefix", "d": d}
        d = w[n - 2 * k : n - k]
        if star_word(d) == w[n - k :]:
            return {"kind": "suffix", "d": d}
    return None


def is_unshrinkable(w: Word) -> bool:
    return shrink_witness(w) is None


def top_words(s: Poly) -> list:
    """Every word of s at the top degree, the leading word included."""
    d = s.degree()
    return sorted((w for w in s.terms if len(w) == d), key=s.alg.word_key, reverse=True)


# -- symmetry -------------------------------------------------------------------


def is_symmetric(gb: GroebnerBasis) -> CheckReport:
    """Does the generated ideal coincide with its image under the involution?"""
    witnesses = []
    for k, s in enumerate(gb.elements):
        r = gb.reduce(s.star())
        if not r.is_zero():
            witnesses.append(
                {
                    "element": k,
                    "star_normal_form": r.to_text(),
                }
            )
    if witnesses:
        return CheckReport("symmetric", FAIL, witnesses)
    verdict = PASS if gb.status == "complete" else PASS_UP_TO_CAP
    return CheckReport(
        "symmetric",
        verdict,
        details={"set_star_symmetric": gb.set_star_symmetric()},
        cap=None if gb.status == "complete" else gb.cap,
    )


# -- strictly appropriate ---------------------------------------------------------


def check_strictly_appropriate(gb: GroebnerBasis) -> CheckReport:
    """Condition 1: every top-degree word of every element is unshrinkable.
    Condition 2: whenever a non-leading top word u shares a nonempty prefix a
    with the leading word, then for every element s1 that has a non-leading
    top word, u must not occur inside head(s1) and head(s1) = d1 a d2,
    u = a d2 d3 (d1, d2, d3 nonempty) must have no solution.  The witness
    prints the matched split so the reading can be audited.
    """
    witnesses = []
    elements = gb.elements
    flexible = [s1 for s1 in elements if len(top_words(s1)) > 1]

    for si, s in enumerate(elements):
        h = s.leading_word()
        for u in top_words(s):
            sw = shrink_witness(u)
            if sw is not None:
                witnesses.append(
                    {
                        "rule": "unshrinkable-top-word",
                        "element": si,
                        "u": _wt(gb, u),
                        "split": {"kind": sw["kind"], "d": _wt(gb, sw["d"])},
                    }
                )
        for u in top_words(s):
            if u == h:
                continue
            max_pref = 0
            for k in range(1, min(len(u), len(h)) + 1):
                if u[:k] == h[:k]:
                    max_pref = k
                else:
                    break
            for alen in range(1, max_pref + 1):
                a = u[:alen]
                for ti, s1 in enumerate(flexible):
                    h1 = s1.leading_word()
                    # containment: u inside head(s1)
                    for pos in range(len(h1) - len(u) + 1):
                        if h1[pos : pos + len(u)] == u:
                            witnesses.append(
                                {
                                    "rule": "top-word-inside-head",
                                    "element": si,
                                    "u": _wt(gb, u),
                                    "a": _wt(gb, a),
                                    "other": elements.index(s1),
                                    "position": pos,
                                }
                            )
                    # forbidden overlap: head(s1) = d1 a d2, u = a d2 d3
                    for p in range(1, len(h1) - alen):
                        if h1[p : p + alen] != a:
                            continue
                        d1 = h1[:p]
                        d2 = h1[p + alen :]
                        if not d2:
                            continue
                        if len(u) <= alen + len(d2):
                            continue
                        if u[alen : alen + len(d2)] != d2:
                            continue
                        d3 = u[alen + len(d2) :]
                        witnesses.append(
                            {
                                "rule": "forbidden-overlap",
                                "element": si,
                                "u": _wt(gb, u),
                                "other": elements.index(s1),
                                "a": _wt(gb, a),
                                "d1": _wt(gb, d1),
                                "d2": _wt(gb, d2),
                                "d3": _wt(gb, d3),
                            }
                        )
    if witnesses:
        return CheckReport("strictly_appropriate", FAIL, witnesses)
    verdict = PASS if gb.status == "complete" else PASS_UP_TO_CAP
    return CheckReport("strictly_appropriate", verdict)


def check_corollary_simple(gb: GroebnerBasis) -> CheckReport:
    """Stronger and simpler: all top-degree words unshrinkable, and every
    non-leading top word starts with a different generator than the head."""
    witnesses = []
    for si, s in enumerate(gb.elements):
        h = s.leading_word()
        for u in top_words(s):
            sw = shrink_witness(u)
            if sw is not None:
                witnesses.append(
                    {
                        "rule": "unshrinkable-top-word",
                        "element": si,
                        "u": _wt(gb, u),
                        "split": {"kind": sw["kind"], "d": _wt(gb, sw["d"])},
                    }
                )
            if u != h and u[:1] == h[:1]:
                witnesses.append(
                    {
                        "rule": "same-first-generator",
                        "element": si,
                        "head": _wt(gb, h),
                        "u": _wt(gb, u),
                    }
                )
    if witnesses:
        return CheckReport("corollary_simple", FAIL, witnesses)
    verdict = PASS if gb.status == "complete" else PASS_UP_TO_CAP
    return CheckReport("corollary_simple", verdict)


def check_theorem_kir(gb: GroebnerBasis) -> CheckReport:
    """All top-degree words unshrinkable, and no non-leading top word overlaps
    any leading word (in either order)."""
    witnesses = []
    elements = gb.elements
    for si, s in enumerate(elements):
        for u in top_words(s):
            sw = shrink_witness(u)
            if sw is not None:
                witnesses.append(
                    {
                        "rule": "unshrinkable-top-word",
                        "element": si,
                        "u": _wt(gb, u),
                        "split": {"kind": sw["kind"], "d": _wt(gb, sw["d"])},
                    }
                )
        h = s.leading_word()
        for u in top_words(s):
            if u == h:
                continue
            for tj, s2 in enumerate(elements):
                h2 = s2.leading_word()
                for x, y, z in head_overlaps(u, h2):
                    witnesses.append(
                        {
                            "rule": "top-word-overlaps-head",
                            "element": si,
                            "u": _wt(gb, u),
                            "other": tj,
                            "overlap": _wt(gb, y),
                            "order": "u-then-head",
                        }
                    )
                for x, y, z in head_overlaps(h2, u):
                    witnesses.append(
                        {
                            "rule": "top-word-overlaps-head",
                            "element": si,
                            "u": _wt(gb, u),
                            "other": tj,
                            "overlap": _wt(gb, y),
                            "order": "head-then-u",
                        }
                    )
    if witnesses:
        return CheckReport("theorem_kir", FAIL, witnesses)
    verdict = PASS if gb.status == "complete" else PASS_UP_TO_CAP
    return CheckReport("theorem_kir", verdict)


def check_stardouble(gb: GroebnerBasis) -> CheckReport:
    """Every head lies wholly in the plain or wholly in the starred letters,
    and every top-degree word of an element stays in its head's half."""
    witnesses = []
    for si, s in enumerate(gb.elements):
        h = s.leading_word()
        kinds = {g & 1 for g in h}
        if len(kinds) > 1:
            witnesses.append(
                {"rule": "mixed-head", "element": si, "head": _wt(gb, h)}
            )
            continue
        if not h:
            witnesses.append(
                {"rule": "unit-head", "element": si}
            )
            continue
        side = h[0] & 1
        for u in top_words(s):
            if u == h:
                continue
            if {g & 1 for g in u} != {side}:
                witnesses.append(
                    {
                        "rule": "top-word-crosses-halves",
                        "element": si,
                        "head": _wt(gb, h),
                        "u": _wt(gb, u),
                    }
                )
    if witnesses:
        return CheckReport("stardouble_split", FAIL, witnesses)
    verdict = PASS if gb.status == "complete" else PASS_UP_TO_CAP
    return CheckReport("stardouble_split", verdict)


# -- bounded non-expanding verification --------------------------------------------


def positive_split(w: Word) -> Optional[Word]:
    """The word h with w = h . star(h), if that form exists."""
    n = len(w)
    if n % 2:
        return None
    h = w[: n // 2]
    return h if w[n // 2 :] == star_word(h) else None


def check_nonexpanding_bounded(
    gb: GroebnerBasis, cap: int, max_witnesses: int = 25
) -> CheckReport:
    """Verify directly on basis words up to the budget: for u != v with
    |u|+|v| <= cap, every positive word h h* in the normal form of u v*
    satisfies h < max(u, v).  The strict variant (d d* stays a basis word for
    every basis word d) is reported under details["strict"]; the report's own
    verdict covers the plain inequality.

    Fast path: when u v* is already a basis word no violation is possible
    (h h* = u v* forces either u = v at equal lengths or |h| below the longer
    word), so only pairs whose product actually rewrites are reduced.
    """
    if gb.status != "complete" and cap > gb.cap:
        raise ValueError(
            f"budget {cap} exceeds the validity range of a truncated basis (cap {gb.cap})"
        )
    alg = gb.algebra
    bw = gb.enumerate_bw(cap)
    heads = gb.heads
    maxh = max((len(h) for h in heads), default=0)

    star_cache = {v: star_word(v) for v in bw.words}
    star_in_bw = {v: gb.word_is_basis_word(star_cache[v]) for v in bw.words}

    junction_memo: dict = {}

    def junction_reducible(u: Word, vs: Word) -> bool:
        # an occurrence straddling the boundary only sees maxh-1 letters each side
        lu = u[max(0, len(u) - (maxh - 1)) :] if maxh > 1 else EMPTY_WORD
        rv = vs[: maxh - 1] if maxh > 1 else EMPTY_WORD
        key = (lu, rv)
        hit = junction_memo.get(key)
        if hit is None:
            w = lu + rv
            b = len(lu)
            hit = False
            for h in heads:
                m = len(h)
                for p in range(max(0, b - m + 1), min(b, len(w) - m) + 1):
                    if p < b < p + m and w[p : p + m] == h:
                        hit = True
                        break
                if hit:
                    break
            junction_memo[key] = hit
        return hit

    by_len: dict = {}
    for w in bw.words:
        by_len.setdefault(len(w), []).append(w)

    witnesses = []
    checked = 0
    for lu in sorted(by_len):
        for lv in sorted(by_len):
            if lu + lv > cap:
                break
            for u in by_len[lu]:
                for v in by_len[lv]:
                    if u == v:
                        continue
                    checked += 1
                    vs = star_cache[v]
                    if star_in_bw[v] and not junction_reducible(u, vs):
                        continue  # product is in normal form already
                    m = max(u, v, key=alg.word_key)
                    r = gb.reduce(alg.word_poly(u + vs))
                    for w, c in r.terms.items():
                        h = positive_split(w)
                        if h is None:
                            continue
                        if alg.compare_words(h, m) >= 0:
                            witnesses.append(
                                {
                                    "u": _wt(gb, u),
                                    "v": _wt(gb, v),
                                    "w": _wt(gb, h),
                                    "coefficient": c.to_text(alg.parameter or "a"),
                                }
                            )
                    if len(witnesses) >= max_witnesses:
                        break
                if len(witnesses) >= max_witnesses:
                    break
            if len(witnesses) >= max_witnesses:
                break
        if len(witnesses) >= max_witnesses:
            break

    strict_witnesses = []
    for d in bw.words:
        if 2 * len(d) > cap:
            continue
        if not gb.word_is_basis_word(d + star_word(d)):
            strict_witnesses.append({"d": _wt(gb, d)})
            if len(strict_witnesses) >= max_witnesses:
                break

    details = {
        "pairs_checked": checked,
        "strict": {
            "verdict": FAIL if strict_witnesses else PASS_UP_TO_CAP,
            "witnesses": strict_witnesses,
        },
    }
    verdict = FAIL if witnesses else PASS_UP_TO_CAP
    return CheckReport("nonexpanding", verdict, witnesses, cap=cap, details=details)


def revalidate_nonexpanding_witness(gb: GroebnerBasis, witness: dict) -> bool:
    """Re-run the single violated instance from a nonexpanding fail witness."""
    alg = gb.algebra
    u = alg.word_from_text(witness["u"])
    v = alg.word_from_text(witness["v"])
    w = alg.word_from_text(witness["w"])
    m = max(u, v, key=alg.word_key)
    r = gb.reduce(alg.word_poly(u + star_word(v)))
    target = w + star_word(w)
    return target in r.terms and alg.compare_words(w, m) >= 0


# -- orchestration -----------------------------------------------------------------

CONDITIONS = {
    "symmetric": lambda gb, cap: is_symmetric(gb),
    "appropriate": lambda gb, cap: check_strictly_appropriate(gb),
    "corollary": lambda gb, cap: check_corollary_simple(gb),
    "kir": lambda gb, cap: check_theorem_kir(gb),
    "stardouble": lambda gb, cap: check_stardouble(gb),
    "nonexpanding": check_nonexpanding_bounded,
}


def run_checks(gb: GroebnerBasis, conditions, cap: int) -> list:
    reports = []
    for name in conditions:
        if name not in CONDITIONS:
            raise ValueError(f"unknown condition {name!r}")
        reports.append(CONDITIONS[name](gb, cap))
    return reports
