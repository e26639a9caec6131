"""Compositions, the reduction operator, completion, basis-word enumeration,
and the diamond product on the quotient.

Completion follows the Buchberger style loop for free algebras: enqueue every
overlap of leading words, reduce its result, adjoin nonzero remainders, and
eliminate head inclusions eagerly by interreduction.  Because completion need
not terminate over a free algebra, overlaps whose word exceeds the degree cap
are skipped and the basis is marked truncated.  When the queue drains, a full
verification sweep recomputes every composition; "complete" status is only
reported after a sweep finds nothing new, so the status is a checked
certificate rather than a byproduct of the queue discipline.
"""

from __future__ import annotations

import heapq
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .freealg import EMPTY_WORD, FreeStarAlgebra, Poly, Word, star_word
from .scalars import Scalar


class ParameterDegenerateLead(ValueError):
    """Leading coefficient depends on the parameter; monic form is ill-defined."""


# -- overlaps -----------------------------------------------------------------


def head_overlaps(hf: Word, hg: Word) -> list:
    """Proper overlaps: (x, y, z) with hf = x y, hg = y z, all of x, y, z nonempty
    except that only y is required nonempty and x, z nonempty is implied by
    properness (y shorter than both heads)."""
    out = []
    for k in range(1, min(len(hf), len(hg))):
        if hf[len(hf) - k :] == hg[:k]:
            out.append((hf[: len(hf) - k], hf[len(hf) - k :], hg[k:]))
    return out


@dataclass
class Composition:
    left: Poly
    right: Poly
    w: Word
    w1: Word  # right padding for `left`
    w2: Word  # left padding for `right`

    def result(self) -> Poly:
        alg = self.left.alg
        alpha = self.left.leading_coeff()
        beta = self.right.leading_coeff()
        r = self.left * alg.word_poly(self.w1) * beta - alg.word_poly(self.w2) * self.right * alpha
        assert all(
            alg.compare_words(u, self.w) < 0 for u in r.terms
        ), "composition result must lie below its overlap word"
        return r


def find_compositions(f: Poly, g: Poly) -> list:
    """All compositions of f with g (f's head on the left), sorted by overlap word."""
    if f.is_zero() or g.is_zero():
        raise ValueError("compositions require nonzero elements")
    hf, hg = f.leading_word(), g.leading_word()
    comps = [
        Composition(f, g, x + y + z, z, x) for (x, y, z) in head_overlaps(hf, hg)
    ]
    comps.sort(key=lambda c: f.alg.word_key(c.w))
    return comps


def head_inclusions(f: Poly, g: Poly) -> list:
    """Positions where the head of f occurs inside the head of g (an inclusion
    event, handled by interreduction rather than as a composition)."""
    hf, hg = f.leading_word(), g.leading_word()
    n = len(hf)
    return [p for p in range(len(hg) - n + 1) if hg[p : p + n] == hf]


# -- reduction ----------------------------------------------------------------


def _first_occurrence(w: Word, heads: Sequence[Word]):
    """Leftmost position, lowest rule index at that position."""
    n = len(w)
    for p in range(n):
        for idx, h in enumerate(heads):
            m = len(h)
            if p + m <= n and w[p : p + m] == h:
                return p, idx
    return None


def normal_form(f: Poly, rules: Sequence[Poly], memo: Optional[dict] = None) -> Poly:
    """The reduction operator: rewrite every occurrence of a leading word via
    head -> tail until no leading word occurs.  Rules are normalized to monic
    internally.  Word-level results are memoized in `memo`.
    """
    alg = f.alg
    rules = [r if r.is_monic() else r.monic() for r in rules]
    heads = [r.leading_word() for r in rules]
    tails = [r.bar() for r in rules]  # head rewrites to bar(r)
    if memo is None:
        memo = {}

    def nf_word(w0: Word) -> dict:
        stack = [w0]
        while stack:
            w = stack[-1]
            if w in memo:
                stack.pop()
                continue
            occ = _first_occurrence(w, heads)
            if occ is None:
                memo[w] = {w: Scalar.one()}
                stack.pop()
                continue
            p, idx = occ
            h = heads[idx]
            left, right = w[:p], w[p + len(h) :]
            children = [(left + t + right, c) for t, c in tails[idx].terms.items()]
            missing = [cw for cw, _ in children if cw not in memo]
            if missing:
                stack.extend(missing)
                continue
            acc: dict = {}
            for cw, c in children:
                for u, cu in memo[cw].items():
                    s = acc.get(u, Scalar.zero()) + c * cu
                    if s.is_zero():
                        acc.pop(u, None)
                    else:
                        acc[u] = s
            memo[w] = acc
            stack.pop()
        return memo[w0]

    out: dict = {}
    for w, c in f.terms.items():
        for u, cu in nf_word(w).items():
            s = out.get(u, Scalar.zero()) + c * cu
            if s.is_zero():
                out.pop(u, None)
            else:
                out[u] = s
    return Poly(alg, out)


def reduce_with_strategy(
    f: Poly,
    rules: Sequence[Poly],
    chooser: Optional[Callable] = None,
    certificate: Optional[list] = None,
) -> Poly:
    """Term-rewriting reduction with a pluggable occurrence chooser.

    `chooser(options)` picks from a list of (word, position, rule_index)
    triples; the default takes the greatest word, leftmost position, lowest
    rule index.  With `certificate` a list, appends (coeff, p, rule_index, q)
    steps so that f = result + sum coeff * p * rule * q exactly.
    """
    alg = f.alg
    rules = [r if r.is_monic() else r.monic() for r in rules]
    heads = [r.leading_word() for r in rules]
    tails = [r.bar() for r in rules]

    working = dict(f.terms)
    done: dict = {}
    normal: set = set()

    while working:
        options = []
        for w in working:
            if w in normal:
                continue
            n = len(w)
            occs = []
            for p in range(n):
                for idx, h in enumerate(heads):
                    m = len(h)
                    if p + m <= n and w[p : p + m] == h:
                        occs.append((p, idx))
            if occs:
                options.extend((w, p, idx) for (p, idx) in occs)
            else:
                normal.add(w)
        reducible = {w for (w, _, _) in options}
        for w in list(working):
            if w not in reducible:
                c = working.pop(w)
                s = done.get(w, Scalar.zero()) + c
                if s.is_zero():
                    done.pop(w, None)
                else:
                    done[w] = s
        if not working:
            break
        options = [o for o in options if o[0] in working]
        if chooser is None:
            w, p, idx = max(
                options, key=lambda o: (alg.word_key(o[0]), -o[1], -o[2])
            )
        else:
            w, p, idx = chooser(options)
        c = working.pop(w)
        h = heads[idx]
        left, right = w[:p], w[p + len(h) :]
        if certificate is not None:
            certificate.append((c, left, idx, right))
        for t, ct in tails[idx].terms.items():
            u = left + t + right
            s = working.get(u, Scalar.zero()) + c * ct
            if s.is_zero():
                working.pop(u, None)
            else:
                working[u] = s
    return Poly(alg, done)


# -- the completed basis ---------------------------------------------------------


@dataclass
class BWEnumeration:
    """Basis words up to a degree cap, deglex-sorted, with 1-based ranks."""

    cap: int
    words: list
    index: dict  # word -> 1..N

    def __len__(self):
        return len(self.words)

    def word_at(self, rank: int) -> Word:
        return self.words[rank - 1]

    def __contains__(self, w: Word) -> bool:
        return tuple(w) in self.index


class GroebnerBasis:
    """An interreduced relation set with composition-closure status."""

    def __init__(
        self,
        algebra: FreeStarAlgebra,
        elements: Sequence[Poly],
        status: str,
        cap: int,
        log: Optional[list] = None,
    ):
        if status not in ("complete", "truncated"):
            raise ValueError(f"invalid status {status!r}")
        self.algebra = algebra
        self.elements = list(elements)
        self.status = status
        self.cap = cap
        self.log = list(log or [])
        self._memo: dict = {}
        self._heads = [e.leading_word() for e in self.elements]

    @property
    def heads(self) -> list:
        return list(self._heads)

    def __len__(self):
        return len(self.elements)

    def reduce(self, f: Poly) -> Poly:
        return normal_form(f, self.elements, self._memo)

    def reduce_word(self, w: Word) -> Poly:
        return self.reduce(self.algebra.word_poly(w))

    def diamond(self, f: Poly, g: Poly, force: bool = False) -> Poly:
        if self.status != "complete" and not force:
            raise ValueError(
                "diamond product on a truncated basis; pass force=True to override"
            )
        return self.reduce(f * g)

    def ideal_member(self, f: Poly) -> bool:
        if self.status != "complete" and f.degree() > self.cap:
            warnings.warn(
                "membership answer against a truncated basis is only valid "
                f"for degrees within the cap {self.cap}"
            )
        return self.reduce(f).is_zero()

    def word_is_basis_word(self, w: Word) -> bool:
        """No leading word occurs in w (degree-cap-free check)."""
        return _first_occurrence(tuple(w), self._heads) is None

    def enumerate_bw(self, cap: int) -> BWEnumeration:
        return enumerate_bw(self, cap)

    def set_star_symmetric(self) -> bool:
        """The shortcut test: is the element set literally closed under *?"""
        normalized = {frozenset(e.terms.items()) for e in self.elements}
        starred = {frozenset(e.star().monic().terms.items()) for e in self.elements}
        return normalized == starred

    def at_parameter(self, value) -> "GroebnerBasis":
        """Instantiate the parameter.  Leading coefficients are parameter-free,
        so heads survive and closure is preserved."""
        v = Fraction(value)
        elems = [e.substitute_parameter(v) for e in self.elements]
        log = self.log + [{"event": "instantiate", "value": str(v)}]
        return GroebnerBasis(self.algebra, elems, self.status, self.cap, log)

    def is_interreduced(self) -> bool:
        for k, e in enumerate(self.elements):
            others = self.elements[:k] + self.elements[k + 1 :]
            if normal_form(e, others) != e:
                return False
        return True

    def to_json_obj(self) -> dict:
        alg = self.algebra
        return {
            "generators": list(alg.generators),
            "order": list(alg.order_names),
            "parameters": [alg.parameter] if alg.parameter else [],
            "status": self.status,
            "cap": self.cap,
            "elements": [
                [
                    [alg.word_text(w), c.to_text(alg.parameter or "a")]
                    for w, c in sorted(
                        e.terms.items(), key=lambda t: alg.word_key(t[0]), reverse=True
                    )
                ]
                for e in self.elements
            ],
            "composition_log": self.log,
        }

    @staticmethod
    def from_json_obj(obj: dict) -> "GroebnerBasis":
        from .parser import parse_expression

        params = obj.get("parameters") or []
        alg = FreeStarAlgebra(
            obj["generators"],
            order=obj.get("order") or None,
            parameter=params[0] if params else None,
        )
        elems = []
        for entry in obj["elements"]:
            terms = {}
            for word_text, coeff_text in entry:
                w = alg.word_from_text(word_text)
                c = parse_expression(coeff_text, alg)
                if set(c.terms) - {EMPTY_WORD}:
                    raise ValueError(f"coefficient {coeff_text!r} is not scalar")
                terms[w] = c.terms.get(EMPTY_WORD, Scalar.zero())
            elems.append(Poly(alg, terms))
        return GroebnerBasis(
            alg, elems, obj["status"], obj["cap"], obj.get("composition_log")
        )


def enumerate_bw(gb: GroebnerBasis, cap: int) -> BWEnumeration:
    """All words of length <= cap avoiding every leading word as a subword."""
    alg = gb.algebra
    heads = gb._heads
    letters = list(alg.letters())

    def blocked_at_end(w: Word) -> bool:
        for h in heads:
            m = len(h)
            if m <= len(w) and w[len(w) - m :] == h:
                return True
        return False

    words = []
    stack = [EMPTY_WORD]
    if any(len(h) == 0 for h in heads):
        return BWEnumeration(cap, [], {})
    while stack:
        w = stack.pop()
        words.append(w)
        if len(w) < cap:
            for g in letters:
                u = w + (g,)
                if not blocked_at_end(u):
                    stack.append(u)
    words.sort(key=alg.word_key)
    index = {w: k + 1 for k, w in enumerate(words)}
    return BWEnumeration(cap, words, index)


def diamond(f: Poly, g: Poly, gb: GroebnerBasis, force: bool = False) -> Poly:
    return gb.diamond(f, g, force)


def ideal_member(f: Poly, gb: GroebnerBasis) -> bool:
    return gb.ideal_member(f)


# -- completion -------------------------------------------------------------------


class _Cert:
    """Combination certificate: f = sum coeff * p * input_k * q."""

    __slots__ = ("parts",)

    def __init__(self, parts=None):
        self.parts = list(parts or [])

    @staticmethod
    def of_input(k: int) -> "_Cert":
        return _Cert([(Scalar.one(), EMPTY_WORD, k, EMPTY_WORD)])

    def scaled(self, c: Scalar) -> "_Cert":
        return _Cert([(c * c0, p, k, q) for (c0, p, k, q) in self.parts])

    def shifted(self, left: Word, right: Word) -> "_Cert":
        return _Cert([(c0, left + p, k, q + right) for (c0, p, k, q) in self.parts])

    def plus(self, other: "_Cert") -> "_Cert":
        return _Cert(self.parts + other.parts)

    def evaluate(self, alg: FreeStarAlgebra, inputs: Sequence[Poly]) -> Poly:
        total = alg.zero()
        for c, p, k, q in self.parts:
            total = total + alg.word_poly(p) * inputs[k] * alg.word_poly(q) * c
        return total


def complete(
    relations: Sequence[Poly],
    cap: int,
    certify: bool = False,
) -> GroebnerBasis:
    """Complete a relation set to one closed under compositions, up to a degree cap.

    Deterministic: pending compositions are processed in (overlap word,
    insertion index) order.  Raises on an empty or zero input, on a cap below
    the maximum input degree, and on elements whose leading coefficient
    depends on the parameter (monic normalization would need a case split).
    """
    rels = [r for r in relations if not r.is_zero()]
    if not rels:
        raise ValueError("cannot complete an empty relation set")
    alg = rels[0].alg
    max_deg = max(r.degree() for r in rels)
    if cap < max_deg:
        raise ValueError(f"degree cap {cap} is below the maximum input degree {max_deg}")

    polys: list = []  # all inserted elements, by slot
    certs: list = []
    active: list = []  # slot indices, insertion order
    pending: list = []  # heap of (word_key, seq, i, j, w1, w2)
    log: list = []
    seq = 0
    truncated = False
    memo_box = {"version": -1, "memo": {}}

    def active_polys() -> list:
        return [polys[k] for k in active]

    def shared_memo() -> dict:
        # word-level normal forms are only valid for a fixed rule set
        version = hash((tuple(active), tuple(id(polys[k]) for k in active)))
        if memo_box["version"] != version:
            memo_box["version"] = version
            memo_box["memo"] = {}
        return memo_box["memo"]

    def reduce_now(p: Poly, certificate=None) -> Poly:
        if certificate is None:
            return normal_form(p, active_polys(), shared_memo())
        steps: list = []
        r = reduce_with_strategy(p, active_polys(), certificate=steps)
        for c, left, local_idx, right in steps:
            k = active[local_idx]
            certificate.append(certs[k].scaled(c).shifted(left, right))
        return r

    def enqueue_pairs(k: int):
        nonlocal seq
        hk = polys[k].leading_word()
        for j in list(active):
            hj = polys[j].leading_word()
            for x, y, z in head_overlaps(hk, hj):
                w = x + y + z
                heapq.heappush(pending, (alg.word_key(w), seq, k, j, z, x))
                seq += 1
            if j != k:
                for x, y, z in head_overlaps(hj, hk):
                    w = x + y + z
                    heapq.heappush(pending, (alg.word_key(w), seq, j, k, z, x))
                    seq += 1

    def insert(p: Poly, cert: Optional[_Cert]):
        nonlocal truncated
        sub_cert: Optional[list] = [] if certify else None
        r = reduce_now(p, sub_cert)
        if r.is_zero():
            return
        lc = r.leading_coeff()
        if not lc.is_constant():
            raise ParameterDegenerateLead(
                f"leading coefficient {lc} of {r} depends on the parameter"
            )
        full_cert = None
        if certify:
            assert cert is not None
            combined = cert
            for used in sub_cert:
                combined = combined.plus(used.scaled(Scalar.from_rational(-1)))
            full_cert = combined.scaled(Scalar.one() / lc)
        r = r.monic()
        if r.degree() > cap:
            truncated = True
            warnings.warn(
                f"adjoined element of degree {r.degree()} exceeds the cap {cap}; "
                "basis marked truncated"
            )
            log.append({"event": "over_cap_element", "degree": r.degree()})
        k = len(polys)
        polys.append(r)
        certs.append(full_cert)
        active.append(k)
        log.append({"event": "adjoin", "slot": k, "head": alg.word_text(r.leading_word())})
        enqueue_pairs(k)
        # eager inclusion elimination: heads containing the new head leave the basis
        hk = r.leading_word()
        for j in list(active):
            if j == k:
                continue
            hj = polys[j].leading_word()
            if len(hk) <= len(hj) and any(
                hj[t : t + len(hk)] == hk for t in range(len(hj) - len(hk) + 1)
            ):
                active.remove(j)
                log.append({"event": "retire", "slot": j})
                insert(polys[j], certs[j] if certify else None)

    for k, rel in enumerate(rels):
        insert(rel, _Cert.of_input(k) if certify else None)

    def composition_cert(i: int, j: int, w1: Word, w2: Word) -> Optional[_Cert]:
        if not certify:
            return None
        beta = polys[j].leading_coeff()
        alpha = polys[i].leading_coeff()
        left = certs[i].scaled(beta).shifted(EMPTY_WORD, w1)
        right = certs[j].scaled(-alpha).shifted(w2, EMPTY_WORD)
        return left.plus(right)

    def drain():
        nonlocal truncated
        while pending:
            wkey, _, i, j, w1, w2 = heapq.heappop(pending)
            if i not in active or j not in active:
                log.append({"event": "stale_pair"})
                continue
            w = polys[i].leading_word() + w1
            if len(w) > cap:
                truncated = True
                log.append(
                    {"event": "skip_over_cap", "w": alg.word_text(w), "slots": [i, j]}
                )
                continue
            comp = Composition(polys[i], polys[j], w, w1, w2)
            r = normal_form(comp.result(), active_polys(), shared_memo())
            log.append(
                {
                    "event": "composition",
                    "w": alg.word_text(w),
                    "slots": [i, j],
                    "result": "zero" if r.is_zero() else "adjoined",
                }
            )
            if not r.is_zero():
                insert(comp.result(), composition_cert(i, j, w1, w2))

    def tail_interreduce():
        changed = True
        while changed:
            changed = False
            for k in list(active):
                others = [polys[j] for j in active if j != k]
                sub_cert: Optional[list] = [] if certify else None
                r = (
                    normal_form(polys[k], others)
                    if not certify
                    else reduce_with_strategy(polys[k], others, certificate=sub_cert)
                )
                if r != polys[k]:
                    changed = True
                    if certify:
                        combined = certs[k]
                        slots = [j for j in active if j != k]
                        for c, left, local_idx, right in sub_cert:
                            combined = combined.plus(
                                certs[slots[local_idx]]
                                .scaled(c)
                                .shifted(left, right)
                                .scaled(Scalar.from_rational(-1))
                            )
                        certs[k] = combined
                    polys[k] = r

    def verification_sweep() -> bool:
        """Recompute every composition among active elements; True when clean.
        Restarts from scratch as soon as anything new appears, so a True return
        certifies closure of the final set up to the cap."""
        nonlocal truncated
        for i in list(active):
            for j in list(active):
                for x, y, z in head_overlaps(
                    polys[i].leading_word(), polys[j].leading_word()
                ):
                    w = x + y + z
                    if len(w) > cap:
                        truncated = True
                        continue
                    comp = Composition(polys[i], polys[j], w, z, x)
                    r = normal_form(comp.result(), active_polys(), shared_memo())
                    if not r.is_zero():
                        insert(comp.result(), composition_cert(i, j, z, x))
                        return False
        return True

    while True:
        drain()
        tail_interreduce()
        if verification_sweep() and not pending:
            break

    status = "truncated" if truncated else "complete"
    order = sorted(active, key=lambda k: alg.word_key(polys[k].leading_word()))
    elements = [polys[k] for k in order]
    gb = GroebnerBasis(alg, elements, status, cap, log)
    if certify:
        gb.certificates = [certs[k] for k in order]  # type: ignore[attr-defined]
        gb.certified_inputs = list(rels)  # type: ignore[attr-defined]
    return gb
