"""Truncated regular-representation matrices on basis words, the faithfulness
probe, exact adjoint verification, and operator-norm estimates.

Matrices act on the span of an enumerated word list.  Columns whose image can
leave the truncation window (|b| + deg z > cap) are masked rather than
projected, so no norm or adjoint claim ever rests on a cut-off product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt
from typing import Optional, Sequence

import numpy as np

from .freealg import EMPTY_WORD, Poly, Word, star_word
from .gram import GramMatrix, hermitian_form
from .groebner import BWEnumeration, GroebnerBasis
from .scalars import QI, QI_ZERO, Scalar
from .starcheck import CheckReport, FAIL, PASS


@dataclass
class RepMatrix:
    """Matrix of multiplication by z on the enumerated words.

    side "right" sends a basis word b to b*z reduced; side "left" to z*b.
    columns[j] maps 0-based row index -> coefficient for the j-th word.
    """

    z: Optional[Poly]
    side: str
    words: list
    columns: list
    mask: frozenset
    cap: int

    @property
    def size(self) -> int:
        return len(self.words)

    def column_poly(self, alg, j: int) -> Poly:
        return Poly(alg, {self.words[i]: c for i, c in self.columns[j].items()})


def regular_matrix(
    z: Poly, gb: GroebnerBasis, bw: BWEnumeration, side: str = "right"
) -> RepMatrix:
    """Assemble the action of multiplication by z on the truncated word basis."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if gb.status != "complete":
        raise ValueError("representation matrices need a complete basis")
    alg = gb.algebra
    dz = 0 if z.is_zero() else z.degree()
    index0 = {w: k for k, w in enumerate(bw.words)}
    columns = []
    masked = set()
    for j, b in enumerate(bw.words):
        bp = alg.word_poly(b)
        image = gb.reduce(bp * z if side == "right" else z * bp)
        if len(b) + dz > bw.cap:
            masked.add(j)
        col = {}
        representable = all(w in index0 for w in image.terms)
        if representable:
            for w, c in image.terms.items():
                col[index0[w]] = c.constant()
        else:
            assert j in masked, "image left the window on an unmasked column"
        columns.append(col)
    return RepMatrix(z, side, list(bw.words), columns, frozenset(masked), bw.cap)


@dataclass
class ProbeResult:
    status: str  # "witness" | "exhausted"
    witness: Optional[Word] = None
    output_word: Optional[Word] = None
    coefficient: Optional[Scalar] = None
    path: Optional[str] = None  # "star-head" | "scan"
    message: str = ""


def faithfulness_probe(
    f: Poly, gb: GroebnerBasis, bw: BWEnumeration, gram: Optional[GramMatrix] = None
) -> ProbeResult:
    """Find a basis vector not annihilated by right multiplication with f.

    First tries the star of the leading word: when that lies among the basis
    words, the product contains the positive word head*head^* with exactly the
    leading coefficient, which is asserted.  Otherwise scans the enumeration
    in order.  Exhaustion is a truncation problem, never a verdict that the
    representation fails to separate f.  The gram argument is accepted for
    signature symmetry with the other probes and is not consulted.
    """
    r = gb.reduce(f)
    if r.is_zero():
        raise ValueError("probe requires an element that is nonzero in the quotient")
    w1, lc = r.leading()
    b = star_word(w1)
    if len(b) <= bw.cap and gb.word_is_basis_word(b):
        image = gb.reduce(gb.algebra.word_poly(b) * r)
        target = b + star_word(b)  # = star(w1) . w1
        got = image.coefficient(target)
        assert got == lc, "leading positive word must carry the leading coefficient"
        return ProbeResult("witness", b, target, got, "star-head")
    for b in bw.words:
        image = gb.reduce(gb.algebra.word_poly(b) * r)
        if not image.is_zero():
            w, c = image.leading()
            return ProbeResult("witness", b, w, c, "scan")
    return ProbeResult(
        "exhausted",
        message=f"no witness among basis words up to degree {bw.cap}; raise the cap",
    )


def adjoint_check(
    z: Poly, gb: GroebnerBasis, bw: BWEnumeration, gram: GramMatrix
) -> CheckReport:
    """Exact verification of <u.z, v> = <u, v.z*> on the safe window."""
    alg = gb.algebra
    index = {w: k + 1 for k, w in enumerate(gram.words)}
    dz = 0 if z.is_zero() else z.degree()
    zs = z.star()
    safe = [w for w in gram.words if len(w) + dz <= bw.cap]
    witnesses = []
    for u in safe:
        uz = gb.reduce(alg.word_poly(u) * z)
        if any(w not in index for w in uz.terms):
            continue
        for v in safe:
            vzs = gb.reduce(alg.word_poly(v) * zs)
            if any(w not in index for w in vzs.terms):
                continue
            lhs = hermitian_form(gram, index, uz, alg.word_poly(v))
            rhs = hermitian_form(gram, index, alg.word_poly(u), vzs)
            if lhs != rhs:
                witnesses.append(
                    {
                        "u": alg.word_text(u),
                        "v": alg.word_text(v),
                        "lhs": Scalar.from_qi(lhs).to_text(),
                        "rhs": Scalar.from_qi(rhs).to_text(),
                    }
                )
    verdict = FAIL if witnesses else PASS
    return CheckReport(
        "adjoint",
        verdict,
        witnesses,
        cap=bw.cap,
        details={"operator": z.to_text(), "window": len(safe)},
    )


@dataclass
class NormReport:
    value: float
    residual: float
    iterations: int
    unmasked: int


def _ldl(a: list) -> tuple:
    """Exact LDL* factorization of a Hermitian positive-definite QI matrix:
    A = L D L* with unit lower-triangular L and positive diagonal D."""
    n = len(a)
    L = [[QI_ZERO] * n for _ in range(n)]
    D: list = []
    for j in range(n):
        d = a[j][j]
        for k in range(j):
            d = d - L[j][k] * L[j][k].conjugate() * QI(D[k])
        if not d.is_real() or d.re <= 0:
            raise ValueError("matrix is not positive definite")
        D.append(d.re)
        L[j][j] = QI(1)
        for i in range(j + 1, n):
            s = a[i][j]
            for k in range(j):
                s = s - L[i][k] * L[j][k].conjugate() * QI(D[k])
            L[i][j] = s / QI(D[j])
    return L, D


def norm_estimate(M: RepMatrix, gram: GramMatrix, tol: float = 1e-12) -> NormReport:
    """Operator norm of the unmasked block in the Gram inner product.

    Exact steps: restrict to unmasked columns, form the Hermitian matrices
    A = conj(G) (so that ||p||^2 = p^H A p) for the target and source spaces,
    LDL*-factor both, and change coordinates exactly; the only floating-point
    step is the final power iteration on T^H T, whose eigen-residual is
    reported.
    """
    cols = [j for j in range(M.size) if j not in M.mask]
    if not cols:
        raise ValueError("every column is masked; nothing to estimate")
    n = M.size
    # A = conj(G): <p,q> = q^H A p under the linear-first convention
    A = [[gram.entries[i][j].conjugate() for j in range(n)] for i in range(n)]
    A_sub = [[A[cols[i]][cols[j]] for j in range(len(cols))] for i in range(len(cols))]
    L, D = _ldl(A)
    Ls, Ds = _ldl(A_sub)

    # C = L^H B, where B is the matrix with the selected columns
    m = len(cols)
    B = [[M.columns[cols[j]].get(i, QI_ZERO) for j in range(m)] for i in range(n)]
    C = [[QI_ZERO] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            s = QI_ZERO
            for k in range(i, n):
                s = s + L[k][i].conjugate() * B[k][j]
            C[i][j] = s
    # X = C (Ls^H)^{-1}: solve X Ls^H = C column block by back substitution
    X = [[QI_ZERO] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            s = C[i][j]
            for k in range(j):
                s = s - X[i][k] * Ls[j][k].conjugate()
            X[i][j] = s  # Ls has unit diagonal
    # T = D^{1/2} X Ds^{-1/2}, in floats
    T = np.zeros((n, m), dtype=complex)
    for i in range(n):
        di = sqrt(float(D[i]))
        for j in range(m):
            c = X[i][j]
            T[i, j] = complex(float(c.re), float(c.im)) * di / sqrt(float(Ds[j]))

    H = T.conj().T @ T
    if not np.any(H):
        return NormReport(0.0, 0.0, 0, m)
    v = np.ones(m, dtype=complex) / sqrt(m)
    lam = 0.0
    iterations = 0
    residual = float("inf")
    for iterations in range(1, 100001):
        w = H @ v
        nw = np.linalg.norm(w)
        if nw == 0:
            lam, residual = 0.0, 0.0
            break
        v = w / nw
        lam = float(np.real(np.vdot(v, H @ v)))
        residual = float(np.linalg.norm(H @ v - lam * v))
        if residual <= tol * max(1.0, lam):
            break
    return NormReport(sqrt(max(lam, 0.0)), residual, iterations, m)
