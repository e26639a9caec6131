"""Exact coefficients: Gaussian rationals and polynomials in one real parameter.

The coefficient ring is Q(i)[a] where `a` is a commuting formal parameter that
is fixed by conjugation.  All arithmetic is exact; floats never appear here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

RatLike = Union[int, Fraction]


class QI:
    """A Gaussian rational re + im*i with exact Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re: RatLike = 0, im: RatLike = 0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    def __add__(self, other: "QI") -> "QI":
        return QI(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QI") -> "QI":
        return QI(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "QI") -> "QI":
        return QI(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "QI") -> "QI":
        n = other.norm2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QI(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __neg__(self) -> "QI":
        return QI(-self.re, -self.im)

    def conjugate(self) -> "QI":
        return QI(self.re, -self.im)

    def norm2(self) -> Fraction:
        """|z|^2, an exact nonnegative rational."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, QI):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"QI({self.re}, {self.im})"


QI_ZERO = QI(0)
QI_ONE = QI(1)


def _coerce_qi(value) -> QI:
    if isinstance(value, QI):
        return value
    if isinstance(value, (int, Fraction)):
        return QI(value)
    raise TypeError(f"cannot coerce {value!r} to a Gaussian rational")


class Scalar:
    """An element of Q(i)[a]: a polynomial in the formal parameter `a`.

    Stored as a map exponent -> nonzero QI coefficient.  Conjugation maps
    i -> -i and leaves the parameter fixed (it stands for a real number).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = _coerce_qi(v)
                if not v.is_zero():
                    c[int(e)] = v
        self.coeffs = c

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "Scalar":
        return Scalar()

    @staticmethod
    def one() -> "Scalar":
        return Scalar({0: QI_ONE})

    @staticmethod
    def imag_unit() -> "Scalar":
        return Scalar({0: QI(0, 1)})

    @staticmethod
    def parameter() -> "Scalar":
        return Scalar({1: QI_ONE})

    @staticmethod
    def from_rational(value: RatLike) -> "Scalar":
        return Scalar({0: QI(Fraction(value))})

    @staticmethod
    def from_qi(value: QI) -> "Scalar":
        return Scalar({0: value})

    @staticmethod
    def coerce(value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, QI):
            return Scalar.from_qi(value)
        if isinstance(value, (int, Fraction)):
            return Scalar.from_rational(value)
        raise TypeError(f"cannot coerce {value!r} to Scalar")

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "Scalar") -> "Scalar":
        c = dict(self.coeffs)
        for e, v in other.coeffs.items():
            s = c.get(e, QI_ZERO) + v
            if s.is_zero():
                c.pop(e, None)
            else:
                c[e] = s
        out = Scalar.__new__(Scalar)
        out.coeffs = c
        return out

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self + (-other)

    def __neg__(self) -> "Scalar":
        out = Scalar.__new__(Scalar)
        out.coeffs = {e: -v for e, v in self.coeffs.items()}
        return out

    def __mul__(self, other: "Scalar") -> "Scalar":
        c: dict = {}
        for e1, v1 in self.coeffs.items():
            for e2, v2 in other.coeffs.items():
                e = e1 + e2
                s = c.get(e, QI_ZERO) + v1 * v2
                if s.is_zero():
                    c.pop(e, None)
                else:
                    c[e] = s
        out = Scalar.__new__(Scalar)
        out.coeffs = c
        return out

    def __truediv__(self, other: "Scalar") -> "Scalar":
        if other.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        if not other.is_constant():
            raise ValueError("cannot divide by a parameter-dependent scalar")
        inv = QI_ONE / other.constant()
        out = Scalar.__new__(Scalar)
        out.coeffs = {e: v * inv for e, v in self.coeffs.items()}
        return out

    def conjugate(self) -> "Scalar":
        out = Scalar.__new__(Scalar)
        out.coeffs = {e: v.conjugate() for e, v in self.coeffs.items()}
        return out

    # -- predicates and extraction ------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return all(e == 0 for e in self.coeffs)

    def constant(self) -> QI:
        """The value as a Gaussian rational; requires a parameter-free scalar."""
        if not self.is_constant():
            raise ValueError(f"scalar {self} is not constant in the parameter")
        return self.coeffs.get(0, QI_ZERO)

    def is_one(self) -> bool:
        return self.coeffs == {0: QI_ONE}

    def parameter_degree(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    def evaluate(self, value: RatLike) -> "Scalar":
        """Substitute a rational number for the parameter."""
        v = Fraction(value)
        total = QI_ZERO
        for e, c in self.coeffs.items():
            total = total + c * QI(v**e)
        return Scalar.from_qi(total)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    # -- canonical text -----------------------------------------------

    def _pieces(self, param_name: str = "a"):
        """Signed text pieces (sign, magnitude), exponent descending."""
        pieces = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            ppart = "" if e == 0 else (param_name if e == 1 else f"{param_name}^{e}")
            if c.im == 0:
                neg, mag = c.re < 0, _frac_text(abs(c.re))
                if ppart and mag == "1":
                    mag = ""
            elif c.re == 0:
                neg = c.im < 0
                m = abs(c.im)
                mag = "i" if m == 1 else f"{_frac_text(m)} i"
            else:
                neg, mag = False, f"({_qi_text(c)})"
            text = " ".join(t for t in (mag, ppart) if t) or "1"
            pieces.append((neg, text))
        return pieces

    def to_text(self, param_name: str = "a") -> str:
        pieces = self._pieces(param_name)
        if not pieces:
            return "0"
        parts = []
        for k, (neg, mag) in enumerate(pieces):
            if k == 0:
                parts.append(f"-{mag}" if neg else mag)
            else:
                parts.append(f"- {mag}" if neg else f"+ {mag}")
        return " ".join(parts)

    def is_simple_term(self) -> bool:
        """True when the scalar prints as a single sign-extractable monomial."""
        if len(self.coeffs) != 1:
            return False
        (c,) = self.coeffs.values()
        return c.im == 0 or c.re == 0

    def __repr__(self):
        return self.to_text()


def _frac_text(q: Fraction) -> str:
    return str(q)


def _qi_text(c: QI) -> str:
    re, im = c.re, c.im
    re_t = _frac_text(re)
    mag = abs(im)
    im_t = "i" if mag == 1 else f"{_frac_text(mag)} i"
    return f"{re_t} - {im_t}" if im < 0 else f"{re_t} + {im_t}"


SCALAR_ZERO = Scalar.zero()
SCALAR_ONE = Scalar.one()
