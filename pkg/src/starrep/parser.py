"""Text and JSON front end for algebra presentations.

Format (UTF-8)::

    generators: x, y;
    order: x* > y* > x > y;      # optional, descending, must cover all letters
    parameters: a;               # optional, at most one
    relations:
      x* x - 1,
      (a - x - y)^2 - x y

Expressions use juxtaposition for products, postfix `*` for the involution,
`^k` for powers, integer and `p/q` literals, and `i` for the imaginary unit.
A newline at parenthesis depth 0 separates relations unless the line clearly
continues (ends with an operator or the next line starts with one other than
`-`).  The JSON form mirrors the text one-to-one with relations as strings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .freealg import FreeStarAlgebra, Poly
from .scalars import Scalar


class PresentationError(ValueError):
    """Syntax or semantic error in a presentation, with position info."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        if line:
            message = f"line {line}, column {col}: {message}"
        super().__init__(message)


@dataclass
class Presentation:
    algebra: FreeStarAlgebra
    relations: list
    meta: dict = field(default_factory=dict)

    @property
    def generators(self):
        return self.algebra.generators

    @property
    def order(self):
        return self.algebra.order_names

    @property
    def parameters(self):
        return [self.algebra.parameter] if self.algebra.parameter else []

    def at_parameter(self, value) -> "Presentation":
        v = Fraction(value)
        rels = [r.substitute_parameter(v) for r in self.relations]
        meta = dict(self.meta)
        meta["parameter_value"] = str(v)
        return Presentation(self.algebra, rels, meta)


# -- tokenizer ----------------------------------------------------------------

_SYMBOLS = set("*+-()^,;:/>")


@dataclass
class _Tok:
    kind: str  # IDENT INT SYM NEWLINE END
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list:
    toks = []
    line, col = 1, 1
    k, n = 0, len(text)
    while k < n:
        ch = text[k]
        if ch == "#":
            while k < n and text[k] != "\n":
                k += 1
            continue
        if ch == "\n":
            toks.append(_Tok("NEWLINE", "\n", line, col))
            k += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            k += 1
            col += 1
            continue
        if ch.isdigit():
            start = k
            while k < n and text[k].isdigit():
                k += 1
            toks.append(_Tok("INT", text[start:k], line, col))
            col += k - start
            continue
        if ch.isalpha() or ch == "_":
            start = k
            while k < n and (text[k].isalnum() or text[k] == "_"):
                k += 1
            toks.append(_Tok("IDENT", text[start:k], line, col))
            col += k - start
            continue
        if ch in _SYMBOLS:
            toks.append(_Tok("SYM", ch, line, col))
            k += 1
            col += 1
            continue
        raise PresentationError(f"unexpected character {ch!r}", line, col)
    toks.append(_Tok("END", "", line, col))
    return toks


# -- expression parser ----------------------------------------------------------


class ExpressionParser:
    """Recursive-descent parser producing a Poly over a fixed algebra."""

    def __init__(self, toks: Sequence[_Tok], alg: FreeStarAlgebra):
        self.toks = [t for t in toks if t.kind != "NEWLINE"]
        self.alg = alg
        self.pos = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def next(self) -> _Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, msg: str, tok: Optional[_Tok] = None):
        tok = tok or self.peek()
        raise PresentationError(msg, tok.line, tok.col)

    def parse(self) -> Poly:
        p = self.expr()
        if self.peek().kind != "END":
            self.fail(f"unexpected token {self.peek().text!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek().kind == "SYM" and self.peek().text in "+-":
            op = self.next().text
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        sign = 1
        while self.peek().kind == "SYM" and self.peek().text in "+-":
            if self.next().text == "-":
                sign = -sign
        p = self.factor()
        while self._starts_factor():
            p = p * self.factor()
        return p if sign > 0 else -p

    def _starts_factor(self) -> bool:
        t = self.peek()
        return t.kind in ("IDENT", "INT") or (t.kind == "SYM" and t.text == "(")

    def factor(self) -> Poly:
        p = self.primary()
        while self.peek().kind == "SYM" and self.peek().text in "*^":
            op = self.next()
            if op.text == "*":
                p = p.star()
            else:
                e = self.peek()
                if e.kind != "INT":
                    self.fail("exponent must be a positive integer", e)
                self.next()
                k = int(e.text)
                if k < 1:
                    self.fail("exponent must be a positive integer", e)
                q = self.alg.one()
                for _ in range(k):
                    q = q * p
                p = q
        return p

    def primary(self) -> Poly:
        t = self.peek()
        if t.kind == "INT":
            self.next()
            num = int(t.text)
            if self.peek().kind == "SYM" and self.peek().text == "/":
                self.next()
                d = self.peek()
                if d.kind != "INT" or int(d.text) == 0:
                    self.fail("expected a nonzero integer denominator", d)
                self.next()
                return self.alg.scalar_poly(Fraction(num, int(d.text)))
            return self.alg.scalar_poly(num)
        if t.kind == "IDENT":
            self.next()
            if t.text == "i":
                return self.alg.scalar_poly(Scalar.imag_unit())
            if self.alg.parameter is not None and t.text == self.alg.parameter:
                return self.alg.scalar_poly(Scalar.parameter())
            try:
                return self.alg.gen_poly(t.text)
            except KeyError:
                self.fail(f"unknown identifier {t.text!r}", t)
        if t.kind == "SYM" and t.text == "(":
            self.next()
            p = self.expr()
            c = self.peek()
            if c.kind != "SYM" or c.text != ")":
                self.fail("expected ')'", c)
            self.next()
            return p
        self.fail(f"unexpected token {t.text!r}", t)


def parse_expression(text: str, alg: FreeStarAlgebra) -> Poly:
    return ExpressionParser(_tokenize(text), alg).parse()


# -- presentation parser ---------------------------------------------------------


def _split_list(toks: list, sep: str) -> list:
    groups, cur = [], []
    for t in toks:
        if t.kind == "SYM" and t.text == sep:
            groups.append(cur)
            cur = []
        elif t.kind != "NEWLINE":
            cur.append(t)
    groups.append(cur)
    return [g for g in groups if g]


def _name_of(group: list) -> str:
    # a name is IDENT optionally followed by a star
    if not group or group[0].kind != "IDENT":
        t = group[0] if group else _Tok("END", "", 0, 0)
        raise PresentationError("expected a name", t.line, t.col)
    name = group[0].text
    rest = group[1:]
    if rest and rest[0].kind == "SYM" and rest[0].text == "*":
        name += "*"
        rest = rest[1:]
    if rest:
        raise PresentationError(
            f"unexpected token {rest[0].text!r} in name", rest[0].line, rest[0].col
        )
    return name


_CONTINUE_END = {"+", "-", "^", "/", "(", ">", ","}
_CONTINUE_START = {"+", "^", "/", ")", ">"}


def _split_relations(toks: list) -> list:
    """Split a relation token stream on commas and depth-0 newlines."""
    groups, cur = [], []
    depth = 0
    pending_newline = False
    for t in toks:
        if t.kind == "NEWLINE":
            if depth == 0 and cur:
                pending_newline = True
            continue
        if t.kind == "SYM" and t.text == ";":
            continue
        if pending_newline:
            last = cur[-1]
            cont = (last.kind == "SYM" and last.text in _CONTINUE_END) or (
                t.kind == "SYM" and t.text in _CONTINUE_START
            )
            if not cont:
                groups.append(cur)
                cur = []
            pending_newline = False
        if t.kind == "SYM" and t.text == "(":
            depth += 1
        elif t.kind == "SYM" and t.text == ")":
            depth -= 1
        if t.kind == "SYM" and t.text == "," and depth == 0:
            groups.append(cur)
            cur = []
            pending_newline = False
        else:
            cur.append(t)
    if cur:
        groups.append(cur)
    return [g for g in groups if g]


def parse_presentation(text: str) -> Presentation:
    toks = _tokenize(text)
    sections: dict = {}
    order_seen: list = []
    k = 0

    def skip_newlines():
        nonlocal k
        while toks[k].kind == "NEWLINE":
            k += 1

    while True:
        skip_newlines()
        if toks[k].kind == "END":
            break
        head = toks[k]
        if head.kind != "IDENT" or head.text not in (
            "generators",
            "order",
            "parameters",
            "relations",
        ):
            raise PresentationError(
                f"expected a section header, got {head.text!r}", head.line, head.col
            )
        k += 1
        if not (toks[k].kind == "SYM" and toks[k].text == ":"):
            raise PresentationError("expected ':'", toks[k].line, toks[k].col)
        k += 1
        if head.text in sections:
            raise PresentationError(
                f"duplicate section {head.text!r}", head.line, head.col
            )
        if head.text == "relations":
            sections["relations"] = toks[k:-1]
            break
        body = []
        while not (toks[k].kind == "SYM" and toks[k].text == ";"):
            if toks[k].kind == "END":
                raise PresentationError(
                    f"section {head.text!r} is missing ';'", head.line, head.col
                )
            body.append(toks[k])
            k += 1
        k += 1  # consume ';'
        sections[head.text] = body
        order_seen.append(head.text)

    if "generators" not in sections:
        raise PresentationError("missing 'generators' section")
    if "relations" not in sections:
        raise PresentationError("missing 'relations' section")

    gen_names = [_name_of(g) for g in _split_list(sections["generators"], ",")]
    for nm in gen_names:
        if nm.endswith("*"):
            raise PresentationError(f"declare {nm[:-1]!r}, not its star")

    params = []
    if "parameters" in sections:
        params = [_name_of(g) for g in _split_list(sections["parameters"], ",")]
        if len(params) > 1:
            raise PresentationError("at most one parameter is supported")
    parameter = params[0] if params else None

    order = None
    if "order" in sections:
        order = [_name_of(g) for g in _split_list(sections["order"], ">")]

    alg = FreeStarAlgebra(gen_names, order=order, parameter=parameter)

    relations = []
    for group in _split_relations(sections["relations"]):
        group = group + [_Tok("END", "", group[-1].line, group[-1].col)]
        relations.append(ExpressionParser(group, alg).parse())

    return Presentation(alg, relations)


def print_presentation(p: Presentation) -> str:
    lines = [f"generators: {', '.join(p.generators)};"]
    lines.append(f"order: {' > '.join(p.order)};")
    if p.parameters:
        lines.append(f"parameters: {', '.join(p.parameters)};")
    lines.append("relations:")
    body = ",\n".join(f"  {r.to_text()}" for r in p.relations)
    if body:
        lines.append(body)
    return "\n".join(lines) + "\n"


def presentation_to_json(p: Presentation) -> dict:
    return {
        "generators": list(p.generators),
        "order": list(p.order),
        "parameters": list(p.parameters),
        "relations": [r.to_text() for r in p.relations],
    }


def parse_presentation_json(obj: dict) -> Presentation:
    gens = obj["generators"]
    order = obj.get("order") or None
    params = obj.get("parameters") or []
    if len(params) > 1:
        raise PresentationError("at most one parameter is supported")
    alg = FreeStarAlgebra(gens, order=order, parameter=params[0] if params else None)
    rels = [parse_expression(r, alg) for r in obj.get("relations", [])]
    return Presentation(alg, rels)
