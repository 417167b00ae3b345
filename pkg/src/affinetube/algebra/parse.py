"""Parser for the polynomial text format.

Accepts sums of products such as ``x5 - x1*x4 - 1/2 * x2^2 + (x1 - 1)^2``.
Variables are ``x1..xN`` in the real case; in the complex case ``z1..zN``
name holomorphic coordinates, ``c1..cN`` their conjugates and ``I`` is the
imaginary unit.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import MultiPoly
from .scalars import GaussRational


class PolyParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("id", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                tokens.append(("bad", ch, start))
            else:
                tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _line_col(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text: str, names: dict[str, int], nvars: int, allow_i: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.names = names
        self.nvars = nvars
        self.allow_i = allow_i

    def error(self, msg, tok=None):
        tok = tok or self.tokens[self.i]
        line, col = _line_col(self.text, tok[2])
        raise PolyParseError(msg, line, col)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> MultiPoly:
        if self.peek()[0] == "end":
            self.error("empty polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self):
        acc = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op_tok = self.take()
            rhs = self.unary()
            if op_tok[1] == "*":
                acc = acc * rhs
            else:
                if rhs.degree() > 0 or rhs.is_zero():
                    self.error("division only by nonzero constants", op_tok)
                acc = acc / rhs.constant_term()
        return acc

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            val = self.unary()
            return -val if tok[1] == "-" else val
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.error("exponent must be a non-negative integer", tok)
            base = base ** int(tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return MultiPoly.const(self.nvars, Fraction(int(val)))
        if kind == "id":
            if val == "I" and self.allow_i:
                return MultiPoly.const(self.nvars, GaussRational(0, 1))
            if val not in self.names:
                self.error(f"unknown variable {val!r}", tok)
            return MultiPoly.var(self.nvars, self.names[val])
        if kind == "op" and val == "(":
            inner = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.take()
            return inner
        if kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected {val!r}", tok)


def parse_poly(text: str, nvars: int, complex_vars: bool = False) -> MultiPoly:
    """Parse ``text`` into a MultiPoly.

    Real case: ``nvars`` variables ``x1..x{nvars}``.  Complex case: ``nvars``
    holomorphic variables ``z1..`` followed by their conjugates ``c1..``, for
    a ring of ``2*nvars`` variables.
    """
    if complex_vars:
        names = {f"z{i + 1}": i for i in range(nvars)}
        names.update({f"c{i + 1}": nvars + i for i in range(nvars)})
        return _Parser(text, names, 2 * nvars, True).parse()
    names = {f"x{i + 1}": i for i in range(nvars)}
    return _Parser(text, names, nvars, False).parse()


def parse_rational(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc
