"""Parser for element expressions such as ``[c',c] - [e,e']`` or ``2*u - g.h'``.

``'`` is the involution (postfix), ``*`` and ``.`` are products, ``[x,y]`` is
the commutator and integers or ``a/b`` are scalars.  Rendered elements parse
back to themselves.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import Element, LeavittAlgebra, commutator, star

_TOKEN = re.compile(r"\s*(?:([A-Za-z0-9_]+)|(.))")


class ExpressionError(ValueError):
    def __init__(self, pos: int, message: str):
        super().__init__(f"at position {pos}: {message}")
        self.pos = pos


def _tokenize(text: str) -> list[tuple[int, str]]:
    tokens = []
    pos, end = 0, len(text.rstrip())
    while pos < end:
        m = _TOKEN.match(text, pos)
        start = m.start(1) if m.group(1) else m.start(2)
        tok = m.group(1) or m.group(2)
        if m.group(2) and tok not in "'*.+-()[],/":
            raise ExpressionError(start, f"unexpected character {tok!r}")
        tokens.append((start, tok))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, algebra: LeavittAlgebra, text: str):
        self.alg = algebra
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][1] if self.i < len(self.tokens) else None

    def pos(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else len(self.text)

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            want = repr(expected) if expected else "a token"
            got = "end of input" if tok is None else repr(tok)
            raise ExpressionError(self.pos(), f"expected {want}, got {got}")
        self.i += 1
        return tok

    def parse(self) -> Element:
        if not self.tokens:
            raise ExpressionError(0, "empty expression")
        out = self.expr()
        if self.peek() is not None:
            raise ExpressionError(self.pos(), f"unexpected {self.peek()!r}")
        return out

    def expr(self) -> Element:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        acc = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Element:
        acc = self.unary()
        while self.peek() in ("*", "."):
            self.take()
            acc = acc * self.unary()
        return acc

    def unary(self) -> Element:
        if self.peek() == "-":
            self.take()
            return -self.unary()
        return self.postfix()

    def postfix(self) -> Element:
        out = self.atom()
        while self.peek() == "'":
            self.take()
            out = star(out)
        return out

    def atom(self) -> Element:
        pos, tok = self.pos(), self.peek()
        if tok == "(":
            self.take()
            out = self.expr()
            self.take(")")
            return out
        if tok == "[":
            self.take()
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take("]")
            return commutator(a, b)
        tok = self.take()
        graph = self.alg.graph
        if tok in graph.vertex_index or tok in graph.edge:
            return self.alg.gen(tok)
        if tok.isdigit():
            value = Fraction(int(tok))
            if self.peek() == "/":
                self.take()
                pos2, den = self.pos(), self.take()
                if not den.isdigit() or int(den) == 0:
                    raise ExpressionError(pos2, f"bad denominator {den!r}")
                value /= int(den)
            try:
                return self.alg.scalar(value)
            except ZeroDivisionError:
                raise ExpressionError(pos, f"{value} is not defined in {self.alg.field}") from None
        if re.fullmatch(r"[A-Za-z0-9_]+", tok):
            raise ExpressionError(pos, f"{tok!r} is not a vertex or edge of the graph")
        raise ExpressionError(pos, f"unexpected {tok!r}")


def parse_element(algebra: LeavittAlgebra, text: str) -> Element:
    """Evaluate ``text`` in ``algebra`` and return the normal form."""
    return _Parser(algebra, text).parse()
