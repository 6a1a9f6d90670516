"""Text grammar for polynomials and differential operators.

Accepted tokens: integer and rational literals (``3``, ``3/2``), variables
``x0``..``x9`` with ``x y z w`` as aliases for the first four, partials
``d0``..``d9``, the operators ``+ - * ^`` and parentheses.  Juxtaposition
multiplies (``2x``, ``x d0``), and in the operator algebra multiplication is
composition, so ``d0 x0`` normal-orders to ``x0 d0 + 1``.

Parse errors carry the 1-based byte offset of the offending input.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, NamedTuple, Optional

from .errors import ParseError
from .poly import MultiPoly
from .weyl import WeylOp

_ALIASES = {"x": 0, "y": 1, "z": 2, "w": 3}


class _Token(NamedTuple):
    kind: str  # NUM, XVAR, DVAR, OP, END
    value: object
    offset: int  # 1-based byte offset


def _tokenize(text: str) -> List[_Token]:
    tokens: List[_Token] = []
    i = 0
    byte_pos = 1
    n = len(text)
    while i < n:
        ch = text[i]
        start = byte_pos
        if ch in " \t\r\n":
            i += 1
            byte_pos += len(ch.encode("utf-8"))
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            num = int(text[i:j])
            den = None
            if j < n and text[j] == "/":
                k = j + 1
                if k < n and text[k].isdigit():
                    m = k
                    while m < n and text[m].isdigit():
                        m += 1
                    den = int(text[k:m])
                    j = m
            if den == 0:
                raise ParseError("zero denominator in rational literal", start)
            value = Fraction(num, den) if den is not None else Fraction(num)
            tokens.append(_Token("NUM", value, start))
            byte_pos += j - i
            i = j
            continue
        if ch in "xXyYzZwWdD":
            lower = ch.lower()
            if i + 1 < n and text[i + 1].isdigit():
                if i + 2 < n and text[i + 2].isdigit():
                    raise ParseError("variable indices run 0..9", start)
                idx = int(text[i + 1])
                if lower == "d":
                    tokens.append(_Token("DVAR", idx, start))
                elif lower == "x":
                    tokens.append(_Token("XVAR", idx, start))
                else:
                    raise ParseError(f"indexed form is only for x/d, not {ch!r}", start)
                i += 2
                byte_pos += 2
                continue
            if lower == "d":
                raise ParseError("expected a digit after 'd'", start)
            tokens.append(_Token("XVAR", _ALIASES[lower], start))
            i += 1
            byte_pos += 1
            continue
        if ch in "+-*^()":
            tokens.append(_Token("OP", ch, start))
            i += 1
            byte_pos += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", start)
    tokens.append(_Token("END", None, byte_pos))
    return tokens


class _Parser:
    """Recursive descent over the token list, producing a WeylOp."""

    def __init__(self, tokens: List[_Token], n_vars: int):
        self.tokens = tokens
        self.pos = 0
        self.n_vars = n_vars

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> WeylOp:
        value = self.expr()
        tok = self.peek()
        if tok.kind != "END":
            raise ParseError("unexpected trailing input", tok.offset)
        return value

    def expr(self) -> WeylOp:
        value = self.term()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.value in "+-":
                self.advance()
                rhs = self.term()
                value = value + rhs if tok.value == "+" else value - rhs
            else:
                return value

    def _starts_factor(self, tok: _Token) -> bool:
        return tok.kind in ("NUM", "XVAR", "DVAR") or (tok.kind == "OP" and tok.value == "(")

    def term(self) -> WeylOp:
        value = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.value == "*":
                self.advance()
                value = value * self.factor()
            elif self._starts_factor(tok):
                value = value * self.factor()
            else:
                return value

    def factor(self) -> WeylOp:
        sign = 1
        tok = self.peek()
        while tok.kind == "OP" and tok.value == "-":
            self.advance()
            sign = -sign
            tok = self.peek()
        value = self.atom()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.value == "^":
                self.advance()
                etok = self.advance()
                if etok.kind != "NUM" or etok.value.denominator != 1 or etok.value < 0:
                    raise ParseError("exponent must be a nonnegative integer", etok.offset)
                value = value ** int(etok.value)
            else:
                break
        return value * sign if sign < 0 else value

    def atom(self) -> WeylOp:
        tok = self.advance()
        if tok.kind == "NUM":
            return WeylOp.one(self.n_vars) * tok.value
        if tok.kind == "XVAR":
            if tok.value >= self.n_vars:
                raise ParseError(
                    f"variable index {tok.value} outside the declared {self.n_vars} variables",
                    tok.offset,
                )
            return WeylOp.x_gen(self.n_vars, tok.value)
        if tok.kind == "DVAR":
            if tok.value >= self.n_vars:
                raise ParseError(
                    f"partial index {tok.value} outside the declared {self.n_vars} variables",
                    tok.offset,
                )
            return WeylOp.d_gen(self.n_vars, tok.value)
        if tok.kind == "OP" and tok.value == "(":
            value = self.expr()
            closing = self.advance()
            if not (closing.kind == "OP" and closing.value == ")"):
                raise ParseError("expected ')'", closing.offset)
            return value
        raise ParseError("expected a number, variable, partial, or '('", tok.offset)


def parse_operator(text: str, n_vars: Optional[int] = None) -> WeylOp:
    """Parse operator text; infer the variable count when not given."""
    tokens = _tokenize(text)
    used = [t.value for t in tokens if t.kind in ("XVAR", "DVAR")]
    inferred = 1 + max(used) if used else 1
    n = n_vars if n_vars is not None else inferred
    return _Parser(tokens, n).parse()


def parse_poly(text: str, n_vars: Optional[int] = None) -> MultiPoly:
    """Parse polynomial text: the operator grammar with partials rejected."""
    tokens = _tokenize(text)
    for t in tokens:
        if t.kind == "DVAR":
            raise ParseError("partials are not allowed in a polynomial", t.offset)
    op = parse_operator(text, n_vars)
    out = {}
    zero = (0,) * op.n_vars
    for (xe, de), c in op.terms.items():
        # no DVAR tokens, so de is always zero here
        out[xe] = c
    return MultiPoly(op.n_vars, out)
