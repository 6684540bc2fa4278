"""Parse Laurent-polynomial expressions and format them canonically.

Grammar, loosest binding first::

    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := ("-" | "+") unary | power
    power    := atom ("^" exponent)?
    exponent := ["-" | "+"] INT ("^" exponent)? | "(" ["-" | "+"] INT ")"
    atom     := INT | NAME | "(" expr ")"

``**`` is accepted for ``^``.  Multiplication is always explicit and the
divisor of ``/`` must evaluate to a single term that divides every
coefficient of the dividend exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .laurent import LaurentPolynomial

__all__ = [
    "DivisionByNonMonomial",
    "ExpressionSyntaxError",
    "InexactCoefficientDivision",
    "NegativePowerOfPolynomial",
    "ParseContext",
    "ParseError",
    "UnknownVariable",
    "default_names",
    "format_poly",
    "parse",
]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^()]))")


class ParseError(ValueError):
    """Base class for expression errors; ``pos`` is a 0-based offset into the source."""

    def __init__(self, message: str, src: str = "", pos: int = 0):
        self.src = src
        self.pos = pos
        self.message = message
        super().__init__(f"{message} at position {pos}" + (f"\n  {src}\n  {' ' * pos}^" if src else ""))


class ExpressionSyntaxError(ParseError):
    pass


class UnknownVariable(ParseError):
    pass


class DivisionByNonMonomial(ParseError):
    pass


class InexactCoefficientDivision(ParseError):
    pass


class NegativePowerOfPolynomial(ParseError):
    pass


@dataclass(frozen=True)
class ParseContext:
    """Ordered variable names; their order fixes the coordinate order."""

    names: tuple[str, ...]

    def __init__(self, names):
        if isinstance(names, str):
            names = [n.strip() for n in names.split(",")]
        names = tuple(names)
        if not names:
            raise ValueError("at least one variable name is required")
        for n in names:
            if not _NAME_RE.match(n):
                raise ValueError(f"invalid variable name {n!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, "names", names)

    @property
    def dim(self) -> int:
        return len(self.names)


def default_names(dim: int) -> tuple[str, ...]:
    if dim <= 3:
        return ("x", "y", "z")[:dim]
    return tuple(f"x{i}" for i in range(1, dim + 1))


@dataclass(frozen=True)
class _Token:
    kind: str  # "int", "name", "op" or "end"
    text: str
    pos: int


def _tokenize(src: str) -> list[_Token]:
    tokens = []
    pos = 0
    n = len(src)
    while True:
        while pos < n and src[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN_RE.match(src, pos)
        if m is None or m.end() == pos:
            raise ExpressionSyntaxError(f"unexpected character {src[pos]!r}", src, pos)
        kind = m.lastgroup
        text = m.group(kind)
        start = m.start(kind)
        if text == "**":
            text = "^"
        tokens.append(_Token(kind, text, start))
        pos = m.end()
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, src: str, ctx: ParseContext):
        self.src = src
        self.ctx = ctx
        self.tokens = _tokenize(src)
        self.i = 0
        self.index = {name: k for k, name in enumerate(ctx.names)}

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at_op(self, *ops: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def error(self, cls, message: str, tok: _Token | None = None):
        tok = tok or self.tok
        return cls(message, self.src, tok.pos)

    def expect(self, op: str) -> _Token:
        if not self.at_op(op):
            found = "end of input" if self.tok.kind == "end" else repr(self.tok.text)
            raise self.error(ExpressionSyntaxError, f"expected {op!r}, found {found}")
        return self.advance()

    def parse(self) -> LaurentPolynomial:
        if self.tok.kind == "end":
            raise self.error(ExpressionSyntaxError, "empty expression")
        value = self.expr()
        if self.tok.kind != "end":
            raise self.error(ExpressionSyntaxError, f"unexpected token {self.tok.text!r}")
        return value

    def expr(self) -> LaurentPolynomial:
        value = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> LaurentPolynomial:
        value = self.unary()
        while self.at_op("*", "/"):
            op_tok = self.advance()
            rhs = self.unary()
            if op_tok.text == "*":
                value = value * rhs
            else:
                value = self.divide(value, rhs, op_tok)
        return value

    def divide(self, num: LaurentPolynomial, den: LaurentPolynomial, op_tok: _Token) -> LaurentPolynomial:
        if len(den) != 1:
            raise self.error(DivisionByNonMonomial,
                             "divisor must be a single nonzero monomial", op_tok)
        (e, c), = den.terms()
        out = {}
        for v, a in num.terms():
            q, r = divmod(a, c)
            if r:
                raise self.error(InexactCoefficientDivision,
                                 f"coefficient {a} is not divisible by {c}", op_tok)
            out[tuple(i - j for i, j in zip(v, e))] = q
        return LaurentPolynomial(out, self.ctx.dim)

    def unary(self) -> LaurentPolynomial:
        if self.at_op("-"):
            self.advance()
            return -self.unary()
        if self.at_op("+"):
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> LaurentPolynomial:
        base = self.atom()
        if not self.at_op("^"):
            return base
        caret = self.advance()
        exp_tok = self.tok
        n = self.exponent()
        if n >= 0:
            return base ** n
        if len(base) != 1:
            raise self.error(NegativePowerOfPolynomial,
                             "negative power of a polynomial that is not a monomial", caret)
        (e, c), = base.terms()
        if c not in (1, -1):
            raise self.error(InexactCoefficientDivision,
                             f"negative power of coefficient {c} is not an integer", exp_tok)
        return base ** n

    def exponent(self) -> int:
        if self.at_op("("):
            self.advance()
            n = self.signed_int()
            self.expect(")")
            return n
        n = self.signed_int()
        if self.at_op("^"):
            self.advance()
            tok = self.tok
            m = self.exponent()
            if m < 0 and n not in (1, -1):
                raise self.error(ExpressionSyntaxError, "exponent does not evaluate to an integer", tok)
            n = n ** m if m >= 0 else n ** -m
        return n

    def signed_int(self) -> int:
        sign = 1
        if self.at_op("-", "+"):
            sign = -1 if self.advance().text == "-" else 1
        if self.tok.kind != "int":
            found = "end of input" if self.tok.kind == "end" else repr(self.tok.text)
            raise self.error(ExpressionSyntaxError, f"expected an integer exponent, found {found}")
        return sign * int(self.advance().text)

    def atom(self) -> LaurentPolynomial:
        tok = self.tok
        d = self.ctx.dim
        if tok.kind == "int":
            self.advance()
            return LaurentPolynomial.constant(int(tok.text), d)
        if tok.kind == "name":
            if tok.text not in self.index:
                raise self.error(UnknownVariable,
                                 f"unknown variable {tok.text!r} (known: {', '.join(self.ctx.names)})")
            self.advance()
            return LaurentPolynomial.variable(self.index[tok.text], d)
        if self.at_op("("):
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise self.error(ExpressionSyntaxError, f"expected a number, variable or '(', found {found}")


def parse(src: str, ctx: ParseContext | str | list[str]) -> LaurentPolynomial:
    """Parse ``src`` into a polynomial with exact integer coefficients.

    >>> parse("(1+x)^2*(1-1/x)", "x") == parse("x^2 + x - 1 - x^-1", "x")
    True
    """
    if not isinstance(ctx, ParseContext):
        ctx = ParseContext(ctx)
    return _Parser(src, ctx).parse()


def _monomial(e, names) -> str:
    parts = []
    for name, v in zip(names, e):
        if v == 1:
            parts.append(name)
        elif v:
            parts.append(f"{name}^{v}")
    return "*".join(parts)


def format_poly(P: LaurentPolynomial, names=None) -> str:
    """Canonical text: descending lex term order, explicit ``*`` and ``^``."""
    if names is None:
        names = default_names(P.dim)
    elif isinstance(names, ParseContext):
        names = names.names
    if len(names) != P.dim:
        raise ValueError(f"{len(names)} names for a polynomial in {P.dim} variables")
    if P.is_zero():
        return "0"
    out = []
    for i, (e, c) in enumerate(P.terms()):
        mono = _monomial(e, names)
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)
