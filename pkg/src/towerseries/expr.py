"""Arithmetic expressions in one variable ``x``: parsing, rendering, evaluation.

Grammar (whitespace is ignored)::

    expr   := term  (("+" | "-") term)*
    term   := power (("*" | "/") power)*
    power  := unary ("^" INTEGER)*
    unary  := "-" unary | atom
    atom   := NUMBER | "x" | NAME "(" expr ")" | "(" expr ")"

Unary minus binds tighter than ``^``, so ``-x^2`` is ``(-x)^2``.  Integer
literals become ``IntLit``; literals with a decimal point or exponent become
exact ``RatLit`` values (``0.75`` is 3/4).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Callable, FrozenSet, List, Optional, Union

from .coeffs import ELEMENTARY_TAGS, Field, fdiv, felem, field_of
from .errors import TowerSeriesError
from .stream import Stream, take

__all__ = [
    "Expr",
    "Var",
    "IntLit",
    "RatLit",
    "Neg",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "Pow",
    "Call",
    "ExprSyntaxError",
    "UnknownFunction",
    "parse_expr",
    "render_expr",
    "evaluate",
    "eval_tower",
    "eval_series",
]


class ExprSyntaxError(TowerSeriesError):
    def __init__(self, message: str, offset: int, expected: FrozenSet[str] = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


class UnknownFunction(ExprSyntaxError):
    def __init__(self, name: str, offset: int):
        self.name = name
        super().__init__(f"unknown function {name!r}", offset, frozenset(ELEMENTARY_TAGS))


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class IntLit:
    n: int


@dataclass(frozen=True)
class RatLit:
    p: int
    q: int


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Call:
    name: str
    arg: "Expr"


Expr = Union[Var, IntLit, RatLit, Neg, Add, Sub, Mul, Div, Pow, Call]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


@dataclass
class _Token:
    kind: str  # "num", "name", "op" or "end"
    text: str
    offset: int


def _tokenize(src: str) -> List[_Token]:
    data = src.encode("utf-8")
    text = data.decode("utf-8")
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:]
            if not rest.strip():
                break
            bad = pos + (len(rest) - len(rest.lstrip()))
            raise ExprSyntaxError(f"unexpected character {text[bad]!r}", len(text[:bad].encode()),
                                  frozenset({"number", "x", "function", "(", "-"}))
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append(_Token(kind, m.group(kind), len(text[:start].encode())))
        pos = m.end()
    tokens.append(_Token("end", "", len(data)))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.tokens = _tokenize(src)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at_op(self, *ops: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def expect_op(self, op: str):
        if not self.at_op(op):
            raise ExprSyntaxError(f"unexpected {self._describe()}", self.tok.offset, frozenset({op}))
        self.advance()

    def _describe(self) -> str:
        return "end of input" if self.tok.kind == "end" else repr(self.tok.text)

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise ExprSyntaxError(f"unexpected {self._describe()}", self.tok.offset,
                                  frozenset({"+", "-", "*", "/", "^", "end of input"}))
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            e = Add(e, self.term()) if op == "+" else Sub(e, self.term())
        return e

    def term(self) -> Expr:
        e = self.power()
        while self.at_op("*", "/"):
            op = self.advance().text
            e = Mul(e, self.power()) if op == "*" else Div(e, self.power())
        return e

    def power(self) -> Expr:
        e = self.unary()
        while self.at_op("^"):
            self.advance()
            tok = self.tok
            if tok.kind != "num" or not tok.text.isdigit():
                raise ExprSyntaxError("exponent must be a non-negative integer literal", tok.offset,
                                      frozenset({"integer"}))
            self.advance()
            e = Pow(e, int(tok.text))
        return e

    def unary(self) -> Expr:
        if self.at_op("-"):
            self.advance()
            return Neg(self.unary())
        return self.atom()

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            if tok.text.isdigit():
                return IntLit(int(tok.text))
            value = Fraction(Decimal(tok.text))
            return RatLit(value.numerator, value.denominator)
        if tok.kind == "name":
            self.advance()
            if tok.text == "x":
                return Var()
            if not self.at_op("("):
                raise ExprSyntaxError(f"unknown identifier {tok.text!r}", tok.offset,
                                      frozenset({"x", "function call"}))
            if tok.text not in ELEMENTARY_TAGS:
                raise UnknownFunction(tok.text, tok.offset)
            self.advance()
            arg = self.expr()
            self.expect_op(")")
            return Call(tok.text, arg)
        if self.at_op("("):
            self.advance()
            e = self.expr()
            self.expect_op(")")
            return e
        raise ExprSyntaxError(f"unexpected {self._describe()}", tok.offset,
                              frozenset({"number", "x", "function", "(", "-"}))


def parse_expr(src: str) -> Expr:
    return _Parser(src).parse()


# -- rendering -------------------------------------------------------------

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Pow: 3, Neg: 4}
_SYMBOL = {Add: "+", Sub: "-", Mul: "*", Div: "/"}


def _prec(e: Expr) -> int:
    return _PREC.get(type(e), 5)


def _render_decimal(p: int, q: int) -> str:
    if q == 1:
        return f"{p}.0"
    with localcontext() as ctx:
        ctx.prec = len(str(p)) + 4 * len(str(q)) + 10
        text = format(Decimal(p) / Decimal(q), "f")
    if Fraction(Decimal(text)) != Fraction(p, q):
        raise ValueError(f"{p}/{q} has no finite decimal form")
    return text


def render_expr(e: Expr) -> str:
    """Text that parses back to the same tree (minimal parentheses)."""
    if isinstance(e, Var):
        return "x"
    if isinstance(e, IntLit):
        return str(e.n) if e.n >= 0 else f"(-{-e.n})"
    if isinstance(e, RatLit):
        text = _render_decimal(abs(e.p), e.q)
        return text if e.p >= 0 else f"(-{text})"
    if isinstance(e, Neg):
        inner = render_expr(e.arg)
        return "-" + (f"({inner})" if _prec(e.arg) < 4 else inner)
    if isinstance(e, Pow):
        base = render_expr(e.base)
        return (f"({base})" if _prec(e.base) < 3 else base) + f"^{e.exponent}"
    if isinstance(e, Call):
        return f"{e.name}({render_expr(e.arg)})"
    own = _prec(e)
    left, right = render_expr(e.left), render_expr(e.right)
    if _prec(e.left) < own:
        left = f"({left})"
    if _prec(e.right) <= own:
        right = f"({right})"
    return f"{left}{_SYMBOL[type(e)]}{right}"


# -- evaluation ------------------------------------------------------------


def _apply(tag: str, v):
    from . import series, tower

    if isinstance(v, tower.DTower):
        return tower.elementary(tag, v)
    if isinstance(v, series.Series):
        return series.s_elementary(tag, v)
    return felem(tag, v)


def _divide(a, b):
    if isinstance(a, Stream) or isinstance(b, Stream):
        return a / b
    return fdiv(a, b)


def evaluate(e: Expr, var: Any, field: Field):
    """Interpret ``e`` with ``x`` bound to ``var`` (a scalar, tower or series)."""
    if isinstance(e, Var):
        return var
    if isinstance(e, IntLit):
        return field.from_int(e.n)
    if isinstance(e, RatLit):
        return field.coerce(Fraction(e.p, e.q))
    if isinstance(e, Neg):
        return -evaluate(e.arg, var, field)
    if isinstance(e, Add):
        return evaluate(e.left, var, field) + evaluate(e.right, var, field)
    if isinstance(e, Sub):
        return evaluate(e.left, var, field) - evaluate(e.right, var, field)
    if isinstance(e, Mul):
        return evaluate(e.left, var, field) * evaluate(e.right, var, field)
    if isinstance(e, Div):
        return _divide(evaluate(e.left, var, field), evaluate(e.right, var, field))
    if isinstance(e, Pow):
        base = evaluate(e.base, var, field)
        if e.exponent == 0:
            return field.one if not isinstance(base, Stream) else base ** 0
        return base ** e.exponent
    if isinstance(e, Call):
        return _apply(e.name, evaluate(e.arg, var, field))
    raise TypeError(f"not an expression: {e!r}")


def _as_expr(e: Union[str, Expr]) -> Expr:
    return parse_expr(e) if isinstance(e, str) else e


def tower_function(e: Union[str, Expr], field: Field) -> Callable:
    """``e`` as a function from towers to towers."""
    from . import tower

    e = _as_expr(e)

    def fn(t):
        v = evaluate(e, t, field)
        return v if isinstance(v, tower.DTower) else tower.Constant(v)

    return fn


def eval_tower(e: Union[str, Expr], x, n: int, field: Optional[Field] = None) -> List[Any]:
    """First ``n`` derivatives of ``e`` at ``x``."""
    from . import tower

    field = field or field_of(x)
    x = field.coerce(x)
    return take(n, tower_function(e, field)(tower.dvar(x)))


def series_of(e: Union[str, Expr], x0, field: Field):
    """Taylor series of ``e`` about ``x0``."""
    from . import series

    e = _as_expr(e)
    x0 = field.coerce(x0)
    v = evaluate(e, series.svar(field) + x0, field)
    return v if isinstance(v, series.Series) else series.const_series(v)


def eval_series(e: Union[str, Expr], x0, n: int, field: Optional[Field] = None) -> List[Any]:
    """First ``n`` Taylor coefficients of ``e`` about ``x0``."""
    field = field or field_of(x0)
    return take(n, series_of(e, x0, field))
