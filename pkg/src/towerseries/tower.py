"""Derivative towers: ``[f, f', f'', ...]`` at a point, as a differential algebra.

A tower is either a ``Node`` (lazy head, lazy tail) or a ``Constant`` ``c``,
which behaves exactly like ``c, 0, 0, ...`` but lets arithmetic short-circuit:
constant-by-tower products are plain scalings, and division by a constant
never goes through the general quotient recurrence.

Products use the binomial convolution
``(xy)^(n) = sum_k C(n, k) x^(k) y^(n-k)`` walked row by row along a lazily
generated Pascal triangle, so n derivatives cost O(n^2) coefficient products.
The textbook Leibniz recursion is kept as ``naive_mul`` for reference; its
cost doubles with every derivative.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from functools import reduce
from typing import Any, Callable, Iterable, List, Sequence

from .coeffs import fdiv, felem, field_of
from .errors import Unbounded
from .stream import LazyCell, Stream, delay, fix, map_stream, take

__all__ = [
    "DTower",
    "Node",
    "Constant",
    "dvar",
    "dcst",
    "hd",
    "df",
    "add",
    "sub",
    "neg",
    "scalar_mul",
    "dmap",
    "dzip",
    "dzip3",
    "mul",
    "naive_mul",
    "div",
    "recip",
    "sqr",
    "exp",
    "log",
    "sqrt",
    "sin",
    "cos",
    "sincos",
    "tan",
    "atan",
    "asin",
    "acos",
    "elementary",
    "PascalTriangle",
    "pascal",
    "fold_tower",
    "tower_sum",
    "tower_product",
    "from_values",
]


class DTower(Stream):
    """Common base for both tower variants; carries the arithmetic operators."""

    __slots__ = ()

    def __add__(self, other):
        return add(self, _lift(other))

    def __radd__(self, other):
        return add(_lift(other), self)

    def __sub__(self, other):
        return sub(self, _lift(other))

    def __rsub__(self, other):
        return sub(_lift(other), self)

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        if isinstance(other, DTower):
            return mul(self, other)
        return scalar_mul(other, self)

    def __rmul__(self, other):
        return scalar_mul(other, self)

    def __truediv__(self, other):
        return div(self, _lift(other))

    def __rtruediv__(self, other):
        return div(_lift(other), self)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = None
        for _ in range(k):
            result = self if result is None else mul(result, self)
        return Constant(field_of_tower(self).one) if result is None else result


class Node(DTower):
    __slots__ = ()


class Constant(DTower):
    """``c`` followed by zeros; the zero constant's tail is itself."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value
        head = LazyCell.of(value)
        if value == 0:
            Stream.__init__(self, head, LazyCell.of(self))
        else:
            Stream.__init__(self, head, LazyCell(lambda: Constant(field_of(value).zero)))

    def __repr__(self) -> str:
        return f"Constant({self.value!r})"


def _lift(x) -> DTower:
    return x if isinstance(x, DTower) else Constant(x)


def field_of_tower(t: DTower):
    return field_of(t.head)


def node(head: Callable[[], Any], tail: Callable[[], DTower]) -> Node:
    return Node.cons(head, tail)


def from_values(values: Sequence[Any], rest=None) -> DTower:
    """Tower with the given leading values, then ``rest`` (default: zeros)."""
    values = list(values)
    if rest is None:
        rest = Constant(field_of(values[-1]).zero) if values else Constant(0)
    t = rest
    for v in reversed(values):
        t = Node(LazyCell.of(v), LazyCell.of(t))
    return t


def tower_from_stream(s: Stream) -> Node:
    return node(lambda: s.head, lambda: tower_from_stream(s.tail))


# -- basic constructors ----------------------------------------------------


def dcst(c) -> Constant:
    return Constant(c)


def dvar(x) -> Node:
    """The differentiation variable at ``x``: ``[x, 1, 0, 0, ...]``."""
    one = field_of(x).one
    return Node(LazyCell.of(x), LazyCell.of(Constant(one)))


def hd(t: DTower):
    return t.head


def df(t: DTower) -> DTower:
    return t.tail


# -- linear operations -----------------------------------------------------


def _linear_map(f: Callable[[Any], Any], t: DTower) -> DTower:
    """Map a linear function (f(0) = 0) element-wise, keeping constants constant."""
    if isinstance(t, Constant):
        return Constant(f(t.value))
    return node(lambda: f(t.head), lambda: _linear_map(f, t.tail))


def dmap(f: Callable[[Any], Any], t: DTower) -> DTower:
    """Element-wise map.  A constant is unrolled unless ``f`` preserves zero."""
    if isinstance(t, Constant):
        zero = field_of(t.value).zero
        if f(zero) == 0:
            return Constant(f(t.value))
    return node(lambda: f(t.head), lambda: dmap(f, t.tail))


def dzip(op: Callable[[Any, Any], Any], a: DTower, b: DTower) -> DTower:
    return node(lambda: op(a.head, b.head), lambda: dzip(op, a.tail, b.tail))


def add(a: DTower, b: DTower) -> DTower:
    if isinstance(a, Constant):
        if isinstance(b, Constant):
            return Constant(a.value + b.value)
        return node(lambda: a.value + b.head, lambda: b.tail)
    if isinstance(b, Constant):
        return node(lambda: a.head + b.value, lambda: a.tail)
    return node(lambda: a.head + b.head, lambda: add(a.tail, b.tail))


def neg(a: DTower) -> DTower:
    return _linear_map(operator.neg, a)


def sub(a: DTower, b: DTower) -> DTower:
    if isinstance(a, Constant):
        if isinstance(b, Constant):
            return Constant(a.value - b.value)
        return node(lambda: a.value - b.head, lambda: neg(b.tail))
    if isinstance(b, Constant):
        return node(lambda: a.head - b.value, lambda: a.tail)
    return node(lambda: a.head - b.head, lambda: sub(a.tail, b.tail))


def scalar_mul(c, a: DTower) -> DTower:
    return _linear_map(lambda v: c * v, a)


def sqr(a: DTower) -> DTower:
    return mul(a, a)


# -- Pascal triangle -------------------------------------------------------


def _next_row(row: List[int]) -> List[int]:
    return [a + b for a, b in zip([0] + row, row + [0])]


def _binoms() -> Stream:
    return fix(lambda rows: Stream.cons(lambda: [1], lambda: map_stream(_next_row, rows)))


@dataclass(frozen=True)
class PascalTriangle:
    """``binoms``: rows C(n, 0..n).  ``bint``: rows from n = 1 without the last entry."""

    binoms: Stream
    bint: Stream


def pascal() -> PascalTriangle:
    binoms = _binoms()
    bint = delay(lambda: map_stream(lambda row: row[:-1], binoms.tail))
    return PascalTriangle(binoms, bint)


_TRIANGLE = pascal()


def dzip3(row: Sequence[int], a: Iterable[Any], b: Iterable[Any]):
    """``sum_k row[k] * a[k] * b[k]`` over the (finite) length of ``row``.

    ``a`` and ``b`` may be towers or lists; only ``len(row)`` elements are read.
    """
    terms = (k * p * q for k, p, q in zip(row, a, b))
    return reduce(operator.add, terms)


def _int_row(row: List[int], like) -> List[Any]:
    if isinstance(like, float):
        from_int = field_of(like).from_int
        return [from_int(c) for c in row]
    return row


# -- products and quotients ------------------------------------------------


def mul(x: DTower, y: DTower) -> DTower:
    """Product via the binomial convolution; O(n^2) for n derivatives."""
    if isinstance(x, Constant):
        if isinstance(y, Constant):
            return Constant(x.value * y.value)
        return scalar_mul(x.value, y)
    if isinstance(y, Constant):
        return scalar_mul(y.value, x)
    return _convloop(_TRIANGLE.binoms, x, y, LazyCell.of([]))


def _convloop(rows: Stream, x: DTower, y: DTower, aux: LazyCell) -> Node:
    # an = y_n, y_(n-1), ..., y_0 : the reversed prefix of y, grown one step per element
    an = LazyCell(lambda: [y.head] + aux.force())

    def head():
        ys = an.force()
        return dzip3(_int_row(rows.head, ys[0]), x, ys)

    return node(head, lambda: _convloop(rows.tail, x, y.tail, an))


def naive_mul(x: DTower, y: DTower) -> DTower:
    """Leibniz rule ``(x0 :> x')(y0 :> y') = x0 y0 :> x y' + x' y``; exponential cost."""
    if isinstance(x, Constant) and isinstance(y, Constant):
        return Constant(x.value * y.value)
    return node(lambda: x.head * y.head, lambda: add(naive_mul(x, y.tail), naive_mul(x.tail, y)))


def div(x: DTower, y: DTower) -> DTower:
    """Quotient ``w = x / y`` from the inverted binomial convolution.

    ``w_n = (x_n - sum_{k<n} C(n, k) y_(n-k) w_k) / y_0``, using the trimmed
    triangle (rows from n = 1, last entry dropped) and the already produced
    prefix of ``w`` itself.
    """
    if isinstance(y, Constant):
        c = y.value
        if isinstance(x, Constant):
            return Constant(fdiv(x.value, c))
        return _linear_map(lambda v: fdiv(v, c), x)

    def build(w: DTower) -> Node:
        return node(
            lambda: fdiv(x.head, y.head),
            lambda: _divloop(_TRIANGLE.bint, x.tail, y.tail, LazyCell.of([]), w, y),
        )

    return fix(build, Node)


def _divloop(rows: Stream, p: DTower, yq: DTower, t: LazyCell, w: DTower, y: DTower) -> Node:
    yt = LazyCell(lambda: [yq.head] + t.force())

    def head():
        ys = yt.force()
        acc = dzip3(_int_row(rows.head, ys[0]), ys, w)
        return fdiv(p.head - acc, y.head)

    return node(head, lambda: _divloop(rows.tail, p.tail, yq.tail, yt, w, y))


def recip(x: DTower) -> DTower:
    """``ip = 1/x0 :> -x' * ip^2``."""
    if isinstance(x, Constant):
        return Constant(fdiv(field_of(x.value).one, x.value))
    return fix(lambda ip: node(lambda: fdiv(field_of(x.head).one, x.head), lambda: neg(mul(x.tail, sqr(ip)))), Node)


# -- elementary functions --------------------------------------------------
#
# Each one is the self-referential derivative recurrence: the tail of f(x) is
# x' times an expression in f(x) (or its companion function).  Heads are
# evaluated by the coefficient field; over rationals only the few exactly
# representable values are accepted (FieldMismatch otherwise).


def _head_of(tag: str, x: DTower) -> Callable[[], Any]:
    return lambda: felem(tag, x.head)


def _half(t: DTower) -> DTower:
    return _linear_map(lambda v: fdiv(v, 2), t)


def exp(x: DTower) -> DTower:
    if isinstance(x, Constant):
        return Constant(felem("exp", x.value))
    return fix(lambda w: node(_head_of("exp", x), lambda: mul(x.tail, w)), Node)


def log(x: DTower) -> DTower:
    if isinstance(x, Constant):
        return Constant(felem("log", x.value))
    return node(_head_of("log", x), lambda: div(x.tail, x))


def sqrt(x: DTower) -> DTower:
    if isinstance(x, Constant):
        return Constant(felem("sqrt", x.value))
    return fix(lambda w: node(_head_of("sqrt", x), lambda: _half(div(x.tail, w))), Node)


def sincos(x: DTower):
    """``(sin x, cos x)`` as one mutually recursive pair."""
    if isinstance(x, Constant):
        return Constant(felem("sin", x.value)), Constant(felem("cos", x.value))
    s = delay(lambda: node(_head_of("sin", x), lambda: mul(x.tail, c)), Node)
    c = delay(lambda: node(_head_of("cos", x), lambda: neg(mul(x.tail, s))), Node)
    return s, c


def sin(x: DTower) -> DTower:
    return sincos(x)[0]


def cos(x: DTower) -> DTower:
    return sincos(x)[1]


def tan(x: DTower) -> DTower:
    if isinstance(x, Constant):
        return Constant(felem("tan", x.value))
    return fix(lambda w: node(_head_of("tan", x), lambda: mul(x.tail, add(Constant(1), sqr(w)))), Node)


def atan(x: DTower) -> DTower:
    if isinstance(x, Constant):
        return Constant(felem("atan", x.value))
    return node(_head_of("atan", x), lambda: div(x.tail, add(Constant(1), sqr(x))))


def asin(x: DTower) -> DTower:
    if isinstance(x, Constant):
        return Constant(felem("asin", x.value))
    return node(_head_of("asin", x), lambda: div(x.tail, sqrt(sub(Constant(1), sqr(x)))))


def acos(x: DTower) -> DTower:
    if isinstance(x, Constant):
        return Constant(felem("acos", x.value))
    return node(_head_of("acos", x), lambda: neg(div(x.tail, sqrt(sub(Constant(1), sqr(x))))))


_ELEMENTARY = {
    "exp": exp,
    "log": log,
    "sqrt": sqrt,
    "sin": sin,
    "cos": cos,
    "tan": tan,
    "atan": atan,
    "asin": asin,
    "acos": acos,
}


def elementary(tag: str, x: DTower) -> DTower:
    try:
        fn = _ELEMENTARY[tag]
    except KeyError:
        raise ValueError(f"unknown elementary function {tag!r}") from None
    return fn(x)


# -- folds -----------------------------------------------------------------


def fold_tower(op: Callable[[Any, Any], Any], init, t: DTower, bound: int = 1000):
    """Right fold over a tower that ends in a ``Constant`` within ``bound`` nodes."""
    values = []
    current = t
    for _ in range(bound + 1):
        if isinstance(current, Constant):
            values.append(current.value)
            acc = init
            for v in reversed(values):
                acc = op(v, acc)
            return acc
        values.append(current.head)
        current = current.tail
    raise Unbounded(f"no Constant within {bound} nodes")


def tower_sum(t: DTower, bound: int = 1000):
    return fold_tower(operator.add, 0, t, bound)


def tower_product(t: DTower, bound: int = 1000):
    return fold_tower(operator.mul, 1, t, bound)


def prefix(t: DTower, n: int) -> List[Any]:
    return take(n, t)
