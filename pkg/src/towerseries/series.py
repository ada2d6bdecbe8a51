"""Formal power series ``u0 + u1 x + u2 x^2 + ...`` as lazy coefficient streams.

The expansion point never appears: a series is just its coefficients, and
only the caller that evaluates a truncation needs to know the center.

Elementary functions are fixpoints of their integral equations, e.g.
``exp u = w`` with ``w = sint(exp u0, sdif(u) * w)``; ``sint`` never looks at
its stream argument before it has emitted the integration constant, which is
what makes these definitions productive.  Coefficients may be rationals,
floats or series themselves.
"""

from __future__ import annotations

import operator
from functools import reduce
from typing import Any, Callable, List, Sequence

from .coeffs import RATIONAL, Field, SeriesRing, fdiv, felem, field_of
from .errors import BadHead, BadLinearTerm, NonzeroInnerConstant
from .stream import LazyCell, Prefix, Stream, delay, fix, iterate, take, zip_with

__all__ = [
    "Series",
    "svar",
    "szero",
    "const_series",
    "shd",
    "stl",
    "s_to_list",
    "s_from_list",
    "s_add",
    "s_sub",
    "s_neg",
    "s_scalar_mul",
    "s_mul",
    "s_div",
    "nats",
    "sdif",
    "sint",
    "s_elementary",
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
    "exp0",
    "log1",
    "sqrt1",
    "s_elementary_unit",
    "scompose",
    "sreverse",
    "newtreverse",
    "ser_to_dtower",
    "dtower_to_ser",
    "horner",
]


class Series(Stream):
    __slots__ = ()

    def coefficient_field(self) -> Field:
        return SeriesRing(field_of(self.head))

    def __add__(self, other):
        if isinstance(other, Series):
            return s_add(self, other)
        return _add_scalar(self, other)

    def __radd__(self, other):
        return _add_scalar(self, other)

    def __sub__(self, other):
        if isinstance(other, Series):
            return s_sub(self, other)
        return _add_scalar(self, -other)

    def __rsub__(self, other):
        return _add_scalar(s_neg(self), other)

    def __neg__(self):
        return s_neg(self)

    def __mul__(self, other):
        if isinstance(other, Series):
            return s_mul(self, other)
        return s_scalar_mul(other, self)

    def __rmul__(self, other):
        return s_scalar_mul(other, self)

    def __truediv__(self, other):
        if isinstance(other, Series):
            return s_div(self, other)
        return _div_scalar(self, other)

    def __rtruediv__(self, other):
        return s_div(const_series(other), self)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        if k == 0:
            return const_series(field_of(self.head).one)
        return reduce(s_mul, [self] * k)


def _series(head: Callable[[], Any], tail: Callable[[], Series]) -> Series:
    return Series.cons(head, tail)


def _generate(coeff: Callable[[int], Any], n: int = 0) -> Series:
    """The series whose coefficient k is ``coeff(k)``, for k >= n."""
    return _series(lambda: coeff(n), lambda: _generate(coeff, n + 1))


def _sum(terms):
    return reduce(operator.add, terms)


# -- construction and access -----------------------------------------------


def szero(field: Field = RATIONAL) -> Series:
    node = Series(LazyCell.of(field.zero), None)
    node._tail = LazyCell.of(node)
    return node


def const_series(c) -> Series:
    return Series(LazyCell.of(c), LazyCell(lambda: szero(field_of(c))))


def svar(field: Field = RATIONAL) -> Series:
    """The variable: ``[0, 1, 0, 0, ...]``."""
    return Series(LazyCell.of(field.zero), LazyCell.of(const_series(field.one)))


def shd(s: Series):
    return s.head


def stl(s: Series) -> Series:
    return s.tail


def s_to_list(s: Series, n: int) -> List[Any]:
    return take(n, s)


def s_from_list(prefix: Sequence[Any], padding=0) -> Series:
    """Finite prefix followed by ``padding`` repeated forever."""
    if prefix and not isinstance(padding, Stream) and padding == 0:
        padding = field_of(prefix[0]).zero
    rest = Series(LazyCell.of(padding), None)
    rest._tail = LazyCell.of(rest)
    s = rest
    for v in reversed(list(prefix)):
        s = Series(LazyCell.of(v), LazyCell.of(s))
    return s


# -- linear operations -----------------------------------------------------


def s_add(u: Series, v: Series) -> Series:
    return zip_with(operator.add, u, v, Series)


def s_sub(u: Series, v: Series) -> Series:
    return zip_with(operator.sub, u, v, Series)


def s_neg(u: Series) -> Series:
    return _map(operator.neg, u)


def _map(f, u: Series) -> Series:
    return _series(lambda: f(u.head), lambda: _map(f, u.tail))


def s_scalar_mul(c, u: Series) -> Series:
    return _map(lambda a: c * a, u)


def _div_scalar(u: Series, c) -> Series:
    return _map(lambda a: fdiv(a, c), u)


def _add_scalar(u: Series, c) -> Series:
    return _series(lambda: u.head + c, lambda: u.tail)


# -- products and quotients ------------------------------------------------


def s_mul(u: Series, v: Series) -> Series:
    """Cauchy product: coefficient n is ``sum_k u_k v_(n-k)``."""
    pu, pv = Prefix(u), Prefix(v)

    def coeff(n):
        a = pu.upto(n)
        b = pv.upto(n)
        return _sum(a[k] * b[n - k] for k in range(n + 1))

    return _generate(coeff)


def s_div(u: Series, v: Series) -> Series:
    """Quotient ``w = u / v``: ``w_n = (u_n - sum_{k>=1} v_k w_(n-k)) / v_0``."""

    def build(w):
        pu, pv, pw = Prefix(u), Prefix(v), Prefix(w)

        def coeff(n):
            vs = pv.upto(n)
            acc = pu.upto(n)[n]
            if n:
                ws = pw.upto(n - 1)
                acc = acc - _sum(vs[k] * ws[n - k] for k in range(1, n + 1))
            return fdiv(acc, vs[0])

        return _generate(coeff)

    return fix(build, Series)


# -- formal calculus -------------------------------------------------------


def _nats(n: int) -> Series:
    return _series(lambda: n, lambda: _nats(n + 1))


_NATS = _nats(1)


def nats() -> Series:
    """``1, 2, 3, ...`` produced corecursively (shared, memoized)."""
    return _NATS


def sdif(s: Series) -> Series:
    """Formal derivative: drop u0, multiply u_k by k."""
    return delay(lambda: zip_with(operator.mul, s.tail, _NATS, Series), Series)


def _sint(c: Callable[[], Any], ss: Series) -> Series:
    return _series(c, lambda: zip_with(fdiv, ss, _NATS, Series))


def sint(c, ss: Series) -> Series:
    """Formal integral with constant ``c``; ``ss`` is not inspected until after ``c``."""
    return _sint(lambda: c, ss)


# -- elementary functions --------------------------------------------------


def _at_head(tag: str, u: Series) -> Callable[[], Any]:
    return lambda: felem(tag, u.head)


def exp(u: Series) -> Series:
    return fix(lambda w: _sint(_at_head("exp", u), sdif(u) * w), Series)


def log(u: Series) -> Series:
    return _sint(_at_head("log", u), sdif(u) / u)


def sqrt(u: Series) -> Series:
    return fix(lambda w: _sint(_at_head("sqrt", u), _div_scalar(sdif(u) / w, 2)), Series)


def sincos(u: Series):
    du = sdif(u)
    s = delay(lambda: _sint(_at_head("sin", u), du * c), Series)
    c = delay(lambda: _sint(_at_head("cos", u), -(du * s)), Series)
    return s, c


def sin(u: Series) -> Series:
    return sincos(u)[0]


def cos(u: Series) -> Series:
    return sincos(u)[1]


def tan(u: Series) -> Series:
    return fix(lambda w: _sint(_at_head("tan", u), sdif(u) * (1 + w * w)), Series)


def atan(u: Series) -> Series:
    return _sint(_at_head("atan", u), sdif(u) / (1 + u * u))


def asin(u: Series) -> Series:
    return _sint(_at_head("asin", u), sdif(u) / sqrt(1 - u * u))


def acos(u: Series) -> Series:
    return _sint(_at_head("acos", u), -(sdif(u) / sqrt(1 - u * u)))


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


def s_elementary(tag: str, u: Series) -> Series:
    try:
        fn = _ELEMENTARY[tag]
    except KeyError:
        raise ValueError(f"unknown elementary function {tag!r}") from None
    return fn(u)


# Field-neutral variants: the zeroth coefficient is known exactly, so the same
# recurrences run over rationals or nested series.


def _checked_head(u: Series, required: int, result: Callable[[Field], Any], name: str):
    def head():
        u0 = u.head
        field = field_of(u0)
        probe = u0 - required if required else u0
        if not field.is_zero(probe):
            raise BadHead(f"{name} needs a series whose zeroth coefficient is {required}")
        return result(field)

    return head


def exp0(u: Series) -> Series:
    """exp of a series with ``u0 = 0``."""
    return fix(lambda w: _sint(_checked_head(u, 0, lambda f: f.one, "exp0"), sdif(u) * w), Series)


def log1(u: Series) -> Series:
    """log of a series with ``u0 = 1``."""
    return _sint(_checked_head(u, 1, lambda f: f.zero, "log1"), sdif(u) / u)


def sqrt1(u: Series) -> Series:
    """sqrt of a series with ``u0 = 1``."""
    return fix(lambda w: _sint(_checked_head(u, 1, lambda f: f.one, "sqrt1"), _div_scalar(sdif(u) / w, 2)), Series)


def s_elementary_unit(tag: str, u: Series) -> Series:
    fn = {"exp0": exp0, "log1": log1, "sqrt1": sqrt1}.get(tag)
    if fn is None:
        raise ValueError(f"unknown unit-head function {tag!r}")
    return fn(u)


# -- composition and reversion ---------------------------------------------


def _require_zero_head(v: Series):
    v0 = v.head
    if not field_of(v0).is_zero(v0):
        raise NonzeroInnerConstant(f"inner series must start with 0, got {v0}")


def scompose(u: Series, v: Series) -> Series:
    """``U(V(x))`` by the infinite Horner scheme ``u0 + V (u1 + V (u2 + ...))``.

    Writing ``V = x * vq``, each level is ``cmv(u) = u0 :- vq * cmv(stl u)``;
    coefficient k only involves coefficients <= k of both operands.
    """

    def cmv(s: Series) -> Series:
        return _series(lambda: s.head, lambda: s_mul(v.tail, cmv(s.tail)))

    def head():
        _require_zero_head(v)
        return u.head

    return _series(head, lambda: s_mul(v.tail, cmv(u.tail)))


def _check_linear(u: Series):
    u0, u1 = take(2, u)
    if not field_of(u0).is_zero(u0):
        raise BadLinearTerm(f"series to revert must start with 0, got {u0}")
    if field_of(u1).is_zero(u1):
        raise BadLinearTerm("series to revert needs a nonzero linear coefficient")
    return u0, u1


def _sreverse_unit(u: Series, field: Field) -> Series:
    # t = z w, with w = 1 - w^2 V(t); V is u without its first two coefficients
    v = u.tail.tail
    t = delay(lambda: _series(lambda: field.zero, lambda: w), Series)
    w = fix(lambda w: _series(lambda: field.one, lambda: -(w * w * scompose(v, t))), Series)
    return t


def _scale_powers(t: Series, r) -> Series:
    """Coefficient k multiplied by ``r**k``."""
    pt = Prefix(t)
    powers = [r ** 0]

    def coeff(k):
        while len(powers) <= k:
            powers.append(powers[-1] * r)
        return pt[k] * powers[k]

    return _generate(coeff)


def sreverse(u: Series) -> Series:
    """The series ``t`` with ``u(t(z)) = z``; needs ``u0 = 0`` and ``u1 != 0``.

    A linear coefficient other than one is divided out first and the result
    rescaled, ``t(z) = T(z / u1)`` with ``T`` the reverse of ``u / u1``.
    """
    _, u1 = _check_linear(u)
    field = field_of(u1)
    if u1 == field.one:
        return _sreverse_unit(u, field)
    unit = _div_scalar(u, u1)
    return _scale_powers(_sreverse_unit(unit, field), fdiv(field.one, u1))


def newtreverse(f: Series) -> Stream:
    """Newton approximants ``t_{k+1} = t_k - (f(t_k) - z) / f'(t_k)`` from ``t_0 = z``."""
    _, f1 = _check_linear(f)
    field = field_of(f1)
    z = svar(field)
    fp = sdif(f)

    def nxt(t: Series) -> Series:
        return t - (scompose(f, t) - z) / scompose(fp, t)

    return iterate(nxt, z)


# -- towers <-> series -----------------------------------------------------


def ser_to_dtower(s: Series):
    """Coefficient k times k!."""
    from .tower import Node

    def sdloop(y: Series, f: int, n: int):
        def head():
            y0 = y.head
            return y0 * field_of(y0).from_int(f) if isinstance(y0, float) else f * y0

        return Node.cons(head, lambda: sdloop(y.tail, f * n, n + 1))

    return sdloop(s, 1, 1)


def dtower_to_ser(t) -> Series:
    """Element k divided by k!."""

    def loop(y, f: int, n: int) -> Series:
        def head():
            y0 = y.head
            return fdiv(y0, field_of(y0).from_int(f))

        return _series(head, lambda: loop(y.tail, f * n, n + 1))

    return loop(t, 1, 1)


def horner(coeffs: Sequence[Any], dx):
    """Evaluate ``sum_k coeffs[k] dx^k``."""
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * dx + c
    return acc
