"""The Stirling correction series S(1/n), derived twice, exactly.

``n! ~ sqrt(2 pi n) (n/e)^n S(1/n)`` with ``S = 1 + 1/12 x + 1/288 x^2 + ...``.

* ``stirling_backsub`` solves the functional equation
  ``S(x/(1-x)) = S(x) G(x)`` obtained from ``n! = n (n-1)!`` by back
  substitution, one coefficient per step.
* ``stirling_laplace`` expands the factorial integral around its maximum:
  a series of series in (n z^3, z), Gaussian moments as double factorials,
  then a diagonal-by-diagonal accumulation.

Both only use rational arithmetic (``exp0``/``log1`` instead of exp/log).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .. import series as S
from ..coeffs import RATIONAL, fdiv
from ..stream import LazyCell, Stream, cons, delay, drop, fix, from_list, iterate, take


def stirling_g() -> S.Series:
    """``G(x) = exp(-1 + (1/2 - 1/x) log(1 - x))`` with the 1/x pole removed."""
    x = S.svar(RATIONAL)
    lo = S.log1(1 - x)
    return S.exp0(-1 + lo / 2 - S.stl(lo))


def stirling_f() -> S.Series:
    """F with ``G = 1 + x^2 F``; the constant and linear terms of G are 1 and 0."""
    return delay(lambda: S.stl(S.stl(stirling_g())), S.Series)


def stirling_backsub() -> S.Series:
    """Coefficients of S by back substitution.

    With ``R_m = (1/(1-x)^m - 1)/x`` (``R_1 = 1/(1-x)``,
    ``R_(m+1) = (R_m + 1)/(1-x)``) the equation becomes
    ``s_1 R_1 + x s_2 R_2 + x^2 s_3 R_3 + ... = F S``: the head of the
    right-hand side fixes ``s_m``, then ``s_m R_m`` is moved across and the
    remainder divided by x.
    """
    x = S.svar(RATIONAL)
    one_minus_x = 1 - x
    f = stirling_f()

    def backsub(rm: S.Series, rhs: S.Series) -> S.Series:
        sm = LazyCell(lambda: fdiv(rhs.head, rm.head))
        rest = delay(lambda: S.stl(rhs - S._map(lambda a: sm.force() * a, rm)), S.Series)
        return S.Series.cons(sm.force, lambda: backsub((1 + rm) / one_minus_x, rest))

    return fix(lambda s: S.Series.cons(lambda: Fraction(1), lambda: backsub(1 / one_minus_x, f * s)), S.Series)


# -- Laplace method --------------------------------------------------------


def double_factorials() -> Stream:
    """``0, 1, 2, 3, 8, 15, 48, 105, 384, ...``; index k >= 1 holds k!!.

    Index 0 is a placeholder.  Odd and even semifactorials are carried as
    two interleaved running products fed by 3, 4, 5, ...
    """

    def dbf(x: int, y: int, rest: Stream) -> Stream:
        def after():
            a, b = rest.head, rest.tail.head
            return dbf(x * a, y * b, rest.tail.tail)

        return cons(lambda: x, lambda: cons(lambda: y, after))

    return cons(lambda: 0, lambda: dbf(1, 2, iterate(lambda n: n + 1, 3)))


def laplace_w() -> S.Series:
    """``log z - z`` about z = 1 with its first three coefficients dropped."""
    z = S.svar(RATIONAL) + 1
    return S.stl(S.stl(S.stl(S.log1(z) - z)))


def laplace_en(w: S.Series) -> S.Series:
    """Rows p = 1, 2, ... of ``exp(X w)`` in the outer variable X, i.e. ``w^p / p!``."""
    zero = S.szero(RATIONAL)
    u = S.s_from_list([zero, w], zero)
    return S.stl(S.exp0(u))


# en row p is stored at position p - 1: the constant row of the exponential is
# dropped, so rows are numbered from 1.
FIRST_ROW = 1


def semifactorial_table(en: S.Series, dbfacs: Stream) -> Stream:
    """Row p, column j: ``en[p][j] * (3p + j - 1)!!`` as a stream of row streams."""

    def ccol(p: int, j: int, col: Stream) -> Stream:
        return cons(lambda: drop(3 * p + j - 1, dbfacs).head * col.head, lambda: ccol(p, j + 1, col.tail))

    def crow(p: int, rows: Stream) -> Stream:
        return cons(lambda: ccol(p, 0, rows.head), lambda: crow(p + 1, rows.tail))

    return crow(FIRST_ROW, en)


def _ss(m: int, rows: Stream) -> Tuple[List[Stream], Stream]:
    first = take(m, rows)
    rest = drop(m, rows)
    return first, from_list([r.tail for r in first], rest)


def _shift(m: int, rows: Stream) -> Stream:
    """Drop the leading element of each of the first m rows."""
    return _ss(m, rows)[1]


def _separ(m: int, rows: Stream) -> Tuple[List, Stream]:
    """Heads of the first m rows, and the table with those heads removed."""
    first, rest = _ss(m, rows)
    return [r.head for r in first], rest


def diagonal_sums(table: Stream) -> Stream:
    """Sum the anti-diagonals p + j = 2, 4, 6, ... of the table.

    Each step shifts the first m rows left by one (skipping the odd
    diagonal) and peels the heads of the first m + 1 rows.
    """

    def diag(m: int, tbl: Stream) -> Stream:
        step = LazyCell(lambda: _separ(m + 1, _shift(m, tbl)))
        return cons(lambda: sum(step.force()[0], Fraction(0)), lambda: diag(m + 2, step.force()[1]))

    return diag(1, table)


@dataclass
class StirlingPipelineState:
    w: S.Series
    en: S.Series
    tabl: Stream
    dbfacs: Stream


def laplace_pipeline() -> StirlingPipelineState:
    w = laplace_w()
    en = laplace_en(w)
    dbfacs = double_factorials()
    return StirlingPipelineState(w=w, en=en, tabl=semifactorial_table(en, dbfacs), dbfacs=dbfacs)


def stirling_laplace() -> Stream:
    """Coefficients of ``1/n, 1/n^2, ...`` in S (the leading 1 is not included)."""
    return diagonal_sums(laplace_pipeline().tabl)
