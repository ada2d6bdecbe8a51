"""Tower recipes: Hermite functions, inverse-function and composite-function towers."""

from __future__ import annotations

import math
import operator
from functools import reduce
from typing import Callable, List

from .. import tower as T
from ..errors import NegativeOrder
from ..stream import Stream, cons, iterate, map_stream, run_deep


def hermite_tower(n: int, x: float, constant_divisor: bool = True) -> T.DTower:
    """Tower of the Hermite function H_n at ``x``.

    H_0 = exp(-x^2/2) and H_n = (x H_(n-1) - H_(n-1)') / sqrt(2n).  With
    ``constant_divisor`` the divisor is a ``Constant`` so the quotient is a
    plain scaling; otherwise it goes through general tower division.
    """
    if n < 0:
        raise NegativeOrder(f"Hermite order must be >= 0, got {n}")
    y = T.dvar(float(x))
    h = T.exp(T.scalar_mul(-0.5, y * y))
    for k in range(1, n + 1):
        d = math.sqrt(2.0 * k)
        divisor = T.Constant(d) if constant_divisor else T.Node.cons(lambda d=d: d, lambda: T.Constant(0.0))
        h = (y * h - T.df(h)) / divisor
    return h


def hermite_value(n: int, x: float, constant_divisor: bool = True) -> float:
    return run_deep(lambda: T.hd(hermite_tower(n, x, constant_divisor)))


def revchain(f: Callable[[T.DTower], T.DTower], x) -> T.DTower:
    """Derivatives of the inverse ``g`` of ``f`` at ``y = f(x)``; the head is ``x``.

    With ``g1 = 1 / f'`` as a tower in x, each further derivative in y is
    obtained by the chain rule ``d/dy = g1 * d/dx``.
    """
    g1 = 1 / T.df(f(T.dvar(x)))

    def revch(h: T.DTower) -> T.Node:
        return T.node(lambda: h.head, lambda: revch(T.mul(g1, h.tail)))

    return T.node(lambda: x, lambda: revch(g1))


def _sum_towers(towers: List[T.DTower]) -> T.DTower:
    return reduce(T.add, towers)


def compchain(g: T.DTower, f: T.DTower) -> Stream:
    """Derivatives of ``h(x) = g(f(x))`` from the towers of g (at f(x)) and f (at x).

    Stage n is a list of towers ``[P_1, ..., P_n]`` with
    ``h^(n) = sum_k g^(k) * hd(P_k)``.  Going to stage n+1, every ``P`` becomes
    ``[P', f' * P]`` and neighbours that multiply the same ``g^(k)`` are added.
    """
    f1 = T.df(f)
    gd = T.df(g)

    def diffg(seg: List[T.DTower]) -> List[T.DTower]:
        return [t for s in seg for t in (T.df(s), T.mul(f1, s))]

    def fuse(seg: List[T.DTower]) -> List[T.DTower]:
        rest = seg[1:]
        return [seg[0]] + [_sum_towers(rest[i : i + 2]) for i in range(0, len(rest), 2)]

    def toscalar(seg: List[T.DTower]):
        return reduce(operator.add, (T.hd(p) * gk for p, gk in zip(seg, gd)))

    stages = iterate(lambda seg: fuse(diffg(seg)), [f1])
    return cons(lambda: T.hd(g), lambda: map_stream(toscalar, stages))


def compchain_tower(g: T.DTower, f: T.DTower) -> T.DTower:
    return T.tower_from_stream(compchain(g, f))
