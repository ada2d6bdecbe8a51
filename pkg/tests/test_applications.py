import math
from fractions import Fraction

import pytest

import oracles
from towerseries import series as S
from towerseries import tower as T
from towerseries.applications import chains, lambert, stirling
from towerseries.coeffs import RATIONAL
from towerseries.errors import NegativeOrder
from towerseries.stream import take

F = Fraction

STIRLING = [
    F(1),
    F(1, 12),
    F(1, 288),
    F(-139, 51840),
    F(-571, 2488320),
    F(163879, 209018880),
    F(5246819, 75246796800),
    F(-534703531, 902961561600),
    F(-4483131259, 86684309913600),
]


def stirling_oracle(n):
    """S = exp(sum B_2k / (2k(2k-1)) x^(2k-1)) via sympy Bernoulli numbers."""
    import sympy

    log_s = [F(0)] * n
    for k in range(1, n):
        if 2 * k - 1 < n:
            b = sympy.bernoulli(2 * k)
            log_s[2 * k - 1] = F(int(b.p), int(b.q)) / (2 * k * (2 * k - 1))
    # exp of a series with zero head, coefficient by coefficient: e' = l' e
    e = [F(1)] + [F(0)] * (n - 1)
    dl = oracles.poly_deriv(log_s)
    for m in range(1, n):
        e[m] = sum(dl[k] * e[m - 1 - k] for k in range(m)) / m
    return e


def hermite_recurrence(n, x):
    a = math.exp(-x * x / 2)
    if n == 0:
        return a
    b = math.sqrt(2) * x * a
    for k in range(2, n + 1):
        a, b = b, math.sqrt(2 / k) * x * b - math.sqrt((k - 1) / k) * a
    return b


# -- Stirling --------------------------------------------------------------


def test_stirling_oracle_matches_printed_values():
    assert stirling_oracle(9) == STIRLING


def test_backsub():
    assert take(9, stirling.stirling_backsub()) == STIRLING


def test_backsub_longer_prefix_against_bernoulli():
    assert take(14, stirling.stirling_backsub()) == stirling_oracle(14)


def test_f_extraction():
    assert take(5, stirling.stirling_f()) == [F(1, 12), F(1, 12), F(113, 1440), F(53, 720), F(25163, 362880)]


def test_g_starts_with_one_zero():
    assert take(2, stirling.stirling_g()) == [1, 0]


def test_laplace_intermediates():
    state = stirling.laplace_pipeline()
    assert take(4, state.w) == [F(1, 3), F(-1, 4), F(1, 5), F(-1, 6)]
    assert take(5, take(2, state.en)[1]) == [F(1, 18), F(-1, 12), F(47, 480), F(-19, 180), F(153, 1400)]
    assert take(9, state.dbfacs) == [0, 1, 2, 3, 8, 15, 48, 105, 384]
    # row p, column j is weighted by (3p + j - 1)!!
    assert take(2, take(1, state.tabl)[0]) == [F(1, 3) * 2, F(-1, 4) * 3]


def test_double_factorials_against_math():
    got = take(20, stirling.double_factorials())
    assert got[1:] == [math.prod(range(k, 0, -2)) for k in range(1, 20)]


def test_laplace_matches_backsub():
    assert take(8, stirling.stirling_laplace()) == STIRLING[1:]


def test_shift_and_separ():
    table = stirling.semifactorial_table(stirling.laplace_en(stirling.laplace_w()), stirling.double_factorials())
    heads, rest = stirling._separ(2, table)
    assert heads == [take(1, take(1, table)[0])[0], take(1, take(2, table)[1])[0]]
    assert take(1, take(1, rest)[0])[0] == take(2, take(1, table)[0])[1]


# -- Lambert ---------------------------------------------------------------


def test_lambert_tower():
    got = take(11, lambert.lambert_w_tower())
    assert got[0] == 0.0
    for n in range(1, 11):
        assert math.isclose(got[n], (-n) ** (n - 1), rel_tol=1e-9)


def test_lambert_tower_exact():
    got = take(11, lambert.lambert_w_tower(RATIONAL))
    assert got == [0] + [(-n) ** (n - 1) for n in range(1, 11)]


def test_lambert_series_at_zero():
    assert take(4, lambert.lambert_w_series(0.0)) == [0.0, 1.0, -1.0, 1.5]


def test_lambert_series_satisfies_defining_equation():
    # W(x0 + t) exp(W(x0 + t)) = x0 + t about W = 1
    w0 = 1.0
    w = lambert.lambert_w_series(w0)
    lhs = take(8, w * S.exp(w))
    x0 = lambert.lambert_center(w0)
    assert math.isclose(lhs[0], x0, rel_tol=1e-12)
    assert math.isclose(lhs[1], 1.0, rel_tol=1e-12)
    assert all(abs(v) < 1e-12 for v in lhs[2:])


def test_revchain_inverts_x_exp_x():
    got = take(11, chains.revchain(lambda x: x * T.exp(x), 0.0))
    assert got == take(11, lambert.lambert_w_tower())


# -- Reversion and composition chains -------------------------------------


def test_revchain_rational_function():
    got = take(4, chains.revchain(lambda x: x / (1 + x), F(3, 4)))
    assert got == [F(3, 4), F(49, 16), F(343, 32), F(7203, 128)]
    y = T.dvar(F(3, 7))
    assert take(8, chains.revchain(lambda x: x / (1 + x), F(3, 4))) == take(8, y / (1 - y))


def test_compchain_against_sympy():
    src_f = "sin(x)*exp(-x/2)"
    x0 = oracles.sympy.Rational(3, 10)
    f = T.dvar(0.3)
    ft = T.sin(f) * T.exp(-f / 2)
    gt = T.cos(T.dvar(T.hd(ft)))
    got = take(6, chains.compchain(gt, ft))
    want = [float(v.evalf(30)) for v in oracles.sympy_derivatives(f"cos({src_f})", x0, 6)]
    assert all(math.isclose(a, b, rel_tol=1e-9) for a, b in zip(got, want))


def test_compchain_tower_is_a_tower():
    f = T.dvar(F(0))
    g = T.exp(T.dvar(F(0)))
    t = chains.compchain_tower(g, f)
    assert take(5, t) == [1, 1, 1, 1, 1]


def test_hermite():
    for n in (0, 1, 2, 5, 30):
        assert math.isclose(chains.hermite_value(n, 0.7), hermite_recurrence(n, 0.7), rel_tol=1e-10)


def test_hermite_divisor_variants_agree():
    a = chains.hermite_value(40, 1.0, constant_divisor=True)
    b = chains.hermite_value(40, 1.0, constant_divisor=False)
    assert math.isclose(a, b, rel_tol=1e-10)


def test_hermite_deep_order():
    assert math.isclose(chains.hermite_value(120, 1.0), hermite_recurrence(120, 1.0), rel_tol=1e-9)


def test_hermite_negative_order():
    with pytest.raises(NegativeOrder):
        chains.hermite_tower(-1, 0.0)
