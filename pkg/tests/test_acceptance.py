"""Acceptance criteria, one test each.

A PASS/FAIL line per criterion is printed in the "acceptance criteria"
section of the pytest summary.  Run alone with

    pytest tests/test_acceptance.py -q
"""

import math
import subprocess
import sys
import time
from fractions import Fraction

import pytest

import test_series
import test_stream
import test_tower
from towerseries import series as S
from towerseries import tower as T
from towerseries.applications import chains, lambert, stirling
from towerseries.cli import main
from towerseries.coeffs import BINARY64
from towerseries.stream import drop, take

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


def timed(fn, *args):
    start = time.perf_counter()
    value = fn(*args)
    return value, time.perf_counter() - start


def agreement(a, b, rel=1e-12, abs_tol=1e-12):
    """Length of the common prefix of ``a`` and ``b`` under the tolerance."""
    for i, (x, y) in enumerate(zip(a, b)):
        if not math.isclose(x, y, rel_tol=rel, abs_tol=abs_tol):
            return i
    return min(len(a), len(b))


def test_c01_stirling_golden(criterion):
    """criterion 1: back-substitution Stirling coefficients 0..8 exact, < 1 s"""
    got, secs = timed(take, 9, stirling.stirling_backsub())
    criterion(f"{secs:.3f} s")
    assert got == STIRLING
    assert secs < 1.0


def test_c02_cross_derivation(criterion):
    """criterion 2: Laplace-method prefix 8 equals back-substitution 1..8, < 5 s"""
    got, secs = timed(take, 8, stirling.stirling_laplace())
    criterion(f"{secs:.3f} s")
    assert got == take(9, stirling.stirling_backsub())[1:]
    assert got == STIRLING[1:]
    assert secs < 5.0


def test_c03_f_golden(criterion):
    """criterion 3: extracted F prefix equals the five printed coefficients"""
    assert take(5, stirling.stirling_f()) == [F(1, 12), F(1, 12), F(113, 1440), F(53, 720), F(25163, 362880)]


def test_c04_lambert(criterion):
    """criterion 4: Lambert tower 1..10 = (-n)^(n-1) (rel 1e-9); revchain(x e^x, 0) agrees"""
    w = take(11, lambert.lambert_w_tower())
    r = take(11, chains.revchain(lambda x: x * T.exp(x), 0.0))
    for n in range(1, 11):
        want = (-n) ** (n - 1)
        assert math.isclose(w[n], want, rel_tol=1e-9)
        assert math.isclose(r[n], want, rel_tol=1e-9)


def test_c05_reversion_golden(criterion):
    """criterion 5: revchain of x/(1+x) at 3/4 exact; agrees with y/(1-y) at 3/7 on prefix 8"""
    inverse = chains.revchain(lambda x: x / (1 + x), F(3, 4))
    assert take(4, inverse) == [F(3, 4), F(49, 16), F(343, 32), F(7203, 128)]
    y = T.dvar(F(3, 7))
    assert take(8, inverse) == take(8, y / (1 - y))


def test_c06_newton_doubling(criterion):
    """criterion 6: Newton approximant k agrees with sreverse on >= 2^k coefficients (k = 1..7)"""
    x = S.svar(BINARY64)
    f = x / (1 + x)
    approximants = S.newtreverse(f)
    n = 2**7 + 8
    exact = take(2**8 + 8, S.sreverse(f))
    counts = []
    for k in range(1, 7):
        got = take(2 ** (k + 1) + 4, drop(k, approximants).head)
        counts.append(agreement(got, exact))
        assert counts[-1] >= 2**k
    got, secs = timed(lambda: take(n, drop(7, S.newtreverse(f)).head))
    k7 = agreement(got, exact)
    criterion(f"k=1..6 agree on {counts}; k=7 agrees on {k7} of {n} checked in {secs:.1f} s")
    assert k7 >= 128
    assert secs < 60.0


def test_c06_extended_newton_256(criterion):
    """criterion 6 (extended): approximant 7 agrees on 256 coefficients"""
    x = S.svar(BINARY64)
    f = x / (1 + x)
    exact = take(2**8 + 4, S.sreverse(f))
    got, secs = timed(lambda: take(2**8 + 4, drop(7, S.newtreverse(f)).head))
    k7 = agreement(got, exact)
    criterion(f"{k7} coefficients in {secs:.1f} s")
    assert k7 >= 256


NAIVE_SCRIPT = """
from towerseries import tower as T
from towerseries.stream import take
x = T.dvar(0.0)
print(take(25, T.naive_mul(T.exp(-x), T.sin(x)))[-1], flush=True)
"""


def test_c07_performance_shape(criterion):
    """criterion 7: optimized mul 300 terms of exp(-x) sin(x) < 10 s; naive_mul misses term 25 in 10 s"""
    x = T.dvar(0.0)
    fast, secs = timed(take, 300, T.exp(-x) * T.sin(x))
    assert len(fast) == 300 and secs < 10.0
    start = time.perf_counter()
    try:
        subprocess.run([sys.executable, "-c", NAIVE_SCRIPT], capture_output=True, text=True, timeout=10)
        naive_finished = True
    except subprocess.TimeoutExpired:
        naive_finished = False
    naive_secs = time.perf_counter() - start
    criterion(f"optimized 300 terms in {secs:.2f} s; naive {'finished' if naive_finished else 'timed out'} "
              f"after {naive_secs:.1f} s")
    assert not naive_finished


def test_c07_extended_thousand_terms(criterion):
    """criterion 7 (extended, non-gating): optimized mul 1000 terms"""
    x = T.dvar(0.0)
    got, secs = timed(take, 1000, T.exp(-x) * T.sin(x))
    criterion(f"{len(got)} terms in {secs:.2f} s")
    assert len(got) == 1000


PROPERTY_SUITES = [
    test_stream.test_at_most_once_under_repeated_demand,
    test_stream.test_nonproductive_head_on_self,
    test_stream.test_nonproductive_structure,
    test_stream.test_nonproductive_naive_reversion_transcription,
    test_tower.test_ring_laws,
    test_tower.test_product_is_leibniz,
    test_tower.test_product_matches_series_product,
    test_tower.test_quotient_matches_oracle,
    test_series.test_ring_laws,
    test_series.test_mul_div_oracle,
    test_series.test_compose_oracle,
    test_series.test_reverse_oracle,
    test_series.test_integral_derivative_round_trip,
    test_series.test_tower_series_round_trip,
]


def test_c08_property_suites(criterion):
    """criterion 8: lazy-kernel, ring-law, oracle and round-trip property suites (>= 200 cases each)"""
    for suite in PROPERTY_SUITES:
        settings = getattr(suite, "_hypothesis_internal_use_settings", None)
        if settings is not None:
            assert settings.max_examples >= 200, suite.__name__
        suite()
    criterion(f"{len(PROPERTY_SUITES)} suites")


def test_c09_compchain(criterion):
    """criterion 9: compchain prefix 6 matches direct tower arithmetic (rel 1e-9); 100 terms < 120 s"""
    x = T.dvar(0.3)
    f = T.sin(x) * T.exp(-x / 2)
    direct = take(6, T.cos(f))
    g = T.cos(T.dvar(T.hd(f)))
    got = take(6, chains.compchain(g, f))
    assert all(math.isclose(a, b, rel_tol=1e-9) for a, b in zip(got, direct))
    x = T.dvar(0.3)
    f = T.sin(x) * T.exp(-x / 2)
    g = T.cos(T.dvar(T.hd(f)))
    long, secs = timed(take, 100, chains.compchain(g, f))
    criterion(f"100 terms in {secs:.1f} s")
    assert len(long) == 100 and secs < 120.0


def _cli(capsys, argv):
    code = main(argv)
    out, _ = capsys.readouterr()
    return code, out


def _column(out):
    return [float(line.split("\t")[1]) for line in out.splitlines()]


def test_c10_cli_end_to_end(capsys, criterion):
    """criterion 10: CLI examples (byte-exact for rat, tolerance for f64)"""
    code, out = _cli(capsys, ["stirling", "--method", "both", "--terms", "8", "--format", "table"])
    assert code == 0
    assert out == "".join(f"{k}\t{v}\t{v}\n" for k, v in enumerate(STIRLING[:8]))

    code, out = _cli(capsys, ["lambert", "--mode", "tower", "--terms", "6"])
    assert code == 0
    assert all(math.isclose(a, b, rel_tol=1e-10) for a, b in zip(_column(out), [0, 1, -2, 9, -64, 625]))
    assert len(out.splitlines()) == 6

    argv = ["plot-data", "--builtin", "lambert", "--center", "0", "--order", "5",
            "--xmin", "-0.3", "--xmax", "2.5", "--samples", "10"]
    code, out = _cli(capsys, argv)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "x,value" and len(lines) == 11
    assert all(math.isfinite(float(line.split(",")[1])) for line in lines[1:])

    code, out = _cli(capsys, ["tower", "--expr", "x/(1+x)", "--at", "3/4", "--terms", "4"])
    assert (code, out) == (0, "0\t3/7\n1\t16/49\n2\t-128/343\n3\t1536/2401\n")

    code, out = _cli(capsys, ["tower", "--expr", "x*x", "--at", "3", "--terms", "4"])
    assert (code, out) == (0, "0\t9\n1\t6\n2\t2\n3\t0\n")

    code, out = _cli(capsys, ["series", "--expr", "exp(x)", "--at", "0", "--terms", "4", "--field", "f64"])
    assert code == 0
    assert all(math.isclose(a, b, rel_tol=1e-10) for a, b in zip(_column(out), [1, 1, 0.5, 1 / 6]))
    criterion("6 invocations")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
