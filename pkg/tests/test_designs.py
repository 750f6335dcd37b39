import itertools
import math

import pytest

import oracles
from ppinterleave.designs import (
    DEFamily,
    bounds,
    linear_ms_enumerate,
    ms_qpp,
    ms_qpp_is_reducible,
    ub_D,
    ub_DE,
    ub_DE_families,
)
from ppinterleave.geometry import InterleaverCode, spread_D, spread_via_representatives, translation_period
from ppinterleave.metrics import epsilon, zeta
from ppinterleave.modring import RingPolynomial, reduce_degree


def test_ms_qpp_examples():
    assert ms_qpp(4) == RingPolynomial.qpp(128, 15, 32)
    assert spread_D(InterleaverCode.from_poly(ms_qpp(4))) == 16
    assert ms_qpp(3) == RingPolynomial.qpp(32, 7, 16)
    assert reduce_degree(ms_qpp(3)) == RingPolynomial(32, (0, 23))
    assert ms_qpp(6) == RingPolynomial.qpp(2048, 63, 128)
    assert spread_D(InterleaverCode.from_poly(ms_qpp(6))) == 64
    with pytest.raises(ValueError):
        ms_qpp(0)


@pytest.mark.parametrize("k", range(1, 10))
def test_ms_qpp_reducibility_flag(k):
    f = ms_qpp(k)
    # for k <= 2 the quadratic term already vanishes mod N at construction
    assert ms_qpp_is_reducible(k) == (reduce_degree(f).degree < 2)


@pytest.mark.parametrize("k", range(4, 10))
def test_ms_qpp_structure(k):
    code = InterleaverCode.from_poly(ms_qpp(k))
    assert spread_via_representatives(code, range(translation_period(code))) == 2**k
    # zeta runs 2, 4, ..., 64 and epsilon 64, ..., 2048 over k = 4..9
    assert zeta(code) == 2 ** (k - 3)
    assert epsilon(code) == 2 ** (k + 2)


def test_ub_D_examples():
    assert ub_D(512) == (32.0, 32)
    real, integer = ub_D(4)
    assert real == pytest.approx(2.8284, abs=1e-4) and integer == 2
    assert ub_D(2) == (2.0, 2)
    with pytest.raises(ValueError):
        ub_D(1)


def test_ub_DE_examples():
    assert ub_DE(8) == pytest.approx(14 / 3)
    assert ub_DE(13) == pytest.approx(6.0)
    assert ub_DE(512) == pytest.approx(1022 / 31)
    assert ub_DE(512) - ub_D(512)[0] == pytest.approx(1 - 1 / 31)
    assert ub_DE(4) == 3
    assert ub_DE(10) is None
    b = bounds(13)
    assert b.ub_DE_family is DEFamily.CENTERED_SQUARE
    assert bounds(8).ub_DE_family is DEFamily.TWO_P_SQUARED
    assert bounds(4).ub_DE_family is DEFamily.INSPECTION
    assert bounds(10).ub_DE is None


def test_ub_DE_families_membership():
    two_p2 = {2 * p * p for p in range(2, 60)}
    centered = {p * p + (p - 1) ** 2 for p in range(2, 60)}
    for N in range(2, 4097):
        fams = {f for f, _ in ub_DE_families(N)}
        assert (DEFamily.TWO_P_SQUARED in fams) == (N in two_p2)
        assert (DEFamily.CENTERED_SQUARE in fams) == (N in centered)
        # the two closed-form families never coincide in this range
        assert len(fams - {DEFamily.INSPECTION}) <= 1


def test_ub_DE_gap_increases_and_stays_below_one():
    for family in (
        [2 * p * p for p in range(2, 80)],
        [p * p + (p - 1) ** 2 for p in range(2, 80)],
    ):
        gaps = [ub_DE(N) - ub_D(N)[0] for N in family]
        assert all(a < b for a, b in zip(gaps, gaps[1:]))
        assert all(g < 1 for g in gaps)


def test_ub_DE_holds_for_small_permutations():
    # exhaustive over all permutations of Z_8: D_E never exceeds the bound
    best = max(oracles.spread(p, "l1") for p in itertools.permutations(range(8)))
    assert best <= ub_DE(8)


def test_linear_ms_examples():
    assert 31 in linear_ms_enumerate(512)
    assert linear_ms_enumerate(2) == [1]
    for N in (3, 10, 100):
        with pytest.raises(ValueError):
            linear_ms_enumerate(N)


@pytest.mark.parametrize("n", range(1, 9))
def test_linear_ms_matches_oracle(n):
    N = 2 * n * n
    target = math.isqrt(2 * N)
    expected = [
        f1
        for f1 in range(1, N)
        if math.gcd(f1, N) == 1 and oracles.spread([(f1 * x) % N for x in range(N)]) == target
    ]
    got = linear_ms_enumerate(N)
    assert got == expected
    assert sorted(N - f for f in got) == got
