import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from floodnet.bounds import (bound_windows, bounds_report, bounds_rows, doubled_lower_bound,
                             expected_knowledge_curve, knowledge_lower_bound, min_fks_time,
                             phi, proposition_check, proposition_check_many, regular_curve,
                             tightness_check, tightness_round, tightness_threshold)
from floodnet.errors import DomainError


def exact_curve(n, k_max):
    """The recursion in exact rationals, straight from the product form."""
    es = [Fraction(0)]
    for k in range(1, k_max + 1):
        prod = Fraction(1)
        for r in range(k):
            prod *= n - 2 - es[r]
        es.append(n - 1 - prod / Fraction(n - 1) ** (k - 1))
    return es


def test_phi_values():
    assert phi(3) == 0.0 and math.copysign(1, phi(3)) == 1
    assert phi(4) == pytest.approx(1.0, abs=1e-12)
    n = 150
    assert math.log2(n) < phi(n) < math.log2(n * n) - 2
    with pytest.raises(DomainError):
        phi(2)


def test_phi_vectorised_matches_scalar():
    ns = np.arange(3, 200)
    assert np.allclose(phi(ns), [phi(int(n)) for n in ns], atol=0, rtol=0)


def test_phi_monotone_and_nonnegative():
    vals = phi(np.arange(3, 100_000))
    assert np.all(vals >= 0)
    assert np.all(np.diff(vals[1:]) > 0)  # increasing from n = 4


def test_windows():
    assert bound_windows(4) == ((3.0, 4.0), (1.0, 2.0))
    assert bound_windows(3) == ((2.0, 3.0), (0.0, 1.0))


def test_windows_sweep():
    f = phi(np.arange(3, 1_000_001))
    earliest_high, latest_low = f + 1.0, f + 2.0
    assert np.all(earliest_high <= latest_low + 1.0)


@pytest.mark.parametrize("n,expected", [(1, 0), (2, 1), (3, 2), (8, 3), (9, 4), (150, 8)])
def test_min_fks_time(n, expected):
    assert min_fks_time(n) == expected == math.ceil(math.log2(n))


def test_curve_first_terms():
    for n in (3, 4, 17, 1000):
        c = expected_knowledge_curve(n, 1)
        assert c == [0.0, 1.0]


def test_curve_n4_e2():
    assert expected_knowledge_curve(4, 2)[2] == pytest.approx(7 / 3, abs=1e-12)


@pytest.mark.parametrize("n", [3, 4, 5, 10, 37, 100, 1000])
def test_curve_matches_exact_rationals(n):
    k_max = 14
    got = expected_knowledge_curve(n, k_max)
    want = exact_curve(n, k_max)
    for g, w in zip(got, want):
        assert g == pytest.approx(float(w), rel=1e-9, abs=1e-9)


def test_curve_large_n_no_overflow():
    c = expected_knowledge_curve(10**6, 40)
    assert all(math.isfinite(v) for v in c)
    assert c[-1] == pytest.approx(10**6 - 1, rel=1e-6)


@settings(max_examples=200)
@given(st.integers(3, 5000), st.integers(0, 40))
def test_regular_prefix_increasing_and_below(n, k_max):
    c = regular_curve(n, k_max)
    assert c[0] == 0.0
    assert all(a < b for a, b in zip(c, c[1:]))
    assert all(v < n - 1 for v in c)


def test_raw_recursion_overshoots_past_regular_prefix():
    # once a factor n-2-E_r turns negative the raw recursion exceeds n-1
    c = expected_knowledge_curve(4, 3)
    assert c[3] > 3
    assert regular_curve(4, 3) == c[:3]


def test_lower_bound_literal_form():
    for n in (4, 5, 50, 999):
        c = expected_knowledge_curve(n, 30)
        for k in range(2, 31):
            assert c[k] > knowledge_lower_bound(n, k)


def test_doubled_lower_bound_on_regular_prefix():
    for n in range(4, 400):
        c = regular_curve(n, 30)
        for k in range(2, len(c)):
            assert c[k] > doubled_lower_bound(n, k)


def test_proposition_examples():
    assert proposition_check(3) and proposition_check(4)
    assert math.log2(9) > 2 + phi(3) > math.log2(3)
    assert 2 + phi(4) == pytest.approx(3.0)
    with pytest.raises(DomainError):
        proposition_check(2)


def test_proposition_many_matches_scalar():
    ns = np.arange(3, 2000)
    assert proposition_check_many(ns).tolist() == [proposition_check(int(n)) for n in ns]


@pytest.mark.parametrize("n", [4, 10, 100])
def test_tightness_examples(n):
    assert tightness_check(n)


def test_tightness_round_convention():
    assert tightness_round(4) == 2  # floor(2 + 1) - 1
    assert tightness_round(10) == 4  # floor(5.367) - 1
    assert expected_knowledge_curve(10, 4)[4] < tightness_threshold(10)


def test_tightness_domain():
    with pytest.raises(DomainError):
        tightness_check(3)


def test_bounds_report():
    r = bounds_report(10)
    assert r.latest_window == (r.phi + 2, r.phi + 3)
    assert r.earliest_window == (r.phi, r.phi + 1)
    assert r.min_fks_time == 4
    ks = [k for k, _ in r.e_curve]
    assert ks == list(range(len(ks)))
    vals = [v for _, v in r.e_curve]
    assert all(a < b for a, b in zip(vals, vals[1:])) and max(vals) < 9


def test_bounds_rows_columns():
    (row,) = bounds_rows([4])
    assert row == {"n": 4, "phi": phi(4), "latest_low": phi(4) + 2, "latest_high": phi(4) + 3,
                   "earliest_low": phi(4), "earliest_high": phi(4) + 1, "min_fks": 2}
