import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bmvt import (
    build_standard,
    graham_weight,
    h4_ratio,
    h4prime_bilinear,
    h4prime_implies_h4_check,
    make_eta,
)
from bmvt.errors import BadCutsError, InsufficientTableError
from bmvt.funtable import EXACT_INT
from bmvt.weights import scaled_by_weight

from oracles import divisors, mobius_of

# frozen from a direct-summation oracle run (see test_h4_ratio_golden_regression)
H4_GOLDEN_V1_10_V2_100_V_1000 = 0.5724104037392902


def brute_weighted_sum_of_squares(V1, V2, V):
    """sum_{n <= V} |((mu . eta) * 1)(n)|^2 by trial-divisor enumeration."""
    def eta(b):
        if b <= V1:
            return 1.0
        if b > V2:
            return 0.0
        return math.log(V2 / b) / math.log(V2 / V1)

    total = 0.0
    for n in range(1, V + 1):
        c = sum(mobius_of(d) * eta(d) for d in divisors(n))
        total += c * c
    return total


# -- the weight itself -----------------------------------------------------------

def test_eta_piecewise_values():
    eta = make_eta(10, 100)
    assert eta(10) == 1.0
    assert eta(3) == 1.0
    assert eta(math.sqrt(10 * 100)) == pytest.approx(0.5, abs=1e-12)
    assert eta(101) == 0.0
    assert eta(100) == pytest.approx(0.0, abs=1e-12)


def test_eta_continuous_at_v1():
    eta = make_eta(10, 100)
    assert eta(10.0000001) == pytest.approx(1.0, abs=1e-6)


def test_indicator_eta_is_sharp_truncation():
    eta = make_eta(7, 20, "indicator")
    assert eta(7) == 1.0
    assert eta(8) == 0.0
    assert eta(20) == 0.0


def test_make_eta_rejects_bad_cuts():
    with pytest.raises(BadCutsError):
        make_eta(10, 10)
    with pytest.raises(BadCutsError):
        make_eta(0.5, 10)


def test_user_table_eta_validated():
    with pytest.raises(BadCutsError):
        make_eta(2, 4, "user_table", table=[1.0, 0.5, 0.2, 0.1])
    eta = make_eta(2, 4, "user_table", table=[1.0, 1.0, 0.4, 0.1, 0.0])
    assert eta(3) == 0.4
    assert eta.bound == 1.0


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=1, max_value=100),
       st.floats(min_value=1.01, max_value=50))
def test_eta_sandwich_and_monotone(v1, factor):
    v2 = v1 * factor
    eta = make_eta(v1, v2)
    vals = eta.values_up_to(int(v2) + 5)[1:]
    assert np.all(vals >= 0) and np.all(vals <= 1)
    assert np.all(np.diff(vals) <= 1e-12)


def test_values_up_to_matches_scalar_calls():
    eta = make_eta(10, 100)
    arr = eta.values_up_to(120)
    assert all(arr[b] == pytest.approx(eta(b), abs=1e-12) for b in range(1, 121))


# -- Graham weights ----------------------------------------------------------------

def test_graham_vanishes_at_integer_cutoff_and_above():
    mu = build_standard("mobius", 50)
    g = graham_weight(mu, 20)
    assert g.table[20] == 0.0
    assert all(g.table[b] == 0.0 for b in range(21, 51))
    assert g.table[3] == pytest.approx(mobius_of(3) * math.log(20 / 3), abs=1e-12)


def test_weight_level_identity_gamma_vs_eta():
    # (Gamma_2 - Gamma_1) / log(V2/V1) = mu_f . eta entrywise for b <= V2
    mu = build_standard("mobius", 200)
    v1, v2 = 10.0, 100.0
    g1 = graham_weight(mu, v1).table.to_floats()
    g2 = graham_weight(mu, v2).table.to_floats()
    eta_vals = make_eta(v1, v2).values_up_to(200)
    want = mu.to_floats() * eta_vals
    got = (g2 - g1) / math.log(v2 / v1)
    assert np.max(np.abs(got[: 101] - want[: 101])) <= 1e-12


def test_scaled_by_weight_exact_for_indicator():
    mu = build_standard("mobius", 30)
    w = scaled_by_weight(mu, make_eta(10, 20, "indicator"))
    assert w.domain == EXACT_INT
    assert w[9] == mu[9]
    assert all(w[b] == 0 for b in range(11, 31))


# -- quadratic sum (the bounded ratio) ------------------------------------------------

def test_h4_ratio_at_v_equals_v1_closed_form():
    one = build_standard("one", 200)
    for v1, v2 in ((10, 100), (5, 80), (30, 90)):
        eta = make_eta(v1, v2)
        want = math.log(v2 / v1) / v1
        assert h4_ratio(one, eta, v1) == pytest.approx(want, rel=1e-12)


def test_h4_ratio_golden_regression():
    one = build_standard("one", 1000)
    got = h4_ratio(one, make_eta(10, 100), 1000)
    brute = brute_weighted_sum_of_squares(10, 100, 1000) * math.log(10) / 1000
    assert got == pytest.approx(brute, rel=1e-9)
    assert got == pytest.approx(H4_GOLDEN_V1_10_V2_100_V_1000, rel=1e-12)
    assert 0 < got <= 5


def test_h4_ratio_indicator_trivially_bounded():
    # with a sharp cutoff the numerator is at most V, so the ratio is
    # bounded by the explicit log factor alone
    one = build_standard("one", 500)
    eta = make_eta(50, 51, "indicator")
    r = h4_ratio(one, eta, 500)
    assert r <= math.log(51 / 50) * 5  # comfortably small


def test_h4_ratio_insufficient_table():
    one = build_standard("one", 50)
    with pytest.raises(InsufficientTableError):
        h4_ratio(one, make_eta(10, 100), 100)


# -- bilinear sum ----------------------------------------------------------------------

def test_graham_convolved_with_ones_is_lambda_plus_unit():
    # (Gamma_i * 1)(n) = Lambda(n) for 1 < n <= V_i and log V_i at n = 1
    one = build_standard("one", 60)
    mu = build_standard("mobius", 60)
    vm = build_standard("von_mangoldt", 60)
    from bmvt.funtable import convolve
    vi = 60.0
    g = convolve(graham_weight(mu, vi).table, one)
    assert g[1] == pytest.approx(math.log(vi), abs=1e-12)
    for n in range(2, 61):
        assert g[n] == pytest.approx(vm[n], abs=1e-10), n


def test_h4prime_single_term():
    one = build_standard("one", 1)
    s, normalized = h4prime_bilinear(one, 10, 100, 1)
    assert s == pytest.approx(math.log(10) * math.log(100), rel=1e-12)
    assert normalized == pytest.approx(s - math.log(10), rel=1e-12)


def test_h4prime_normalized_defect_is_order_one():
    one = build_standard("one", 10**4)
    _, normalized = h4prime_bilinear(one, 30, 300, 10**4)
    assert abs(normalized) <= 10


# -- the algebraic bridge ---------------------------------------------------------------

def test_h4prime_implies_h4_identity_ones():
    one = build_standard("one", 10**4)
    assert h4prime_implies_h4_check(one, 10, 100, 10**4) <= 1e-8


def test_h4prime_implies_h4_identity_totient():
    tot = build_standard("totient", 500)
    assert h4prime_implies_h4_check(tot, 5, 50, 500) <= 1e-8


def test_h4prime_implies_h4_single_term_near_zero():
    one = build_standard("one", 1)
    assert h4prime_implies_h4_check(one, 10, 100, 1) <= 1e-12
