import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bmvt import (
    VaughanParams,
    blockwise_max_sums,
    build_standard,
    char_sum_max,
    convolve,
    dyadic_cover,
    enumerate_characters,
    make_eta,
    restrict,
    weighted_decomposition,
)
from bmvt.errors import BadIntervalError, InsufficientTableError, NotInvertibleError
from bmvt.funtable import FunTable
from bmvt.weights import scaled_by_weight

from oracles import divisors, mobius_of, von_mangoldt_of


def brute_classic_components(u1, v1, N):
    """The sharp-truncation four-part split of Lambda, from definitions.

    Built exclusively with divisor/factorization oracles, entry by entry.
    """
    lam = [0.0] + [von_mangoldt_of(n) for n in range(1, N + 1)]
    mu = [0] + [mobius_of(n) for n in range(1, N + 1)]

    def conv2(a, b, n):
        return sum(a[d] * b[n // d] for d in divisors(n))

    lam_le = [v if i <= u1 else 0.0 for i, v in enumerate(lam)]
    lam_gt = [v if i > u1 else 0.0 for i, v in enumerate(lam)]
    mu_le = [v if i <= v1 else 0 for i, v in enumerate(mu)]
    mu_gt = [v if i > v1 else 0 for i, v in enumerate(mu)]
    logv = [0.0] + [math.log(n) for n in range(1, N + 1)]
    one = [1] * (N + 1)

    l1 = lam_le[:]
    inner = [0.0] + [conv2(mu_le, one, n) for n in range(1, N + 1)]
    l2 = [0.0] + [-conv2(lam_le, inner, n) for n in range(1, N + 1)]
    l3 = [0.0] + [conv2(mu_le, logv, n) for n in range(1, N + 1)]
    inner4 = [0.0] + [conv2(mu_gt, one, n) for n in range(1, N + 1)]
    l4 = [0.0] + [conv2(lam_gt, inner4, n) for n in range(1, N + 1)]
    return l1, l2, l3, l4


# -- parameter container ------------------------------------------------------------

def test_params_invariants():
    with pytest.raises(BadIntervalError):
        VaughanParams.with_kind(5, 3, 10, 100)      # U0 > U1
    with pytest.raises(BadIntervalError):
        VaughanParams.with_kind(0.5, 3, 10, 100)    # U0 < 1
    with pytest.raises(BadIntervalError):
        VaughanParams(1, 2, 10, 100, make_eta(10, 50))  # eta cuts disagree


def test_classic_preset_uses_indicator():
    p = VaughanParams.classic(2, 5, 7)
    assert p.eta.kind == "indicator"
    assert p.eta(7) == 1.0 and p.eta(8) == 0.0


# -- the identity --------------------------------------------------------------------

def test_indicator_weight_reproduces_classic_components():
    N, u1, v1 = 300, 10.0, 10.0
    f = build_standard("one", N)
    g = build_standard("log", N)
    params = VaughanParams.classic(5, u1, v1)
    d = weighted_decomposition(f, g, params, N)
    b1, b2, b3, b4 = brute_classic_components(u1, v1, N)
    for got, want in zip(d.components, (b1, b2, b3, b4)):
        arr = got.to_floats()
        assert np.max(np.abs(arr - np.array(want))) <= 1e-9, got.name


def test_residual_classic_pair_barban_vehov():
    N = 10**4
    f = build_standard("one", N)
    g = build_standard("log", N)
    d = weighted_decomposition(f, g, VaughanParams.with_kind(10, 10, 10, 100), N)
    assert d.residual <= 1e-9


def test_residual_exactly_zero_in_exact_domains():
    N = 400
    f = build_standard("one", N)
    g = build_standard("totient", N)      # exact g keeps the whole identity exact
    params = VaughanParams.classic(4, 9, 7)
    d = weighted_decomposition(f, g, params, N)
    assert d.residual == 0.0
    assert all(t.is_exact() for t in d.components)


def test_lambda2_split_sums_to_lambda2():
    N = 2000
    f = build_standard("one", N)
    g = build_standard("log", N)
    d = weighted_decomposition(f, g, VaughanParams.with_kind(5, 20, 10, 100), N)
    total = d.lambda2_low.to_floats() + d.lambda2_high.to_floats()
    assert np.max(np.abs(total - d.lambda2.to_floats())) <= 1e-12


def test_lambda4_vanishes_up_to_max_cut():
    N = 3000
    f = build_standard("one", N)
    g = build_standard("log", N)
    for u1, v1, v2 in ((10, 30, 300), (50, 20, 200)):
        params = VaughanParams.with_kind(u1, u1, v1, v2)
        d = weighted_decomposition(f, g, params, N)
        cut = int(max(u1, v1))
        assert np.max(np.abs(d.lambda4.to_floats()[1: cut + 1])) == 0.0


def test_decomposition_errors():
    f = build_standard("one", 100)
    g = build_standard("log", 100)
    with pytest.raises(InsufficientTableError):
        weighted_decomposition(f, g, VaughanParams.with_kind(2, 2, 2, 4), 200)
    with pytest.raises(NotInvertibleError):
        weighted_decomposition(g, f, VaughanParams.with_kind(2, 2, 2, 4), 100)


@settings(max_examples=20, deadline=None)
@given(st.floats(min_value=1, max_value=40), st.floats(min_value=0, max_value=30),
       st.floats(min_value=1, max_value=40), st.floats(min_value=1.1, max_value=20),
       st.booleans())
def test_residual_property_random_cuts(u0, du, v1, vr, sharp):
    u1 = u0 + du
    v2 = v1 * vr
    kind = "indicator" if sharp else "barban_vehov"
    params = VaughanParams(u0, u1, v1, v2, make_eta(v1, v2, kind))
    f = build_standard("one", 500)
    g = build_standard("log", 500)
    d = weighted_decomposition(f, g, params, 500)
    assert d.residual <= 1e-9


def test_supplied_mu_matches_internal():
    N = 500
    f = build_standard("one", N)
    g = build_standard("log", N)
    params = VaughanParams.with_kind(4, 8, 6, 60)
    d1 = weighted_decomposition(f, g, params, N)
    d2 = weighted_decomposition(f, g, params, N, mu_f=build_standard("mobius", N))
    for a, b in zip(d1.components, d2.components):
        assert np.max(np.abs(a.to_floats() - b.to_floats())) <= 1e-12


# -- section-level identities ----------------------------------------------------------

def test_s4_rewriting_complement_weight():
    # ((mu_f . (1 - eta)) * f) restricted above V1 = -((mu_f . eta) * f) there
    N = 4000
    f = build_standard("one", N)
    mu = build_standard("mobius", N)
    eta = make_eta(15, 150)
    w = scaled_by_weight(mu, eta)
    wc = scaled_by_weight(mu, eta, complement=True)
    a = restrict(convolve(wc, f), 15, math.inf).to_floats()
    b = restrict(convolve(w, f), 15, math.inf).to_floats()
    assert np.max(np.abs(a + b)) <= 1e-9


def test_tail_product_truncation_loses_nothing():
    # f1_{>N1} * f2_{>N2} up to x only sees f1 entries below x / N2
    N = 2000
    n1, n2 = 12.0, 7.0
    vm = build_standard("von_mangoldt", N)
    one = build_standard("one", N)
    f1_tail = restrict(vm, n1, math.inf)
    f2_tail = restrict(one, n2, math.inf)
    full = convolve(f1_tail, f2_tail)
    truncated = convolve(restrict(f1_tail, 0, N / n2), f2_tail)
    assert np.max(np.abs(full.to_floats() - truncated.to_floats())) <= 1e-12


# -- dyadic cover ------------------------------------------------------------------------

def test_cover_10_100():
    c = dyadic_cover(10, 100)
    assert c.ks == (0, 1, 2, 3)
    assert c.blocks == ((10, 20), (20, 40), (40, 80), (80, 160))
    assert len(c.ks) <= math.ceil(math.log2(100 / 10)) + 1


def test_cover_single_doubling():
    assert dyadic_cover(7, 14).ks == (0,)


def test_cover_from_one():
    for x in (2, 10, 64, 1000):
        c = dyadic_cover(1, x)
        assert len(c.ks) == math.ceil(math.log2(x))


def test_cover_bad_interval():
    with pytest.raises(BadIntervalError):
        dyadic_cover(10, 10)
    with pytest.raises(BadIntervalError):
        dyadic_cover(0.5, 10)


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=1, max_value=10**6),
       st.floats(min_value=1.0000001, max_value=2000))
def test_cover_property_random(n1, ratio):
    m1 = n1 * ratio
    c = dyadic_cover(n1, m1)
    # cover: blocks are contiguous from N1, so one endpoint check suffices
    assert c.blocks[0][0] == n1
    assert all(a[1] == b[0] for a, b in zip(c.blocks, c.blocks[1:]))
    assert c.blocks[-1][1] >= m1
    assert len(c.ks) <= math.ceil(math.log2(m1 / n1)) + 1
    # minimality of the left-anchored family
    if len(c.ks) > 1:
        assert c.blocks[-2][1] < m1


# -- blockwise sums ------------------------------------------------------------------------

def chi3():
    return [c for c in enumerate_characters(3) if not c.principal][0]


def test_single_block_matches_unsplit():
    N = 1000
    vm = build_standard("von_mangoldt", N)
    one = build_standard("one", N)
    cover = dyadic_cover(10, 20)
    sums = blockwise_max_sums(vm, one, cover, chi3(), N)
    unsplit = char_sum_max(
        convolve(restrict(vm, 10, 20), restrict(one, 0, N / 10)), chi3(), N)
    assert len(sums) == 1
    assert sums[0] == pytest.approx(unsplit.max_abs, abs=1e-9)


def test_blockwise_triangle_inequality():
    N = 1000
    vm = build_standard("von_mangoldt", N)
    one = build_standard("one", N)
    cover = dyadic_cover(10, 100)
    sums = blockwise_max_sums(vm, one, cover, chi3(), N)
    unsplit = char_sum_max(convolve(restrict(vm, 10, 100), one), chi3(), N)
    assert sum(sums) >= unsplit.max_abs - 1e-9


def test_empty_block_contributes_zero():
    N = 500
    # support {40..49} only: the second block (50, 100] is empty
    vals = np.zeros(N)
    vals[39:49] = 1.0
    f1 = FunTable("spot", vals, "real")
    one = build_standard("one", N)
    cover = dyadic_cover(25, 100)
    sums = blockwise_max_sums(f1, one, cover, chi3(), N)
    assert len(sums) == 2
    assert sums[1] == 0.0
