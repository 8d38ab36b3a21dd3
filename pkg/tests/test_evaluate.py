import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from senrel.dist import FailureDistribution
from senrel.evaluate import (
    Curve,
    WspParams,
    eval_curve,
    linear_grid,
    prob_fail,
    reliability,
    wsp_fail_prob,
    wsp_fail_prob_quad,
)
from senrel.model import BasicEvent, Block, NAnd, NOr, Parallel, Series, ValidationError, Wsp, dft_to_drbd
from senrel.sen import Analysis, Formalism, SenModelSpec, Spares, Variant, build_model
from trees import dft_trees

LAM = 1e-5
D = FailureDistribution(LAM)


def brute_force(probs, fails):
    """Sum over all joint leaf states; ``fails`` maps a state tuple to bool."""
    total = 0.0
    for state in itertools.product((False, True), repeat=len(probs)):
        if fails(state):
            total += math.prod(p if x else 1 - p for p, x in zip(probs, state))
    return total


# warm spare kernel


def test_wsp_zero_time():
    assert wsp_fail_prob(WspParams(3e-4, 1e-4, 2e-5), 0) == 0.0
    assert wsp_fail_prob_quad(D, D, D, 0) == 0.0


def test_wsp_hot_spare():
    expected = (1 - math.exp(-1)) ** 2
    assert expected == pytest.approx(0.399576, abs=1e-6)
    assert wsp_fail_prob(WspParams(LAM, LAM, LAM), 1e5) == pytest.approx(expected, abs=1e-12)
    assert wsp_fail_prob_quad(D, D, D, 1e5) == pytest.approx(expected, abs=1e-9)


def test_wsp_warm_spare_value():
    quad = wsp_fail_prob_quad(D, D, FailureDistribution(1e-6), 1000)
    closed = wsp_fail_prob(WspParams(LAM, LAM, 1e-6), 1000)
    assert quad == pytest.approx(closed, abs=1e-12)
    # third route: scipy's adaptive Gauss-Kronrod on the untransformed integral
    lam_d = 1e-6
    ref, _ = integrate.quad(
        lambda y: LAM * math.exp(-LAM * y) * (1 - math.exp(-lam_d * y) * math.exp(-LAM * (1000 - y))),
        0,
        1000,
        epsabs=1e-15,
    )
    assert closed == pytest.approx(ref, abs=1e-13)
    assert closed == pytest.approx(5.4616513e-05, abs=1e-12)


def test_wsp_degenerate_exponent_uses_limit():
    # main + dormant == active: the closed form's 0/0 case
    params = WspParams(1e-5, 1.2e-5, 2e-6)
    for t in (10.0, 1e4, 3e5):
        quad = wsp_fail_prob_quad(FailureDistribution(1e-5), FailureDistribution(1.2e-5), FailureDistribution(2e-6), t)
        assert wsp_fail_prob(params, t) == pytest.approx(quad, abs=1e-9)


def test_wsp_negative_time():
    with pytest.raises(ValueError):
        wsp_fail_prob(WspParams(LAM, LAM, LAM), -1)
    with pytest.raises(ValueError):
        wsp_fail_prob_quad(D, D, D, -1)


@settings(max_examples=200)
@given(
    lam=st.floats(1e-6, 1e-3),
    lam_a=st.floats(1e-6, 1e-3),
    alpha=st.floats(0.01, 1.0),
    t1=st.floats(0, 3e5),
    t2=st.floats(0, 3e5),
)
def test_wsp_properties(lam, lam_a, alpha, t1, t2):
    params = WspParams(lam, lam_a, alpha * lam_a)
    lo, hi = sorted((t1, t2))
    assert 0.0 <= wsp_fail_prob(params, lo) <= wsp_fail_prob(params, hi) + 1e-15
    assert wsp_fail_prob(params, hi) <= -math.expm1(-lam * hi) + 1e-15


def test_wsp_lower_dormancy_never_hurts():
    for t in np.linspace(0, 2e5, 21):
        values = [wsp_fail_prob(WspParams.from_dormancy(LAM, a), t) for a in np.linspace(0.05, 1, 20)]
        assert all(a <= b + 1e-15 for a, b in zip(values, values[1:]))


# gate evaluation


def test_or_of_three():
    tree = NOr([BasicEvent(i, D) for i in range(3)])
    p = D.cdf(1000)
    expected = brute_force([p] * 3, any)
    assert expected == pytest.approx(0.0295545, abs=1e-7)
    assert prob_fail(tree, 1000) == pytest.approx(expected, abs=1e-15)


def test_and_of_two_ors_at_half():
    t = 1000.0
    half = FailureDistribution(math.log(2) / t)
    tree = NAnd([NOr([BasicEvent(0, half), BasicEvent(1, half)]), NOr([BasicEvent(2, half), BasicEvent(3, half)])])
    expected = brute_force([0.5] * 4, lambda s: (s[0] or s[1]) and (s[2] or s[3]))
    assert expected == 0.5625
    assert prob_fail(tree, t) == pytest.approx(0.5625, abs=1e-15)


def test_series_of_three_blocks():
    tree = Series([Block(i, D) for i in range(3)])
    assert reliability(tree, 1000) == pytest.approx(0.9704455, abs=1e-7)
    assert reliability(tree, 1000) == pytest.approx(1 - prob_fail(NOr([BasicEvent(i, D) for i in range(3)]), 1000), abs=1e-15)


def test_parallel_of_two_six_block_paths():
    tree = Parallel([Series([Block(6 * k + i, D) for i in range(6)]) for k in range(2)])
    assert reliability(tree, 1e4) == pytest.approx(0.796429, abs=1e-6)
    assert reliability(tree, 1e4) == pytest.approx(1 - (1 - math.exp(-0.6)) ** 2, abs=1e-15)


@settings(max_examples=50)
@given(dft_trees())
def test_time_zero(tree):
    assert prob_fail(tree, 0) == 0.0
    assert reliability(dft_to_drbd(tree), 0) == 1.0


def test_wrong_formalism_and_invalid():
    with pytest.raises(TypeError):
        prob_fail(Block(0, D), 1.0)
    with pytest.raises(TypeError):
        reliability(BasicEvent(0, D), 1.0)
    with pytest.raises(ValidationError):
        prob_fail(NOr([BasicEvent(0, D), BasicEvent(0, D)]), 1.0)
    with pytest.raises(ValueError):
        prob_fail(BasicEvent(0, D), -5)


@settings(max_examples=200)
@given(dft_trees(), st.floats(0, 2e5))
def test_complement_identity(tree, t):
    assert abs(prob_fail(tree, t) + reliability(dft_to_drbd(tree), t) - 1) <= 1e-12


# curves


def test_curve_on_single_point():
    assert eval_curve(BasicEvent(0, D), [0]).points == ((0.0, 0.0),)
    assert eval_curve(Block(0, D), [0]).points == ((0.0, 1.0),)


@settings(max_examples=50)
@given(dft_trees())
def test_curve_monotone_for_dft(tree):
    values = eval_curve(tree, linear_grid(0, 2e5, 41)).values
    assert all(a <= b + 1e-15 for a, b in zip(values, values[1:]))


def test_grid_validation():
    with pytest.raises(ValueError):
        eval_curve(BasicEvent(0, D), [0, 5, 5])
    with pytest.raises(ValueError):
        eval_curve(BasicEvent(0, D), [-1, 5])
    with pytest.raises(ValueError):
        Curve([(0, 0.5), (1, 1.5)])
    with pytest.raises(ValueError):
        linear_grid(0, 1e5, 1)
    grid = linear_grid(0, 1e5, 201)
    assert len(grid) == 201 and grid[0] == 0 and grid[-1] == 1e5 and grid[1] == 500


# the explicit product formulas for the generated network models, written
# out from the index sets rather than by walking the tree


def F(t, lam=LAM):
    return 1 - math.exp(-lam * t)


def P_wsp(t, alpha=0.1):
    return wsp_fail_prob(WspParams.from_dormancy(LAM, alpha), t)


def prod_survive(size, t):
    return math.prod(1 - F(t) for _ in range(size))


def spec(**kw):
    base = dict(n=128, variant=Variant.SEN_PLUS, formalism=Formalism.DFT, spares=Spares.PAPER_DEFAULT, rate=LAM, dormancy=0.1)
    base.update(kw)
    return SenModelSpec(**base)


TIMES = [0.0, 1.0, 500.0, 1e4, 5e4, 1e5, 2e5]


@pytest.mark.parametrize("n", [8, 128])
@pytest.mark.parametrize("t", TIMES)
def test_terminal_sen_formula(n, t):
    model = build_model(spec(n=n, variant=Variant.SEN, analysis=Analysis.TERMINAL))
    rest = int(math.log2(n)) - 1
    expected = 1 - (1 - P_wsp(t)) * prod_survive(rest, t)
    assert prob_fail(model, t) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("n", [4, 8, 128])
@pytest.mark.parametrize("t", TIMES)
def test_terminal_sen_plus_formula(n, t):
    model = build_model(spec(n=n, analysis=Analysis.TERMINAL))
    path = int(math.log2(n)) - 1
    both_paths = (1 - prod_survive(path, t)) * (1 - prod_survive(path, t))
    expected = 1 - (1 - P_wsp(t)) * (1 - both_paths) * (1 - P_wsp(t))
    assert prob_fail(model, t) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("t", TIMES)
def test_broadcast_sen_plus_formula(t):
    model = build_model(spec(analysis=Analysis.BROADCAST))
    both_paths = (1 - prod_survive(63, t)) ** 2
    expected = 1 - (1 - P_wsp(t)) * (1 - both_paths) * prod_survive(64, t)
    assert prob_fail(model, t) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("spares", [Spares.PAPER_DEFAULT, Spares.ALL_INPUTS, Spares.NONE])
@pytest.mark.parametrize("t", TIMES)
def test_network_sen_formula(spares, t):
    model = build_model(spec(n=16, variant=Variant.SEN, analysis=Analysis.NETWORK, spares=spares))
    total = 8 * 4
    spared = {Spares.PAPER_DEFAULT: 1, Spares.ALL_INPUTS: 8, Spares.NONE: 0}[spares]
    expected = 1 - (1 - P_wsp(t)) ** spared * prod_survive(total - spared, t)
    assert prob_fail(model, t) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("spares", [Spares.PAPER_DEFAULT, Spares.ALL_INPUTS])
@pytest.mark.parametrize("t", TIMES)
def test_network_sen_plus_formula(spares, t):
    model = build_model(spec(analysis=Analysis.NETWORK, spares=spares))
    if spares is Spares.ALL_INPUTS:
        inputs = (1 - P_wsp(t)) ** 64
    else:
        inputs = (1 - P_wsp(t)) * prod_survive(63, t)
    paths = 1 - (1 - prod_survive(160, t)) * (1 - prod_survive(160, t))
    pairs = math.prod(1 - F(t) * F(t) for _ in range(32))
    expected = 1 - inputs * paths * prod_survive(64, t) * pairs
    assert prob_fail(model, t) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("analysis", list(Analysis))
@pytest.mark.parametrize("variant", list(Variant))
def test_drbd_duals_match(analysis, variant):
    kw = dict(n=32, variant=variant, analysis=analysis)
    dft = build_model(spec(**kw))
    drbd = build_model(spec(formalism=Formalism.DRBD, **kw))
    for t in TIMES:
        assert abs(prob_fail(dft, t) + reliability(drbd, t) - 1) <= 1e-12


@pytest.mark.parametrize("analysis", list(Analysis))
def test_spares_never_hurt(analysis):
    with_spares = build_model(spec(analysis=analysis, spares=Spares.ALL_INPUTS if analysis is Analysis.NETWORK else Spares.PAPER_DEFAULT))
    without = build_model(spec(analysis=analysis, spares=Spares.NONE))
    for t in linear_grid(0, 2e5, 81):
        assert prob_fail(with_spares, t) <= prob_fail(without, t)
