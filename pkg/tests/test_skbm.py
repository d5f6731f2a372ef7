import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from alphatime.skbm import (
    SpectralCoefficients,
    SpectralDomain,
    boundary_sup,
    laplace_bridge,
    per_mode_identity,
    q_apply,
    semigroup_property_check,
    skbm_mc,
    skbm_pde_residual,
)

PI = math.pi
DOM = SpectralDomain.interval()
ONE = SpectralCoefficients.from_sines(DOM, {1: 1.0})
TWO = SpectralCoefficients.from_sines(DOM, {1: 1.0, 2: 1.0})
BUMP = SpectralCoefficients.indicator_bump(20)


@pytest.mark.parametrize("alpha", ["1/3", "1/2", "1", "3/2", "2"])
def test_single_mode_value_independent_of_alpha(alpha):
    assert q_apply(ONE, alpha, 1.0, PI / 2) == pytest.approx(math.exp(-1), rel=1e-15)


def test_second_mode_value():
    f = SpectralCoefficients.from_sines(DOM, {2: 1.0})
    assert q_apply(f, 1, 1.0, PI / 4) == pytest.approx(math.exp(-2), rel=1e-14)


def test_boundary_values_vanish():
    for c in (ONE, TWO, BUMP):
        assert abs(q_apply(c, "1/2", 0.3, 0.0)) < 1e-15
        assert abs(q_apply(c, "1/2", 0.3, PI)) < 1e-14


@pytest.mark.parametrize("c", [ONE, TWO, BUMP], ids=["1", "2", "20"])
@pytest.mark.parametrize("alpha", ["1", "1/2"])
def test_boundary_sup(c, alpha):
    assert boundary_sup(c, alpha, [0.1, 0.5, 1.0, 2.0]) < 1e-10


def test_box_domain_boundary_and_value():
    box = SpectralDomain((PI, PI))
    c = SpectralCoefficients.from_sines(box, {(1, 1): 1.0})
    # lambda = 2, rate for alpha = 1 is sqrt(2)
    assert q_apply(c, 1, 1.0, (PI / 2, PI / 2)) == pytest.approx(math.exp(-math.sqrt(2)), rel=1e-14)
    assert boundary_sup(c, 1, [0.5]) < 1e-14


def test_initial_condition_within_tail_bound():
    xs = np.linspace(0.2, PI - 0.2, 7)
    exact = ((xs > PI / 4) & (xs < 3 * PI / 4)).astype(float)
    approx = np.array([q_apply(BUMP, 1, 0.0, x) for x in xs])
    # pointwise error of the truncated sine series away from the jumps
    assert np.max(np.abs(approx - exact)[np.abs(xs - PI / 4) > 0.3]) < 0.1
    assert BUMP.tail_bound > 0
    assert SpectralCoefficients.from_function(DOM, np.sin, 5).tail_bound < 1e-7


def test_from_function_matches_exact_coefficients():
    c = SpectralCoefficients.from_function(DOM, lambda x: math.sin(x) + 0.5 * math.sin(3 * x), 4)
    d = SpectralCoefficients.from_sines(DOM, {1: 1.0, 3: 0.5})
    assert q_apply(c, "1/2", 0.7, 1.1) == pytest.approx(q_apply(d, "1/2", 0.7, 1.1), abs=1e-12)


@given(st.sampled_from(["1", "1/2", "1/3", "2/3", "3/2", "2"]), st.integers(1, 10_000))
def test_per_mode_identity_exact(alpha, lam):
    assert per_mode_identity(alpha, lam) == Fraction(0)


def test_pde_residual_alpha_one_single_mode():
    rep = skbm_pde_residual(ONE, 1, [1.0], [PI / 2])
    p = rep.points[0]
    assert p.lhs == pytest.approx(-math.exp(-1), rel=1e-14)
    assert rep.max_abs_residual < 1e-6 and rep.passed


def test_pde_residual_alpha_half_two_modes():
    rep = skbm_pde_residual(TWO, "1/2", [1.0], [1.0])
    assert rep.max_abs_residual < 1e-4 and rep.passed


def test_pde_residual_bump():
    rep = skbm_pde_residual(BUMP, 1, [0.5], [0.5, PI / 2, 2.5])
    assert rep.max_abs_residual < 1e-5


def test_semigroup_property():
    assert semigroup_property_check(ONE, "1/2", 0.3, 0.9, [0.4, PI / 2]) < 1e-15
    assert semigroup_property_check(BUMP, "1/2", 0.5, 0.5, np.linspace(0.1, 3.0, 9)) < 1e-12
    xs = np.linspace(0.1, 3.0, 9)
    t0 = [abs(q_apply(BUMP, 1, 0.0, x) - BUMP.evaluate(x)[0]) for x in xs]
    assert max(t0) < 1e-15


def test_laplace_bridge():
    v, e = laplace_bridge(1.0, 1, 1.0)
    assert abs(v - math.exp(-1)) < 1e-8
    assert e < 1e-8
    v, _ = laplace_bridge(4.0, 1, 0.5)
    assert v == pytest.approx(q_apply(SpectralCoefficients.from_sines(DOM, {2: 1.0}), 1, 0.5, PI / 4), abs=1e-8)


def test_laplace_bridge_numeric_branch():
    v, _ = laplace_bridge(4.0, "1/2", 1.0)
    assert v == pytest.approx(math.exp(-(4.0 ** 0.25)), abs=1e-8)


def test_skbm_mc_single_mode():
    res = skbm_mc(ONE, 1, 1.0, PI / 2, 4e-3, 40_000, seed=1)
    assert res.spectral == pytest.approx(math.exp(-1))
    assert res.passed


def test_skbm_mc_decays_at_large_t():
    res = skbm_mc(ONE, 1, 10.0, PI / 2, 1e-2, 5_000, seed=2, levels=1)
    assert abs(res.finest.mean) <= 4 * max(res.finest.stderr, 1e-3)


def test_skbm_mc_near_boundary_smaller():
    near = skbm_mc(ONE, 1, 1.0, 0.05, 4e-3, 10_000, seed=3, levels=1).finest
    mid = skbm_mc(ONE, 1, 1.0, PI / 2, 4e-3, 10_000, seed=3, levels=1).finest
    assert near.mean <= mid.mean


def test_skbm_mc_validation():
    with pytest.raises(ValueError):
        skbm_mc(ONE, 1, 1.0, 0.0, 1e-3, 1_000, seed=1)
    with pytest.raises(ValueError):
        skbm_mc(ONE, 2, 1.0, 1.0, 1e-3, 1_000, seed=1)


def test_q_apply_rejects_outside_point():
    with pytest.raises(ValueError):
        q_apply(ONE, 1, 1.0, 4.0)
