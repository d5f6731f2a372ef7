import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from alphatime.finite_diff import (
    FDStencil,
    StencilError,
    central_weights,
    fd_derivative,
    fd_time_derivative,
)


def test_central_weights_known_values():
    assert central_weights(1) == (Fraction(-1, 2), 0, Fraction(1, 2))
    assert central_weights(2) == (1, -2, 1)
    assert central_weights(4) == (1, -4, 6, -4, 1)


@pytest.mark.parametrize("q", range(1, 7))
def test_central_weights_moments(q):
    w = central_weights(q)
    r = (len(w) - 1) // 2
    for j in range(len(w)):
        moment = sum(wk * Fraction(k) ** j for k, wk in zip(range(-r, r + 1), w))
        assert moment == (math.factorial(q) if j == q else 0)


@pytest.mark.parametrize("q", range(1, 7))
def test_exp_derivatives(q):
    res = fd_derivative(lambda t: np.exp(-t), q, 1.0)
    assert res.value == pytest.approx((-1) ** q * math.exp(-1), rel=1e-6)


@given(st.integers(0, 6), st.floats(-3, 3))
def test_polynomials_of_degree_q_are_exact(q, t):
    # derivative of order q of t^q is q!, cubic corrections cancel under Richardson
    order = max(q, 1)
    res = fd_derivative(lambda s: s ** order, order, t)
    assert res.value == pytest.approx(math.factorial(order), rel=1e-7, abs=1e-7)


def test_refined_stencil_halves_step_and_adds_level():
    s = FDStencil(2)
    r = s.refined()
    assert r.step(1.0) == pytest.approx(s.step(1.0) / 2)
    assert r.richardson_levels == s.richardson_levels + 1


def test_refinement_reduces_error():
    g = lambda t: np.sin(t)
    coarse = abs(fd_derivative(g, 3, 0.7, FDStencil(3, 0.2, 0)).value + math.cos(0.7))
    fine = abs(fd_derivative(g, 3, 0.7, FDStencil(3, 0.2, 0).refined()).value + math.cos(0.7))
    assert fine < coarse


def test_step_scales_with_t():
    s = FDStencil(1, 0.01)
    assert s.step(0.5) == 0.01
    assert s.step(4.0) == 0.04


def test_time_derivative_stencil_stays_positive():
    with pytest.raises(StencilError):
        fd_time_derivative(lambda t: t, 2, 0.03)
    with pytest.raises(StencilError):
        fd_time_derivative(lambda t: t, 1, 0.0)
    assert fd_time_derivative(lambda t: t * t, 2, 1.0).value == pytest.approx(2.0)


def test_underflowing_step_rejected():
    with pytest.raises(StencilError):
        fd_derivative(lambda t: t, 1, 1e17, FDStencil(1, 1e-17))


@pytest.mark.parametrize("kw", [{"order": 0}, {"order": 1, "base_step": -1.0},
                                {"order": 1, "richardson_levels": -1}])
def test_stencil_validation(kw):
    with pytest.raises(ValueError):
        FDStencil(**kw)
