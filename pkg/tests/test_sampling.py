import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special, stats

from alphatime.sampling import (
    AlphaIndex,
    RngStream,
    sample_alpha_time_marginal,
    sample_path,
    sample_subordinator,
    sample_symmetric_stable,
)

N = 200_000


# -- AlphaIndex ---------------------------------------------------------------------------------

@pytest.mark.parametrize("text, l, m", [("1/2", 1, 2), ("3/2", 3, 2), ("2", 2, 1), ("1/3", 1, 3)])
def test_alpha_index_parses_fractions(text, l, m):
    a = AlphaIndex.of(text)
    assert (a.l, a.m) == (l, m)
    assert a.fraction == Fraction(l, m)


def test_alpha_index_accepts_float_and_int():
    assert AlphaIndex.of(0.5) == AlphaIndex(1, 2)
    assert AlphaIndex.of(1) == AlphaIndex(1, 1)
    assert AlphaIndex.of(AlphaIndex(1, 3)) == AlphaIndex(1, 3)


@pytest.mark.parametrize("l, m", [(2, 4), (5, 2), (0, 1), (3, 1)])
def test_alpha_index_rejects_invalid(l, m):
    with pytest.raises(ValueError):
        AlphaIndex(l, m)


@given(st.integers(1, 40), st.integers(1, 40))
def test_alpha_index_invariants(l, m):
    if math.gcd(l, m) != 1 or Fraction(l, m) > 2:
        with pytest.raises(ValueError):
            AlphaIndex(l, m)
    else:
        a = AlphaIndex(l, m)
        assert 0 < a.value <= 2


# -- RngStream ----------------------------------------------------------------------------------

def test_rng_stream_reproducible():
    a = RngStream(7, 3).generator.standard_normal(10)
    b = RngStream(7, 3).generator.standard_normal(10)
    assert np.array_equal(a, b)


def test_rng_streams_distinct_and_uncorrelated():
    a = RngStream(7, 0).generator.standard_normal(100_000)
    b = RngStream(7, 1).generator.standard_normal(100_000)
    assert not np.array_equal(a[:10], b[:10])
    assert abs(np.corrcoef(a, b)[0, 1]) < 4 / math.sqrt(100_000)


# -- symmetric stable ---------------------------------------------------------------------------

def test_cauchy_characteristic_function():
    y = sample_symmetric_stable(1, 1.0, RngStream(1, 0).generator, size=N)
    assert abs(np.cos(y).mean() - math.exp(-1)) <= 4 / math.sqrt(N)


def test_gaussian_branch_variance_is_2t():
    y = sample_symmetric_stable(2, 0.5, RngStream(2, 0).generator, size=N)
    # variance of the sample variance for a Gaussian is 2 sigma^4 / N
    assert abs(y.var() - 1.0) <= 4 * math.sqrt(2.0 / N)


def test_cauchy_ks_against_closed_cdf():
    y = sample_symmetric_stable(1, 1.0, RngStream(3, 0).generator, size=20_000)
    assert stats.kstest(y, lambda v: 0.5 + np.arctan(v) / math.pi).pvalue > 0.01


@pytest.mark.parametrize("alpha", ["1/3", "1/2", "3/2"])
@pytest.mark.parametrize("xi", [0.5, 1.0, 2.0])
def test_cms_characteristic_function(alpha, xi):
    a = AlphaIndex.of(alpha)
    y = sample_symmetric_stable(a, 1.0, RngStream(4, 0).generator, size=N)
    assert abs(np.cos(xi * y).mean() - math.exp(-xi ** a.value)) <= 4 / math.sqrt(N)


@pytest.mark.parametrize("alpha", ["1/2", "1", "3/2"])
def test_stable_scaling_law(alpha):
    t = 2.5
    a = AlphaIndex.of(alpha)
    y_t = sample_symmetric_stable(a, t, RngStream(5, 0).generator, size=20_000)
    y_1 = t ** (1 / a.value) * sample_symmetric_stable(a, 1.0, RngStream(5, 1).generator, size=20_000)
    assert stats.ks_2samp(y_t, y_1).pvalue > 0.01


def test_scalar_draw_and_determinism():
    v = sample_symmetric_stable("1/2", 1.0, RngStream(9, 2))
    assert isinstance(v, float)
    assert v == sample_symmetric_stable("1/2", 1.0, RngStream(9, 2))


@pytest.mark.parametrize("alpha, t", [(0.0, 1.0), (2.5, 1.0), (1.0, 0.0), (1.0, -1.0)])
def test_stable_rejects_bad_arguments(alpha, t):
    with pytest.raises(ValueError):
        sample_symmetric_stable(alpha, t, 0)


# -- subordinator -------------------------------------------------------------------------------

def test_subordinator_laplace_transform():
    s = sample_subordinator("1/2", 1.0, RngStream(6, 0).generator, size=N)
    v = np.exp(-s)
    assert abs(v.mean() - math.exp(-1)) <= 4 * v.std() / math.sqrt(N)


def test_levy_subordinator_ks_against_closed_cdf():
    s = sample_subordinator(0.5, 1.0, RngStream(6, 1).generator, size=20_000)
    assert np.all(s > 0)
    assert stats.kstest(s, lambda v: special.erfc(1.0 / (2.0 * np.sqrt(v)))).pvalue > 0.01


def test_subordinator_scaling_t2_equals_4_t1():
    a = sample_subordinator(0.5, 2.0, RngStream(6, 2).generator, size=20_000)
    b = 4.0 * sample_subordinator(0.5, 1.0, RngStream(6, 3).generator, size=20_000)
    assert stats.ks_2samp(a, b).pvalue > 0.01


@pytest.mark.parametrize("beta", [0.0, 1.0, 1.5, -0.2])
def test_subordinator_rejects_beta(beta):
    with pytest.raises(ValueError):
        sample_subordinator(beta, 1.0, 0)


# -- paths --------------------------------------------------------------------------------------

def test_brownian_path_variance():
    p = sample_path("brownian", [0.0, 1.0], 0.0, RngStream(8, 0).generator, n_paths=N)
    end = np.asarray(p.values)[..., -1, :].ravel() if np.ndim(p.values) == 3 else np.asarray(p.values)[:, -1]
    assert abs(end.var() - 2.0) <= 4 * 2.0 * math.sqrt(2.0 / N)


def test_stable_path_composes_increments():
    p = sample_path("stable", [0.0, 0.5, 1.0], 0.0, RngStream(8, 1).generator, alpha=1, n_paths=20_000)
    end = np.asarray(p.values)[:, -1]
    one = sample_symmetric_stable(1, 1.0, RngStream(8, 2).generator, size=20_000)
    assert stats.ks_2samp(end, one).pvalue > 0.01


def test_subordinator_path_increments_positive():
    grid = np.linspace(0.0, 2.0, 21)
    p = sample_path("subordinator", grid, 0.0, RngStream(8, 3).generator, beta=0.5, n_paths=500)
    assert np.all(np.diff(np.asarray(p.values), axis=-1) > 0)


def test_path_skeleton_starts_at_start():
    p = sample_path("brownian", [0.0, 0.1, 0.3], [1.0, -2.0], RngStream(8, 4).generator, dim=2)
    assert p.times[0] == 0.0
    assert np.allclose(np.asarray(p.values)[0], [1.0, -2.0])
    assert p.increments.shape[0] == 2


@pytest.mark.parametrize("grid", [[], [0.0, 0.5, 0.5], [0.1, 0.2], [0.0, 1.0, 0.5]])
def test_path_rejects_bad_grids(grid):
    with pytest.raises(ValueError):
        sample_path("brownian", grid, 0.0, 0)


# -- alpha-time marginal ------------------------------------------------------------------------

def test_alpha_time_marginal_matches_kernel_integral():
    from alphatime.densities import weighted_kernel_integral

    z = sample_alpha_time_marginal(1, 1.0, [0.0], RngStream(10, 0).generator, size=N)
    v = np.cos(z[:, 0])
    g = weighted_kernel_integral(1, 1.0, 1.0).value
    assert abs(v.mean() - g) <= 4 * v.std() / math.sqrt(N)


def test_alpha_time_marginal_small_t_stays_near_start():
    z = sample_alpha_time_marginal(2, 1e-8, [0.7], RngStream(10, 1).generator, size=10_000)
    assert abs(z.mean() - 0.7) < 1e-3


def test_alpha_time_marginal_symmetric():
    z = sample_alpha_time_marginal(1, 2.0, [0.0], RngStream(10, 2).generator, size=20_000)[:, 0]
    assert stats.ks_2samp(z, -sample_alpha_time_marginal(1, 2.0, [0.0], RngStream(10, 3).generator,
                                                        size=20_000)[:, 0]).pvalue > 0.01
