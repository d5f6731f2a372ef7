import math

import numpy as np
import pytest

from alphatime.composition import (
    CompositionSpec,
    imaginary_time_kernel_action,
    profile,
    u_ictbap,
    u_mc,
    u_quadrature,
)
from alphatime.densities import weighted_kernel_integral
from alphatime.semigroups import ConstantPotential, GaussianBump, PlaneWave

G111 = 0.39562711831892246151  # (2/pi) int e^-xi / (1 + xi^2), frozen mpmath value


def test_cauchy_time_constant_function():
    spec = CompositionSpec("cauchy-time", PlaneWave(0.0))
    for t in (0.1, 1.0, 5.0):
        assert u_quadrature(spec, t, 0.3) == 1.0


def test_cauchy_time_plane_wave_value():
    spec = CompositionSpec("cauchy-time", PlaneWave(1.0))
    assert u_quadrature(spec, 1.0, 0.0) == pytest.approx(G111, rel=1e-14)


def test_eps_weighted_beta():
    spec = CompositionSpec("eps-weighted", PlaneWave(1.0), epsilon=1.0)
    assert spec.beta == 2.0
    assert u_quadrature(spec, 1.0, 0.0) == pytest.approx(weighted_kernel_integral(1, 2.0, 1.0).value)
    assert CompositionSpec("eps-weighted", PlaneWave(2.0), epsilon=0.5).beta == 4.0


def test_feynman_kac_beta():
    assert CompositionSpec("feynman-kac", PlaneWave(1.0), c=-1.0).beta == 2.0


@pytest.mark.parametrize("kw", [
    {"variant": "nope", "f": PlaneWave(1.0)},
    {"variant": "cauchy-time", "f": PlaneWave(1.0), "alpha": 2},
    {"variant": "eps-weighted", "f": PlaneWave(1.0)},
    {"variant": "cauchy-time", "f": PlaneWave(1.0), "epsilon": 1.0},
    {"variant": "feynman-kac", "f": PlaneWave(1.0)},
    {"variant": "alpha-time", "f": PlaneWave(1.0)},
    {"variant": "eps-weighted", "f": PlaneWave(1.0), "epsilon": -1.0},
])
def test_spec_validation(kw):
    with pytest.raises(ValueError):
        CompositionSpec(**kw)


def test_ictbap_examples():
    assert u_ictbap([1.0], 3.0, 0.0).closed == 1.0
    assert u_ictbap([math.sqrt(2)], 1.0, 0.0).closed == pytest.approx(math.exp(-1), rel=1e-14)
    assert u_ictbap([0.0], 2.0, 0.0).closed == pytest.approx(math.exp(-2), rel=1e-14)


@pytest.mark.parametrize("k2", [0.0, 1.0, 2.0, 4.0])
def test_ictbap_quadrature_agrees_within_reported_error(k2):
    res = u_ictbap([math.sqrt(k2)], 1.0, 0.2)
    assert abs(res.quadrature - res.closed) <= max(res.error, 1e-14)


def test_imaginary_time_kernel_fourier_mode():
    # the complex Gaussian kernel multiplies cos(kappa x) by exp(-i s kappa^2)
    s = np.array([-0.8, -0.1, 0.3, 1.2])
    got = imaginary_time_kernel_action([1.1], s, [0.4])
    want = math.cos(1.1 * 0.4) * np.exp(-1j * s * 1.21)
    assert np.allclose(got, want, atol=1e-12)


def test_profile_is_extended_precision():
    spec = CompositionSpec("alpha-time", PlaneWave(1.0), alpha="1/2")
    assert isinstance(profile(spec, np.longdouble(1)), np.longdouble)


@pytest.mark.parametrize("spec", [
    CompositionSpec("cauchy-time", PlaneWave(1.0)),
    CompositionSpec("eps-weighted", PlaneWave(1.0), epsilon=1.0),
    CompositionSpec("feynman-kac", PlaneWave(0.0), c=-1.0),
    CompositionSpec("btp", PlaneWave(1.0)),
    CompositionSpec("alpha-time", PlaneWave(1.0), alpha="1/2"),
    CompositionSpec("ictbap", PlaneWave(math.sqrt(2.0))),
], ids=lambda s: s.variant)
def test_quadrature_matches_mc(spec):
    est = u_mc(spec, 1.0, 0.3, 200_000, seed=7)
    assert est.within(u_quadrature(spec, 1.0, 0.3))


def test_feynman_kac_zero_wave_reduces_to_kernel_integral():
    spec = CompositionSpec("feynman-kac", PlaneWave(0.0), c=-1.0)
    assert u_quadrature(spec, 1.0, 0.5) == pytest.approx(G111, rel=1e-14)


def test_gaussian_bump_quadrature_matches_mc():
    spec = CompositionSpec("cauchy-time", GaussianBump(0.0, 1.0))
    value, err = u_quadrature(spec, 1.0, 0.2, full_output=True)
    assert err < 1e-6
    assert u_mc(spec, 1.0, 0.2, 200_000, seed=8).within(value)


@pytest.mark.parametrize("kappa", [0.5, 1.0, 2.0])
def test_initial_condition_cauchy_time(kappa):
    spec = CompositionSpec("cauchy-time", PlaneWave(kappa))
    assert abs(u_quadrature(spec, 1e-4, 0.3) - math.cos(kappa * 0.3)) <= 1e-2


@pytest.mark.parametrize("variant, extra", [
    ("cauchy-time", {}), ("eps-weighted", {"epsilon": 0.5}), ("btp", {}), ("alpha-time", {"alpha": "1/3"}),
])
def test_bounded_by_sup_f(variant, extra):
    spec = CompositionSpec(variant, PlaneWave(1.5), **extra)
    for t in (0.01, 0.5, 3.0):
        for x in (0.0, 0.7, 2.0):
            assert abs(u_quadrature(spec, t, x)) <= 1.0


def test_u_mc_rejects_small_n():
    with pytest.raises(ValueError):
        u_mc(CompositionSpec("cauchy-time", PlaneWave(1.0)), 1.0, 0.0, 10, seed=1)
