"""Expectations of functionals of alpha-time processes.

Every construction is evaluated two ways: by quadrature over the clock
density, ``u(t, x) = 2 int_0^inf p_t^alpha(0, s) v(s, x) ds``, and by Monte
Carlo over exact marginals (one stable draw for the clock, one Gaussian for
the outer Brownian motion).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import partial

import numpy as np
from scipy import integrate

from .densities import QuadratureError, kernel_profile, stable_density, weighted_kernel_integral
from .montecarlo import Estimate, mc_estimate
from .sampling import AlphaIndex, sample_symmetric_stable
from .semigroups import ConstantPotential, GaussianBump, PlaneWave, heat_semigroup_apply

VARIANTS = ("cauchy-time", "eps-weighted", "feynman-kac", "ictbap", "alpha-time", "btp")
_FORCED_ALPHA = {"cauchy-time": 1, "eps-weighted": 1, "feynman-kac": 1, "ictbap": 1, "btp": 2}


@dataclass(frozen=True)
class CompositionSpec:
    """One iterated-process construction.

    ``epsilon`` is required exactly for ``eps-weighted`` and ``c`` exactly for
    ``feynman-kac``; ``alpha`` is fixed by the variant except for
    ``alpha-time``.
    """

    variant: str
    f: PlaneWave | GaussianBump
    alpha: AlphaIndex | None = None
    c: ConstantPotential | None = None
    epsilon: float | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}; expected one of {VARIANTS}")
        forced = _FORCED_ALPHA.get(self.variant)
        if forced is not None:
            a = AlphaIndex.of(self.alpha if self.alpha is not None else forced)
            if a.fraction != forced:
                raise ValueError(f"variant {self.variant} requires alpha = {forced}, got {a}")
        elif self.alpha is None:
            raise ValueError("alpha-time variant requires alpha")
        else:
            a = AlphaIndex.of(self.alpha)
        object.__setattr__(self, "alpha", a)
        if (self.variant == "eps-weighted") != (self.epsilon is not None):
            raise ValueError("epsilon must be given exactly for the eps-weighted variant")
        if self.epsilon is not None and not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if (self.variant == "feynman-kac") != (self.c is not None):
            raise ValueError("a constant potential must be given exactly for the feynman-kac variant")
        if self.c is not None and not isinstance(self.c, ConstantPotential):
            object.__setattr__(self, "c", ConstantPotential(float(self.c)))

    @property
    def beta(self) -> float:
        """Decay rate of ``v(s, .)`` for a plane wave: ``v(s, x) = exp(-beta s) f(x)``."""
        if not isinstance(self.f, PlaneWave):
            raise TypeError("beta is defined for plane waves only")
        k2 = self.f.k2
        if self.variant == "eps-weighted":
            return 1.0 / self.epsilon + self.epsilon * k2
        if self.variant == "feynman-kac":
            return k2 - self.c.c
        if self.variant == "ictbap":
            raise ValueError("ictbap has an oscillating, not decaying, mode")
        return k2

    def v(self, s: float, x) -> float:
        """Outer functional ``v(s, x)`` integrated against the clock density."""
        if self.variant == "eps-weighted":
            return math.exp(-s / self.epsilon) * heat_semigroup_apply(self.f, self.epsilon * s, x)
        if self.variant == "feynman-kac":
            return math.exp(self.c.c * s) * heat_semigroup_apply(self.f, s, x)
        return heat_semigroup_apply(self.f, s, x)


def profile(spec: CompositionSpec, t):
    """Time profile ``g(t)`` with ``u(t, x) = f(x) g(t)`` for plane waves.

    Returned in extended precision (``numpy.longdouble``) so that
    high-order time differences are not limited by double rounding.
    """
    if spec.variant == "ictbap":
        return np.exp(-np.longdouble(t) * abs(1.0 - spec.f.k2))
    return kernel_profile(spec.alpha, spec.beta, t)


def _clock_tail(a: AlphaIndex, t: float, cut: float) -> float:
    """``P(|Y(t)| > cut)``, or the trivial bound 1 when no closed form is at hand."""
    if a.fraction == 1:
        return 1.0 - 2.0 / math.pi * math.atan(cut / t)
    if a.fraction == 2:
        return math.erfc(cut / (2.0 * math.sqrt(t)))
    return 1.0


def u_quadrature(spec: CompositionSpec, t: float, x, *, full_output: bool = False):
    """``u(t, x)`` by quadrature over the clock.

    Plane waves reduce to ``f(x) * weighted_kernel_integral``.  Gaussian bumps
    are integrated in ``s`` against ``heat_semigroup_apply``; the range is
    truncated and the tail mass bound is added to the reported error.
    """
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    if spec.variant == "ictbap":
        res = u_ictbap(spec.f.kappa, t, x)
        return (res.closed, res.error) if full_output else res.closed
    if isinstance(spec.f, PlaneWave):
        w = weighted_kernel_integral(spec.alpha, spec.beta, t)
        fx = spec.f(x)
        return (fx * w.value, abs(fx) * w.error) if full_output else fx * w.value
    a = spec.alpha
    scale = t ** (1.0 / a.value)
    cut = 1e6 * scale
    integrand = lambda s: stable_density(a, t, s) * spec.v(s, x)
    pts = [scale, 10 * scale, 1e3 * scale]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(integrand, 0.0, cut, points=pts, limit=1000, epsabs=1e-13, epsrel=1e-11)
    sup_tail = abs(spec.v(cut, x)) if spec.variant != "feynman-kac" else 1.0
    tail = _clock_tail(a, t, cut) * max(sup_tail, 1e-300)
    value, error = 2.0 * val, 2.0 * err + tail
    return (value, error) if full_output else value


def _alpha_time_draw(count, gen, *, spec, t, x):
    x = np.asarray(x, dtype=float)
    n = x.size
    y = sample_symmetric_stable(spec.alpha, t, gen, size=count)
    clock = np.abs(y)
    weight = 1.0
    if spec.variant == "eps-weighted":
        weight = np.exp(-clock / spec.epsilon)
        clock = spec.epsilon * clock
    elif spec.variant == "feynman-kac":
        weight = np.exp(spec.c.c * clock)
    elif spec.variant == "ictbap":
        # Fourier mode of the imaginary-time kernel; the clock is heavy tailed,
        # which rules out the rotated-contour rule here
        return np.cos((1.0 - spec.f.k2) * y) * spec.f(np.asarray(x))
    z = x + np.sqrt(2.0 * clock)[:, None] * gen.standard_normal((count, n))
    return spec.f(z) * weight


def u_mc(spec: CompositionSpec, t: float, x, n: int, seed: int, *, workers: int = 1) -> Estimate:
    """Monte Carlo ``E[f(Z(t)) * weight]`` from exact marginals.

    The clock is ``S = |Y(t)|``; ``eps-weighted`` runs the outer motion to
    ``epsilon S`` with weight ``exp(-S / epsilon)``; ``feynman-kac`` uses
    weight ``exp(c S)``.  For ``ictbap`` only the clock is sampled and the
    kernel acts through its Fourier mode ``exp(i s (1 - |kappa|^2))``.
    """
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    if n < 100:
        raise ValueError("n must be at least 100")
    x = tuple(np.atleast_1d(np.asarray(x, dtype=float)))
    draw = partial(_alpha_time_draw, spec=spec, t=float(t), x=x)
    est = mc_estimate(draw, n, seed, workers=workers)
    if not math.isfinite(est.stderr):
        raise OverflowError("Monte Carlo variance overflow for this configuration")
    return est


# -- imaginary-Cauchy-time Brownian-angle process --------------------------------------------

@dataclass(frozen=True)
class IctbapValue:
    """Closed form and two-branch quadrature of the ICTBAP expectation."""

    closed: float
    quadrature: complex
    error: float


def imaginary_time_kernel_action(kappa, s, x, nodes: int = 40) -> np.ndarray:
    """``int cos(kappa . y) p_{is}(x, y) dy`` for the complex Gaussian kernel.

    ``p_{is}(x, y) = (4 pi i s)^(-n/2) exp(-|x - y|^2 / (4 i s))``.  The
    integration line is rotated to ``y = x + sqrt(2|s|) e^{+-i pi/4} w`` where
    the kernel becomes the standard normal density, then Gauss-Hermite is
    applied.  The rotated integrand grows like ``exp(|kappa| sqrt|s| |w|)``,
    so the rule is accurate only while ``|kappa|^2 |s|`` stays moderate
    (below about 10 with 40 nodes).
    """
    kappa = np.atleast_1d(np.asarray(kappa, dtype=float))
    x = np.atleast_1d(np.asarray(x, dtype=float))
    s = np.asarray(s, dtype=float)
    w, wt = np.polynomial.hermite_e.hermegauss(nodes)
    wt = wt / math.sqrt(2.0 * math.pi)
    phase = np.where(s >= 0, np.exp(1j * math.pi / 4), np.exp(-1j * math.pi / 4))
    z = np.sqrt(2.0 * np.abs(s))[..., None] * phase[..., None] * w
    mult = np.ones(s.shape, dtype=complex)
    for k in kappa:
        mult = mult * np.sum(wt * np.exp(1j * k * z), axis=-1)
    return math.cos(float(kappa @ x)) * mult


def _half_line_fourier(theta: float, t: float, kind: str) -> tuple[float, float]:
    p = lambda s: t / (math.pi * (s * s + t * t))
    if theta == 0.0:
        if kind == "sin":
            return 0.0, 0.0
        return integrate.quad(p, 0.0, np.inf, epsabs=1e-15, epsrel=1e-13, limit=500)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        return integrate.quad(p, 0.0, np.inf, weight=kind, wvar=abs(theta), epsabs=1e-15, limlst=100)


def u_ictbap(kappa, t: float, x) -> IctbapValue:
    """ICTBAP expectation for ``f = cos(kappa . x)``.

    The kernel multiplies the mode by ``exp(-i s |kappa|^2)`` and the extra
    phase ``exp(i s)`` adds one, so ``v(s, x) = exp(i s theta) cos(kappa . x)``
    with ``theta = 1 - |kappa|^2`` on both branches.  The Cauchy characteristic
    function gives the closed form ``cos(kappa . x) exp(-t |theta|)``; the
    quadrature integrates ``v p_t`` over ``s < 0`` and ``s > 0`` separately.
    """
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    f = PlaneWave(kappa)
    theta = 1.0 - f.k2
    fx = f(x)
    closed = fx * math.exp(-t * abs(theta))
    c_pos, ec = _half_line_fourier(theta, t, "cos")
    s_pos, es = _half_line_fourier(theta, t, "sin")
    sign = math.copysign(1.0, theta)
    upper = complex(c_pos, sign * s_pos)   # int_0^inf  e^{i theta s} p ds
    lower = complex(c_pos, -sign * s_pos)  # int_-inf^0 e^{i theta s} p ds
    quad = fx * (upper + lower)
    if not (math.isfinite(ec) and math.isfinite(es)):
        raise QuadratureError("ICTBAP half-line quadrature failed", float("inf"))
    return IctbapValue(closed, quad, abs(fx) * 2.0 * (ec + es))
