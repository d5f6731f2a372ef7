"""Subordinate killed Brownian motion on intervals and boxes.

Brownian motion (generator ``Lap``) killed on leaving ``D = prod (0, a_i)``
and then run on an independent ``alpha/2``-stable subordinator has the
semigroup ``Q_t f = sum_l exp(-t lam_l^(alpha/2)) <f, phi_l> phi_l`` in the
Dirichlet eigenbasis.  On boxes the eigenpairs are closed form, so spatial
operators act exactly per mode and only the time derivatives are
discretized.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from itertools import product
from typing import Callable, Mapping, Sequence

import numpy as np
from scipy import integrate

from .densities import subordinator_density
from .finite_diff import FDStencil, fd_time_derivative
from .montecarlo import Estimate, mc_estimate
from .residuals import ResidualPoint, ResidualReport
from .sampling import AlphaIndex, sample_subordinator

__all__ = [
    "SpectralDomain",
    "SpectralCoefficients",
    "q_apply",
    "per_mode_identity",
    "skbm_pde_residual",
    "semigroup_property_check",
    "boundary_sup",
    "laplace_bridge",
    "SkbmMcResult",
    "skbm_mc",
]


@dataclass(frozen=True)
class SpectralDomain:
    """Box ``prod (0, a_i)``; a 1-tuple is an interval.

    Modes are multi-indices ``l`` with ``lam_l = sum (l_i pi / a_i)^2`` and
    ``phi_l(x) = prod sqrt(2 / a_i) sin(l_i pi x_i / a_i)``.
    """

    sides: tuple = (math.pi,)

    def __post_init__(self):
        sides = tuple(float(a) for a in np.atleast_1d(self.sides))
        if not sides or any(not a > 0 for a in sides):
            raise ValueError("box sides must be positive")
        object.__setattr__(self, "sides", sides)

    @classmethod
    def interval(cls, a: float = math.pi) -> "SpectralDomain":
        return cls((a,))

    @property
    def dim(self) -> int:
        return len(self.sides)

    def eigenvalue(self, mode) -> float:
        mode = _mode(mode, self.dim)
        return float(sum((l * math.pi / a) ** 2 for l, a in zip(mode, self.sides)))

    def eigenfunction(self, mode, x) -> np.ndarray:
        """``phi_l`` at points ``x`` of shape ``(n,)`` or ``(N, n)``; scalars allowed on intervals."""
        mode = _mode(mode, self.dim)
        pts = self._points(x)
        out = np.ones(pts.shape[0])
        for i, (l, a) in enumerate(zip(mode, self.sides)):
            out *= math.sqrt(2.0 / a) * np.sin(l * math.pi * pts[:, i] / a)
        return out

    def contains(self, x) -> np.ndarray:
        pts = self._points(x)
        return np.all((pts >= 0.0) & (pts <= np.asarray(self.sides)), axis=1)

    def interior(self, x) -> np.ndarray:
        pts = self._points(x)
        return np.all((pts > 0.0) & (pts < np.asarray(self.sides)), axis=1)

    def modes(self, L: int) -> list[tuple]:
        """All multi-indices with entries in ``1..L``, sorted by eigenvalue."""
        return sorted(product(range(1, L + 1), repeat=self.dim), key=lambda m: (self.eigenvalue(m), m))

    def _points(self, x) -> np.ndarray:
        pts = np.asarray(x, dtype=float)
        if pts.ndim == 0:
            pts = pts.reshape(1, 1)
        elif pts.ndim == 1:
            pts = pts.reshape(-1, 1) if self.dim == 1 else pts.reshape(1, -1)
        if pts.shape[1] != self.dim:
            raise ValueError(f"points have dimension {pts.shape[1]}, expected {self.dim}")
        return pts


def _mode(mode, dim: int) -> tuple:
    m = (int(mode),) if np.ndim(mode) == 0 else tuple(int(v) for v in mode)
    if len(m) != dim or any(v < 1 for v in m):
        raise ValueError(f"invalid mode {mode} for dimension {dim}")
    return m


@dataclass(frozen=True)
class SpectralCoefficients:
    """Coefficients ``c_l = <f, phi_l>`` on retained modes.

    ``tail_bound`` bounds the L2 norm of the discarded part of ``f``; it is
    zero when ``f`` is a finite sine sum.
    """

    domain: SpectralDomain
    modes: tuple
    values: tuple
    tail_bound: float = 0.0

    def __post_init__(self):
        if len(self.modes) != len(self.values):
            raise ValueError("modes and values differ in length")
        object.__setattr__(self, "modes", tuple(_mode(m, self.domain.dim) for m in self.modes))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @classmethod
    def from_sines(cls, domain: SpectralDomain, amplitudes: Mapping) -> "SpectralCoefficients":
        """``f = sum_l A_l prod sin(l_i pi x_i / a_i)``; coefficients are exact."""
        modes, vals = [], []
        for m, amp in amplitudes.items():
            m = _mode(m, domain.dim)
            norm = math.prod(math.sqrt(a / 2.0) for a in domain.sides)
            modes.append(m)
            vals.append(float(amp) * norm)
        return cls(domain, tuple(modes), tuple(vals), 0.0)

    @classmethod
    def indicator_bump(cls, L: int = 20, lo: float = math.pi / 4, hi: float = 3 * math.pi / 4,
                       a: float = math.pi) -> "SpectralCoefficients":
        """First ``L`` modes of the indicator of ``(lo, hi)`` on ``(0, a)``."""
        if not 0 <= lo < hi <= a:
            raise ValueError("need 0 <= lo < hi <= a")
        dom = SpectralDomain.interval(a)
        k = np.arange(1, L + 1) * math.pi / a
        vals = math.sqrt(2.0 / a) * (np.cos(k * lo) - np.cos(k * hi)) / k
        # Parseval: the discarded L2 mass is |1_(lo,hi)|^2 - sum c_l^2
        tail = math.sqrt(max(hi - lo - float(np.sum(vals ** 2)), 0.0))
        return cls(dom, tuple((l,) for l in range(1, L + 1)), tuple(vals), tail)

    @classmethod
    def from_function(cls, domain: SpectralDomain, f: Callable[[float], float], L: int) -> "SpectralCoefficients":
        """Sine coefficients of a scalar function on an interval by quadrature."""
        if domain.dim != 1:
            raise ValueError("quadrature projection is implemented for intervals")
        a = domain.sides[0]
        vals = []
        for l in range(1, L + 1):
            v, _ = integrate.quad(f, 0.0, a, weight="sin", wvar=l * math.pi / a, limit=200)
            vals.append(math.sqrt(2.0 / a) * v)
        norm2, _ = integrate.quad(lambda y: f(y) ** 2, 0.0, a, limit=200)
        tail = math.sqrt(max(norm2 - sum(v * v for v in vals), 0.0))
        return cls(domain, tuple((l,) for l in range(1, L + 1)), tuple(vals), tail)

    def lambdas(self) -> np.ndarray:
        return np.array([self.domain.eigenvalue(m) for m in self.modes])

    def evaluate(self, x) -> np.ndarray:
        """The truncated expansion of ``f`` at ``x``."""
        return self._series(np.asarray(self.values), x)

    def _series(self, weights: np.ndarray, x) -> np.ndarray:
        out = 0.0
        for m, w in zip(self.modes, weights):
            if w != 0.0:
                out = out + w * self.domain.eigenfunction(m, x)
        return np.broadcast_to(out, (self.domain._points(x).shape[0],)).astype(float)

    def scaled(self, factors: np.ndarray) -> "SpectralCoefficients":
        return SpectralCoefficients(self.domain, self.modes, tuple(np.asarray(self.values) * factors), self.tail_bound)


def _rate(coeffs: SpectralCoefficients, alpha: AlphaIndex) -> np.ndarray:
    return coeffs.lambdas() ** (alpha.value / 2.0)


def q_apply(coeffs: SpectralCoefficients, alpha, t: float, x, *, lap_power: int = 0, t_derivative: int = 0):
    """``Lap^k d^q/dt^q Q_t f(x)`` from the spectral series.

    ``lap_power`` and ``t_derivative`` multiply each mode by ``(-lam)^k`` and
    ``(-lam^(alpha/2))^q``; both default to zero.  ``t = 0`` returns the
    truncated expansion of ``f``.  Returns a float for a single point.
    """
    a = AlphaIndex.of(alpha)
    if t < 0:
        raise ValueError("t must be non-negative")
    if not np.all(coeffs.domain.contains(x)):
        raise ValueError("x lies outside the closed domain")
    lam = coeffs.lambdas()
    mu = _rate(coeffs, a)
    w = np.asarray(coeffs.values) * np.exp(-t * mu) * (-lam) ** lap_power * (-mu) ** t_derivative
    out = coeffs._series(w, x)
    single = np.ndim(x) == (0 if coeffs.domain.dim == 1 else 1)
    return float(out[0]) if single else out


def per_mode_identity(alpha, lam: int) -> Fraction:
    """``(-lam)^k + (-1)^(k+1) (lam^(alpha/2))^(2m)`` in exact arithmetic, for integer ``lam``.

    The exponent ``(alpha/2) * 2m`` equals ``k`` exactly when ``alpha = k/m``,
    so the result is ``0`` for every mode.
    """
    a = AlphaIndex.of(alpha)
    k, m = a.l, a.m
    exponent = a.fraction / 2 * (2 * m)
    if exponent.denominator != 1:
        raise ValueError("exponent is not an integer")
    lam = Fraction(lam)
    return (-lam) ** k + (-1) ** (k + 1) * lam ** int(exponent)


def skbm_pde_residual(coeffs: SpectralCoefficients, alpha, t_grid: Sequence[float], x_grid,
                      stencil: FDStencil | None = None, tolerance: float | None = None) -> ResidualReport:
    """``Lap^k u + (-1)^(k+1) d^{2m}u/dt^{2m}`` for ``u = Q_t f`` and ``alpha = k/m``.

    ``Lap^k u`` is exact per mode; the time derivative is a finite difference
    of the series.  Reported as ``lhs = Lap^k u`` and
    ``rhs = (-1)^k d^{2m}u/dt^{2m}`` with an absolute tolerance.
    """
    a = AlphaIndex.of(alpha)
    k, m = a.l, a.m
    q = 2 * m
    if tolerance is None:
        tolerance = 1e-6 if m == 1 else 1e-4
    stencil = stencil or FDStencil(q)
    if stencil.order != q:
        stencil = FDStencil(q, stencil.base_step, stencil.richardson_levels)
    points = []
    for t in t_grid:
        for x in x_grid:
            xv = float(x) if coeffs.domain.dim == 1 else tuple(float(v) for v in x)
            d = fd_time_derivative(lambda s: q_apply(coeffs, a, s, xv), q, float(t), stencil)
            lhs = q_apply(coeffs, a, float(t), xv, lap_power=k)
            rhs = (-1) ** k * d.value
            diff = abs(lhs - rhs)
            scale = max(abs(lhs), abs(rhs), 1e-12)
            points.append(ResidualPoint(float(t), tuple(np.atleast_1d(xv).tolist()), lhs, rhs, diff,
                                        0.0 if diff == 0.0 else diff / scale, d.error))
    return ResidualReport("skbm", points, tolerance, asserted=True, criterion="absolute",
                          params={"alpha": str(a), "sides": list(coeffs.domain.sides),
                                  "modes": [list(mm) for mm in coeffs.modes]})


def semigroup_property_check(coeffs: SpectralCoefficients, alpha, t1: float, t2: float, x_grid) -> float:
    """``max_x |Q_{t1+t2} f - Q_{t1} Q_{t2} f|``."""
    a = AlphaIndex.of(alpha)
    if t1 < 0 or t2 < 0:
        raise ValueError("times must be non-negative")
    mu = _rate(coeffs, a)
    inner = coeffs.scaled(np.exp(-t2 * mu))
    dev = 0.0
    for x in x_grid:
        lhs = q_apply(coeffs, a, t1 + t2, x)
        rhs = q_apply(inner, a, t1, x)
        dev = max(dev, float(np.max(np.abs(np.asarray(lhs) - np.asarray(rhs)))))
    return dev


def boundary_sup(coeffs: SpectralCoefficients, alpha, t_grid: Sequence[float], samples: int = 5) -> float:
    """``sup |Q_t f|`` over the faces of the box and the given times."""
    dom = coeffs.domain
    pts = []
    base = np.linspace(0.0, 1.0, samples + 2)[1:-1]
    for i, a in enumerate(dom.sides):
        for face in (0.0, a):
            for combo in product(base, repeat=dom.dim - 1):
                p = [c * s for c, s in zip(combo, dom.sides[:i] + dom.sides[i + 1:])]
                p.insert(i, face)
                pts.append(p)
    pts = np.asarray(pts)
    return max(float(np.max(np.abs(q_apply(coeffs, alpha, float(t), pts if dom.dim > 1 else pts[:, 0]))))
               for t in t_grid)


def laplace_bridge(lam: float, alpha, t: float) -> tuple[float, float]:
    """``int_0^inf exp(-s lam) u_t^{alpha/2}(s) ds`` by quadrature, with its error estimate.

    Should equal ``exp(-t lam^(alpha/2))``, the per-mode multiplier of ``Q_t``.
    """
    a = AlphaIndex.of(alpha)
    beta = a.fraction / 2
    f = lambda s: subordinator_density(beta, t, s) * math.exp(-lam * s) if s > 0 else 0.0
    scale = t ** (1.0 / float(beta))
    pts = [scale / 10, scale, 10 * scale]
    cut = max(60.0 / lam, 100 * scale)
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        v, e = integrate.quad(f, 0.0, cut, points=[p for p in pts if p < cut], limit=500,
                              epsabs=1e-14, epsrel=1e-12)
    return v, e + math.exp(-lam * cut)


# -- Monte Carlo --------------------------------------------------------------------------------

def _series_at(points: np.ndarray, coeffs: SpectralCoefficients) -> np.ndarray:
    return coeffs.evaluate(points if coeffs.domain.dim > 1 else points[:, 0])


def _killed_draw(count, gen, *, sides, x, beta, t, h, f):
    s = sample_subordinator(beta, t, gen, size=count)
    upper = np.asarray(sides)
    pos = np.broadcast_to(np.asarray(x, dtype=float), (count, upper.size)).copy()
    out = np.zeros(count)
    elapsed = np.zeros(count)
    active = np.arange(count)
    while active.size:
        dt = np.minimum(h, s - elapsed)
        pos += np.sqrt(2.0 * dt)[:, None] * gen.standard_normal(pos.shape)
        elapsed += dt
        alive = np.all((pos > 0.0) & (pos < upper), axis=1)
        done = alive & (elapsed >= s)
        if done.any():
            out[active[done]] = f(pos[done])
        keep = alive & ~done
        active, pos, elapsed, s = active[keep], pos[keep], elapsed[keep], s[keep]
    return out


@dataclass
class SkbmMcResult:
    """Killed-skeleton estimates at ``h`` and ``h/2`` and the spectral reference.

    ``bias_band`` is the remaining bias at the finest step implied by a
    ``sqrt(h)`` trend, ``|e(h) - e(h/2)| / (sqrt 2 - 1)``, floored at
    ``rel_band * |spectral|``.
    """

    estimates: list[tuple[float, Estimate]]
    spectral: float
    bias_band: float
    rel_band: float
    params: dict = field(default_factory=dict)

    @property
    def finest(self) -> Estimate:
        return self.estimates[-1][1]

    @property
    def tolerance(self) -> float:
        return max(4.0 * self.finest.stderr, self.bias_band)

    @property
    def passed(self) -> bool:
        return abs(self.finest.mean - self.spectral) <= self.tolerance

    def as_dict(self) -> dict:
        return {"levels": [{"h": h, **e.as_dict()} for h, e in self.estimates],
                "spectral": self.spectral, "bias_band": self.bias_band, "rel_band": self.rel_band,
                "tolerance": self.tolerance, "passed": self.passed, "params": self.params}


def skbm_mc(coeffs: SpectralCoefficients, alpha, t: float, x, h: float, N: int, seed: int, *,
            f: Callable | None = None, levels: int = 2, rel_band: float = 0.02, workers: int = 1) -> SkbmMcResult:
    """Monte Carlo ``E[f(X^D(S))]`` with ``S`` the ``alpha/2``-stable subordinator at ``t``.

    The Brownian skeleton (step ``h``, last step cut at ``S``) is killed at
    the first grid time outside the box.  ``f`` defaults to the series of
    ``coeffs`` and is evaluated on arrays of shape ``(count, n)``.
    """
    a = AlphaIndex.of(alpha)
    if not 0 < a.value < 2:
        raise ValueError("alpha must lie in (0, 2) for a non-trivial subordinator")
    if N < 1000:
        raise ValueError("N must be at least 1000")
    if not h > 0 or not t > 0:
        raise ValueError("h and t must be positive")
    xv = np.atleast_1d(np.asarray(x, dtype=float))
    if not coeffs.domain.interior(xv if coeffs.domain.dim > 1 else xv[0])[0]:
        raise ValueError("x must lie in the open domain")
    func = f if f is not None else partial(_series_at, coeffs=coeffs)
    ests = []
    for i in range(levels):
        hv = h / 2 ** i
        draw = partial(_killed_draw, sides=coeffs.domain.sides, x=tuple(xv), beta=a.value / 2, t=float(t),
                       h=hv, f=func)
        ests.append((hv, mc_estimate(draw, N, seed, workers=workers, first_stream=i << 20)))
    spectral = q_apply(coeffs, a, t, xv[0] if coeffs.domain.dim == 1 else tuple(xv))
    trend = abs(ests[-2][1].mean - ests[-1][1].mean) / (math.sqrt(2.0) - 1.0) if levels > 1 else 0.0
    band = max(trend, rel_band * abs(spectral))
    return SkbmMcResult(ests, float(spectral), band, rel_band,
                        {"alpha": str(a), "t": float(t), "x": xv.tolist(), "h": h, "N": N, "seed": seed})
