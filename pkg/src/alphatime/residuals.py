"""Residual checks of the time-changed PDEs on plane waves.

For ``f(x) = cos(kappa . x)`` every construction factors as
``u(t, x) = f(x) g(t)`` and every spatial operator acts by a closed-form
multiplier, so each PDE becomes an identity in ``t``.  Time derivatives are
Richardson-extrapolated central differences of ``g``; right-hand sides are
assembled term by term exactly as the PDE is written, using
``generator_power`` for all spatial operators.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .composition import CompositionSpec, profile
from .densities import stable_density_even_deriv_at_zero
from .finite_diff import FDResult, FDStencil, StencilError, fd_derivative, fd_time_derivative
from .sampling import AlphaIndex
from .semigroups import ConstantPotential, PlaneWave, generator_power

__all__ = [
    "FDStencil",
    "FDResult",
    "StencilError",
    "fd_time_derivative",
    "fd_derivative",
    "ResidualPoint",
    "ResidualReport",
    "check_thm_cauchy",
    "check_thm_eps",
    "check_thm_fk",
    "check_thm_ictbap",
    "check_thm_alpha",
    "check_btp",
]

DEFAULT_FLOOR = 1e-12
DEFAULT_X_GRID = (0.0, 0.4, 1.1)


@dataclass
class ResidualPoint:
    t: float
    x: tuple
    lhs: float
    rhs: float
    abs_residual: float
    rel_residual: float
    fd_error: float

    def as_dict(self) -> dict:
        return {"t": self.t, "x": list(self.x), "lhs": self.lhs, "rhs": self.rhs,
                "abs_residual": self.abs_residual, "rel_residual": self.rel_residual,
                "fd_error": self.fd_error}


@dataclass
class ResidualReport:
    """Per-point left/right sides of one PDE identity.

    ``rel_residual = abs_residual / max(|lhs|, |rhs|, floor)``; ``passed``
    holds when every point's residual of kind ``criterion`` (``"relative"``
    or ``"absolute"``) is within ``tolerance``.  ``asserted`` is false for
    reports that document a discrepancy rather than claim an identity.
    """

    theorem_tag: str
    points: list[ResidualPoint]
    tolerance: float
    floor: float = DEFAULT_FLOOR
    asserted: bool = True
    params: dict = field(default_factory=dict)
    x_spread: float = 0.0
    criterion: str = "relative"

    @property
    def passed(self) -> bool:
        key = "abs_residual" if self.criterion == "absolute" else "rel_residual"
        return all(getattr(p, key) <= self.tolerance for p in self.points)

    @property
    def max_rel_residual(self) -> float:
        return max((p.rel_residual for p in self.points), default=0.0)

    @property
    def max_abs_residual(self) -> float:
        return max((p.abs_residual for p in self.points), default=0.0)

    @property
    def x_independent(self) -> bool:
        return self.x_spread <= 1e-12

    def as_dict(self) -> dict:
        return {
            "theorem_tag": self.theorem_tag,
            "params": self.params,
            "tolerance": self.tolerance,
            "criterion": self.criterion,
            "floor": self.floor,
            "asserted": self.asserted,
            "passed": self.passed,
            "max_rel_residual": self.max_rel_residual,
            "max_abs_residual": self.max_abs_residual,
            "x_spread": self.x_spread,
            "points": [p.as_dict() for p in self.points],
        }


def _assemble(tag: str, f: PlaneWave, g: Callable[[float], float], q: int,
              rhs: Callable[[float, tuple, float], float], t_grid, x_grid, stencil: FDStencil | None,
              tolerance: float, *, lhs_sign: float = 1.0, floor: float = DEFAULT_FLOOR,
              asserted: bool = True, params: dict | None = None) -> ResidualReport:
    """Evaluate ``lhs_sign * d^q u/dt^q`` against ``rhs(t, x, g(t))`` on the grid."""
    stencil = stencil or FDStencil(q)
    if stencil.order != q:
        stencil = FDStencil(q, stencil.base_step, stencil.richardson_levels)
    points = []
    normalized = {}
    for t in t_grid:
        t = float(t)
        d = fd_time_derivative(g, q, t, stencil)
        gt = float(g(t))
        for x in x_grid:
            xv = tuple(float(v) for v in np.atleast_1d(x))
            fx = f(xv)
            lhs = lhs_sign * fx * d.value
            r = rhs(t, xv, gt)
            diff = abs(lhs - r)
            scale = max(abs(lhs), abs(r), floor)
            points.append(ResidualPoint(t, xv, lhs, r, diff, 0.0 if diff == 0.0 else diff / scale,
                                        abs(fx) * d.error))
            if abs(fx) > 1e-8:
                normalized.setdefault(t, []).append((lhs - r) / fx)
    spread = 0.0
    for vals in normalized.values():
        ref = max(1.0, max(abs(v) for v in vals))
        spread = max(spread, (max(vals) - min(vals)) / ref)
    return ResidualReport(tag, points, tolerance, floor, asserted, params or {}, spread)


def _plane_wave(kappa) -> PlaneWave:
    return kappa if isinstance(kappa, PlaneWave) else PlaneWave(kappa)


def _alpha_pde_report(tag: str, alpha: AlphaIndex, f: PlaneWave, t_grid, x_grid, stencil, tolerance,
                      params) -> ResidualReport:
    # (-1)^(l+1) d^{2m}u/dt^{2m} = -2 sum_i p^{(2l-2i)}(0) Lap^{2i-1} f - Lap^{2l} u
    l, m = alpha.l, alpha.m
    spec = CompositionSpec("alpha-time", f, alpha=alpha)
    g = lambda t: profile(spec, t)

    def rhs(t, x, gt):
        total = 0.0
        for i in range(1, l + 1):
            total -= 2.0 * stable_density_even_deriv_at_zero(alpha, t, l - i) * generator_power(f, 2 * i - 1, x)
        return total - gt * generator_power(f, 2 * l, x)

    return _assemble(tag, f, g, 2 * m, rhs, t_grid, x_grid, stencil, tolerance,
                     lhs_sign=(-1.0) ** (l + 1), params=params)


def check_thm_cauchy(kappa, t_grid: Sequence[float], x_grid=DEFAULT_X_GRID, stencil: FDStencil | None = None,
                     tolerance: float = 1e-4) -> ResidualReport:
    """``d^2u/dt^2 = -2 Lap f / (pi t) - Lap^2 u`` for the Cauchy-time process."""
    f = _plane_wave(kappa)
    return _alpha_pde_report("thm21", AlphaIndex(1, 1), f, t_grid, x_grid, stencil, tolerance,
                             {"kappa": list(f.kappa), "alpha": "1"})


def check_thm_alpha(alpha, kappa, t_grid: Sequence[float], x_grid=DEFAULT_X_GRID,
                    stencil: FDStencil | None = None, tolerance: float | None = None,
                    experimental: bool = False) -> ResidualReport:
    """Rational-alpha PDE of order ``2m`` in time.

    Supported for ``alpha = 1/m``; other indices (``l >= 2``) need
    ``experimental=True`` and are reported without an acceptance claim.
    """
    a = AlphaIndex.of(alpha)
    f = _plane_wave(kappa)
    if a.l != 1 and not experimental:
        raise ValueError(f"alpha = {a} has l = {a.l} >= 2; pass experimental=True for exploratory output")
    if a.fraction == 1:
        return check_thm_cauchy(f, t_grid, x_grid, stencil, tolerance if tolerance is not None else 1e-4)
    if tolerance is None:
        tolerance = {2: 1e-3, 3: 1e-2}.get(a.m, 1e-2)
    rep = _alpha_pde_report("thm25", a, f, t_grid, x_grid, stencil, tolerance,
                            {"kappa": list(f.kappa), "alpha": str(a), "experimental": a.l != 1})
    rep.asserted = a.l == 1
    return rep


def check_thm_eps(kappa, epsilon: float, t_grid: Sequence[float], x_grid=DEFAULT_X_GRID,
                  stencil: FDStencil | None = None, tolerance: float = 1e-4) -> ResidualReport:
    """``u_eps'' = -2/(pi t) [eps Lap f - f/eps] - u/eps^2 + 2 Lap u - eps^2 Lap^2 u``."""
    f = _plane_wave(kappa)
    spec = CompositionSpec("eps-weighted", f, epsilon=epsilon)
    g = lambda t: profile(spec, t)
    e = float(epsilon)

    def rhs(t, x, gt):
        fx = f(x)
        lap_u, lap2_u = gt * generator_power(f, 1, x), gt * generator_power(f, 2, x)
        return (-2.0 / (math.pi * t) * (e * generator_power(f, 1, x) - fx / e)
                - gt * fx / e ** 2 + 2.0 * lap_u - e ** 2 * lap2_u)

    return _assemble("thm22", f, g, 2, rhs, t_grid, x_grid, stencil, tolerance,
                     params={"kappa": list(f.kappa), "epsilon": e, "beta": spec.beta})


def check_thm_fk(kappa, c, variant: str, t_grid: Sequence[float], x_grid=DEFAULT_X_GRID,
                 stencil: FDStencil | None = None, tolerance: float = 1e-4) -> ResidualReport:
    """Feynman-Kac Cauchy-time PDE for a constant potential ``c <= 0``.

    ``variant="literal"`` assembles the right-hand side with a
    single ``-c Lap u`` term; ``"derivation-consistent"`` uses ``-2 c Lap u``,
    which is what ``d^2 v/ds^2 = (Lap + c)^2 v`` produces.  Only the latter is
    asserted; the literal report documents the gap.
    """
    if variant not in ("literal", "derivation-consistent"):
        raise ValueError(f"unknown variant {variant!r}")
    pot = c if isinstance(c, ConstantPotential) else ConstantPotential(float(c))
    f = _plane_wave(kappa)
    spec = CompositionSpec("feynman-kac", f, c=pot)
    g = lambda t: profile(spec, t)
    cv = pot.c
    lap_u_factor = 1.0 if variant == "literal" else 2.0

    def rhs(t, x, gt):
        fx = f(x)
        # grad c = 0 and Lap c = 0 for constant potentials
        return (-2.0 / (math.pi * t) * (generator_power(f, 1, x) + cv * fx)
                - cv ** 2 * gt * fx
                - lap_u_factor * cv * gt * generator_power(f, 1, x)
                - gt * generator_power(f, 2, x))

    return _assemble(f"thm23-{variant}", f, g, 2, rhs, t_grid, x_grid, stencil, tolerance,
                     asserted=variant == "derivation-consistent",
                     params={"kappa": list(f.kappa), "c": cv, "variant": variant, "beta": spec.beta})


def check_thm_ictbap(kappa, t_grid: Sequence[float], x_grid=DEFAULT_X_GRID,
                     stencil: FDStencil | None = None, tolerance: float = 1e-6) -> ResidualReport:
    """``d^2u/dt^2 = Lap^2 u + 2 Lap u + u`` for the ICTBAP expectation."""
    f = _plane_wave(kappa)
    spec = CompositionSpec("ictbap", f)
    g = lambda t: profile(spec, t)

    def rhs(t, x, gt):
        return gt * (generator_power(f, 2, x) + 2.0 * generator_power(f, 1, x) + f(x))

    return _assemble("thm24", f, g, 2, rhs, t_grid, x_grid, stencil, tolerance,
                     params={"kappa": list(f.kappa), "k2": f.k2})


def check_btp(kappa, t_grid: Sequence[float], x_grid=DEFAULT_X_GRID, stencil: FDStencil | None = None,
              tolerance: float = 1e-5) -> ResidualReport:
    """Brownian-time PDE ``du/dt = Lap f / sqrt(pi t) + Lap^2 u`` (alpha = 2)."""
    f = _plane_wave(kappa)
    spec = CompositionSpec("btp", f)
    g = lambda t: profile(spec, t)

    def rhs(t, x, gt):
        two_p0 = 2.0 * stable_density_even_deriv_at_zero(2, t, 0)  # = 1/sqrt(pi t)
        return two_p0 * generator_power(f, 1, x) + gt * generator_power(f, 2, x)

    return _assemble("btp", f, g, 1, rhs, t_grid, x_grid, stencil, tolerance,
                     params={"kappa": list(f.kappa), "alpha": "2"})
