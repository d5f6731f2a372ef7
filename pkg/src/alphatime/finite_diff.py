"""Central finite differences with Richardson extrapolation."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

_LD = np.longdouble

# Base steps tuned per derivative order against closed-form profiles; roundoff
# from quadrature-valued functions (~1e-14) dominates below these values.
DEFAULT_BASE_STEP = {1: 2e-2, 2: 4e-2, 3: 6e-2, 4: 8e-2, 5: 1e-1, 6: 1.2e-1}


class StencilError(ValueError):
    """Raised when a stencil would leave the admissible domain."""


@dataclass(frozen=True)
class FDStencil:
    """Central stencil for the ``order``-th derivative.

    The raw stencil is second-order accurate; ``richardson_levels`` halvings
    of the step are combined to cancel the ``h**2, h**4, ...`` error terms.
    The physical step is ``base_step * max(t, 1)``.
    """

    order: int
    base_step: float | None = None
    richardson_levels: int = 2

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("derivative order must be >= 1")
        if self.base_step is not None and not self.base_step > 0:
            raise ValueError("base_step must be positive")
        if self.richardson_levels < 0:
            raise ValueError("richardson_levels must be non-negative")

    @property
    def radius(self) -> int:
        return (self.order + 1) // 2

    def step(self, t: float) -> float:
        base = self.base_step if self.base_step is not None else DEFAULT_BASE_STEP.get(
            self.order, (2.2e-16) ** (1.0 / (self.order + 2)))
        return base * max(abs(t), 1.0)

    def refined(self) -> "FDStencil":
        """Half the base step, one more Richardson level."""
        return FDStencil(self.order, self.step(1.0) / 2, self.richardson_levels + 1)


@dataclass(frozen=True)
class FDResult:
    value: float
    error: float


@lru_cache(maxsize=None)
def central_weights(order: int) -> tuple[Fraction, ...]:
    """Exact weights ``w_k`` (k = -r..r) with ``sum w_k f(t + k h) / h**order ~ f^(order)(t)``."""
    r = (order + 1) // 2
    offsets = list(range(-r, r + 1))
    size = len(offsets)
    # moment conditions sum_k w_k k^j = order! * delta_{j, order}, j = 0..2r
    rows = [[Fraction(k) ** j for k in offsets] + [Fraction(math.factorial(order) if j == order else 0)]
            for j in range(size)]
    for col in range(size):
        piv = next(i for i in range(col, size) if rows[i][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [v / p for v in rows[col]]
        for i in range(size):
            if i != col and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[col])]
    return tuple(rows[i][-1] for i in range(size))


def _raw_difference(g: Callable[[float], float], q: int, t, h, g0):
    weights = central_weights(q)
    r = (len(weights) - 1) // 2
    # sum of weights is zero, so differencing against g(t) is exact for constants
    acc = _LD(0)
    for k, w in zip(range(-r, r + 1), weights):
        if k == 0 or w == 0:
            continue
        acc += _LD(w.numerator) / _LD(w.denominator) * (g(t + k * h) - g0)
    return acc / h ** q


def fd_derivative(g: Callable[[float], float], q: int, t: float, stencil: FDStencil | None = None,
                  *, lower: float | None = None) -> FDResult:
    """Richardson-extrapolated central estimate of ``g^(q)(t)``.

    ``lower`` is an exclusive bound the stencil may not reach (for instance
    ``0`` for functions of time).  The returned error is the last correction
    of the extrapolation ladder.
    """
    stencil = stencil or FDStencil(q)
    if stencil.order != q:
        stencil = FDStencil(q, stencil.base_step, stencil.richardson_levels)
    h = stencil.step(t)
    if lower is not None and t - stencil.radius * h <= lower:
        raise StencilError(f"stencil of radius {stencil.radius} * {h:.3g} crosses {lower} at t={t}")
    if h < 1e3 * math.ulp(max(abs(t), 1.0)) * 2 ** stencil.richardson_levels:
        raise StencilError(f"step {h:.3g} underflows relative to t={t}")
    # abscissas and differences are formed in extended precision; functions
    # that return numpy.longdouble keep the extra bits through the stencil
    t_ld, h_ld = _LD(t), _LD(h)
    g0 = g(t_ld)
    table: list[list] = []
    for i in range(stencil.richardson_levels + 1):
        row = [_raw_difference(g, q, t_ld, h_ld / 2 ** i, g0)]
        for j in range(1, i + 1):
            f = 4.0 ** j
            row.append((f * row[j - 1] - table[i - 1][j - 1]) / (f - 1.0))
        table.append(row)
    best = table[-1][-1]
    err = abs(best - table[-1][-2]) if len(table) > 1 else abs(best)
    return FDResult(float(best), float(err))


def fd_time_derivative(g: Callable[[float], float], q: int, t: float,
                       stencil: FDStencil | None = None) -> FDResult:
    """``fd_derivative`` restricted to ``t > 0`` with a stencil that stays positive."""
    if not t > 0:
        raise StencilError(f"t must be positive, got {t}")
    return fd_derivative(g, q, t, stencil, lower=0.0)
