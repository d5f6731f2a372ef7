"""Closed-form heat and Feynman-Kac semigroups on smooth test functions.

The outer process is Brownian motion with generator ``Laplacian``.  Both test
families are closed under the heat semigroup, so every spatial derivative
used in the PDE checks is exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial
from typing import Callable, Union

import numpy as np

from .montecarlo import Estimate, mc_estimate

__all__ = [
    "PlaneWave",
    "GaussianBump",
    "ConstantPotential",
    "heat_semigroup_apply",
    "generator_power",
    "fk_semigroup_apply",
    "mc_semigroup",
]


def _vec(x) -> np.ndarray:
    return np.atleast_1d(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class PlaneWave:
    """``f(x) = cos(kappa . x)``; ``Laplacian f = -|kappa|^2 f``."""

    kappa: tuple

    def __init__(self, kappa):
        object.__setattr__(self, "kappa", tuple(float(k) for k in _vec(kappa)))

    @property
    def dim(self) -> int:
        return len(self.kappa)

    @property
    def k2(self) -> float:
        return float(sum(k * k for k in self.kappa))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.cos(x @ np.asarray(self.kappa)) if x.ndim > 1 else math.cos(float(np.dot(_vec(x), self.kappa)))


@dataclass(frozen=True)
class GaussianBump:
    """``f(x) = exp(-|x - center|^2 / width)``."""

    center: tuple
    width: float = 1.0

    def __init__(self, center, width: float = 1.0):
        if not width > 0:
            raise ValueError("width must be positive")
        object.__setattr__(self, "center", tuple(float(c) for c in _vec(center)))
        object.__setattr__(self, "width", float(width))

    @property
    def dim(self) -> int:
        return len(self.center)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        d2 = np.sum((x - np.asarray(self.center)) ** 2, axis=-1)
        return np.exp(-d2 / self.width) if x.ndim > 1 else math.exp(-float(d2) / self.width)


@dataclass(frozen=True)
class ConstantPotential:
    c: float = 0.0

    def __post_init__(self):
        if self.c > 0:
            raise ValueError(f"potential must be non-positive, got c={self.c}")


TestFunction = Union[PlaneWave, GaussianBump]


def heat_semigroup_apply(f: TestFunction, s: float, x) -> float:
    """``T_s f(x) = E f(x + sqrt(2 s) G)``."""
    if s < 0:
        raise ValueError("s must be non-negative")
    if isinstance(f, PlaneWave):
        return math.exp(-f.k2 * s) * f(x)
    if isinstance(f, GaussianBump):
        a, w = f.width, f.width + 4.0 * s
        d2 = float(np.sum((_vec(x) - np.asarray(f.center)) ** 2))
        return (a / w) ** (f.dim / 2) * math.exp(-d2 / w)
    raise TypeError(f"unsupported test function {type(f).__name__}")


def generator_power(f: PlaneWave, j: int, x) -> float:
    """``Laplacian^j f(x) = (-|kappa|^2)^j cos(kappa . x)``."""
    if j < 0:
        raise ValueError("j must be non-negative")
    return (-f.k2) ** j * f(x)


def fk_semigroup_apply(f: PlaneWave, c: ConstantPotential, s: float, x) -> float:
    """``E[f(X^x(s)) exp(c s)]`` for a constant potential ``c <= 0``."""
    if s < 0:
        raise ValueError("s must be non-negative")
    return math.exp(c.c * s) * heat_semigroup_apply(f, s, x)


def _fk_draw(count, gen, *, f, c, s, x, h):
    x = _vec(x)
    n = x.size
    if callable(c):
        steps = max(1, int(round(s / h)))
        dt = s / steps
        pos = np.broadcast_to(x, (count, n)).copy()
        integral = np.zeros(count)
        for _ in range(steps):
            integral += c(pos) * dt  # left Riemann sum
            pos += math.sqrt(2.0 * dt) * gen.standard_normal((count, n))
        return f(pos) * np.exp(integral)
    pos = x + math.sqrt(2.0 * s) * gen.standard_normal((count, n))
    return f(pos) * math.exp(c * s)


def mc_semigroup(f: TestFunction, c: Union[ConstantPotential, Callable, float, None], s: float, x,
                 n: int, seed: int, *, h: float | None = None, workers: int = 1) -> Estimate:
    """Monte Carlo estimate of ``E[f(X^x(s)) exp(int_0^s c(X^x(r)) dr)]``.

    A constant potential is exact.  A callable potential ``c(points) -> values``
    is integrated by a left Riemann sum along a Brownian skeleton of step
    ``h`` and carries an O(h) bias.
    """
    if n < 100:
        raise ValueError("n must be at least 100")
    if not s > 0:
        raise ValueError("s must be positive")
    if isinstance(f, PlaneWave) and f.k2 == 0.0 and (c is None or getattr(c, "c", c) == 0):
        return Estimate(1.0, 0.0, n)
    if callable(c) and not isinstance(c, ConstantPotential):
        if h is None or not h > 0:
            raise ValueError("a path potential needs a positive grid step h")
        cv = c
    else:
        cv = 0.0 if c is None else float(getattr(c, "c", c))
        if cv > 0:
            raise ValueError("potential must be non-positive")
    draw = partial(_fk_draw, f=f, c=cv, s=float(s), x=tuple(_vec(x)), h=h)
    return mc_estimate(draw, n, seed, workers=workers)
