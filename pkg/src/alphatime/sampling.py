"""Exact samplers for symmetric stable laws, stable subordinators and Brownian motion.

Normalization used throughout the package: a symmetric stable variable of
index ``alpha`` at time ``t`` has characteristic function
``exp(-t |xi|**alpha)`` with no extra symmetry constant.  For ``alpha = 2``
this is Brownian motion with generator ``Laplacian`` (variance ``2 t`` per
coordinate), and for ``alpha = 1`` it is ``t`` times a standard Cauchy
variable.  Subordinators of index ``beta`` satisfy
``E exp(-lam T_t) = exp(-t lam**beta)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

__all__ = [
    "AlphaIndex",
    "RngStream",
    "PathSkeleton",
    "as_generator",
    "sample_symmetric_stable",
    "sample_subordinator",
    "sample_path",
    "sample_alpha_time_marginal",
]


@dataclass(frozen=True)
class AlphaIndex:
    """Rational stability index ``alpha = l/m`` in lowest terms.

    ``l`` and ``m`` are the orders that appear in the higher order PDEs
    (``Laplacian**l`` against ``d^{2m}/dt^{2m}``).
    """

    l: int
    m: int

    def __post_init__(self):
        if self.l <= 0 or self.m <= 0:
            raise ValueError(f"alpha must have positive numerator and denominator, got {self.l}/{self.m}")
        if math.gcd(self.l, self.m) != 1:
            raise ValueError(f"alpha = {self.l}/{self.m} is not in lowest terms")
        if Fraction(self.l, self.m) > 2:
            raise ValueError(f"alpha = {self.l}/{self.m} exceeds 2")

    @classmethod
    def of(cls, value: Union["AlphaIndex", Fraction, int, float, str]) -> "AlphaIndex":
        """Coerce ``value`` (``"1/2"``, ``Fraction(1, 2)``, ``0.5`` ...) to an index."""
        if isinstance(value, AlphaIndex):
            return value
        if isinstance(value, float):
            frac = Fraction(value).limit_denominator(1000)
        else:
            frac = Fraction(str(value).strip()) if isinstance(value, str) else Fraction(value)
        return cls(frac.numerator, frac.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.l, self.m)

    @property
    def value(self) -> float:
        return self.l / self.m

    def __str__(self):
        return str(self.l) if self.m == 1 else f"{self.l}/{self.m}"


class RngStream:
    """Reproducible random substream identified by ``(seed, stream_id)``.

    Two streams built from the same pair yield bit-identical draws; distinct
    ``stream_id`` values give independent substreams (numpy ``SeedSequence``
    spawn keys).  The stream is stateful: successive draws advance it.
    """

    def __init__(self, seed: int, stream_id: int = 0):
        if stream_id < 0:
            raise ValueError("stream_id must be non-negative")
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        self.generator = np.random.Generator(np.random.PCG64(ss))

    def __repr__(self):
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"


RngLike = Union[RngStream, np.random.Generator]


def as_generator(rng: RngLike) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"expected RngStream or numpy Generator, got {type(rng).__name__}")


def _check_alpha(alpha) -> float:
    a = AlphaIndex.of(alpha).value if not isinstance(alpha, float) else alpha
    if not 0 < a <= 2:
        raise ValueError(f"alpha must lie in (0, 2], got {a}")
    return a


def _standard_stable(a: float, gen: np.random.Generator, size) -> np.ndarray:
    # Symmetric Chambers-Mallows-Stuck; characteristic function exp(-|xi|**a).
    if a == 2.0:
        return math.sqrt(2.0) * gen.standard_normal(size)
    if a == 1.0:
        return np.tan(gen.uniform(-math.pi / 2, math.pi / 2, size))
    v = gen.uniform(-math.pi / 2, math.pi / 2, size)
    w = gen.standard_exponential(size)
    return (np.sin(a * v) / np.cos(v) ** (1.0 / a)) * (np.cos((1.0 - a) * v) / w) ** ((1.0 - a) / a)


def sample_symmetric_stable(alpha, t: float, rng: RngLike, size=None):
    """Draw ``Y(t)`` for the symmetric ``alpha``-stable process started at 0.

    Parameters
    ----------
    alpha : AlphaIndex, Fraction, str or float
        Stability index in ``(0, 2]``.
    t : float
        Positive time.
    rng : RngStream or numpy.random.Generator
    size : int or tuple, optional
        Number of independent draws; ``None`` returns a scalar.

    Returns
    -------
    float or ndarray
        Draws with characteristic function ``exp(-t |xi|**alpha)``.
    """
    a = _check_alpha(alpha)
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    y = t ** (1.0 / a) * _standard_stable(a, as_generator(rng), size)
    return float(y) if size is None else y


def _standard_subordinator(b: float, gen: np.random.Generator, size) -> np.ndarray:
    # Kanter's representation of the positive stable law with E exp(-lam T) = exp(-lam**b).
    u = gen.uniform(0.0, math.pi, size)
    e = gen.standard_exponential(size)
    a = np.sin(b * u) ** (b / (1.0 - b)) * np.sin((1.0 - b) * u) / np.sin(u) ** (1.0 / (1.0 - b))
    return (a / e) ** ((1.0 - b) / b)


def _check_beta(beta) -> float:
    b = float(Fraction(str(beta))) if isinstance(beta, str) else float(beta)
    if not 0 < b < 1:
        raise ValueError(f"subordinator index must lie in (0, 1), got {beta}")
    return b


def sample_subordinator(beta, t: float, rng: RngLike, size=None):
    """Draw ``T_t`` of the ``beta``-stable subordinator, ``E exp(-lam T_t) = exp(-t lam**beta)``."""
    b = _check_beta(beta)
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    gen = as_generator(rng)
    draw = t ** (1.0 / b) * _standard_subordinator(b, gen, size)
    if size is None:
        return float(draw)
    return draw


@dataclass
class PathSkeleton:
    """Values of a process on a time grid.

    ``values`` has shape ``(len(times),)`` for scalar processes and
    ``(len(times), n)`` for n-dimensional Brownian motion.
    """

    times: np.ndarray
    values: np.ndarray
    kind: str = "brownian"
    meta: dict = field(default_factory=dict)

    @property
    def increments(self) -> np.ndarray:
        return np.diff(self.values, axis=0)


def _check_grid(grid: Sequence[float]) -> np.ndarray:
    times = np.asarray(grid, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("time grid must be a non-empty 1-d sequence")
    if times[0] != 0.0:
        raise ValueError("time grid must start at 0")
    if times.size > 1 and not np.all(np.diff(times) > 0):
        raise ValueError("time grid must be strictly increasing")
    return times


def sample_path(kind: str, grid, start, rng: RngLike, *, alpha=None, beta=None, dim: int = 1,
                n_paths: int | None = None):
    """Sample a path skeleton with exact independent increments on ``grid``.

    Parameters
    ----------
    kind : {"stable", "subordinator", "brownian"}
    grid : sequence of float
        Strictly increasing times starting at 0.
    start : float or array_like
        Starting point (a point of R^dim for ``"brownian"``).
    alpha, beta : index of the stable process / subordinator.
    dim : int
        Dimension of the Brownian motion.
    n_paths : int, optional
        When given, ``values`` gains a leading axis of that length.
    """
    times = _check_grid(grid)
    gen = as_generator(rng)
    dt = np.diff(times)
    batch = () if n_paths is None else (int(n_paths),)
    if kind == "stable":
        a = _check_alpha(alpha)
        steps = dt ** (1.0 / a) * _standard_stable(a, gen, batch + dt.shape)
        x0 = float(start)
    elif kind == "subordinator":
        b = _check_beta(beta)
        steps = dt ** (1.0 / b) * _standard_subordinator(b, gen, batch + dt.shape)
        x0 = float(start)
    elif kind == "brownian":
        x0 = np.broadcast_to(np.asarray(start, dtype=float), (dim,))
        steps = np.sqrt(2.0 * dt)[:, None] * gen.standard_normal(batch + (dt.size, dim))
    else:
        raise ValueError(f"unknown path kind {kind!r}")
    zero = np.zeros_like(steps[..., :1, :] if kind == "brownian" else steps[..., :1])
    values = x0 + np.cumsum(np.concatenate([zero, steps], axis=-2 if kind == "brownian" else -1),
                            axis=-2 if kind == "brownian" else -1)
    if kind == "brownian" and dim == 1:
        values = values[..., 0]
    return PathSkeleton(times=times, values=values, kind=kind,
                        meta={"alpha": alpha, "beta": beta, "dim": dim})


def sample_alpha_time_marginal(alpha, t: float, x, rng: RngLike, size=None):
    """Exact draw of ``Z(t) = X^x(|Y(t)|)`` with X an n-dimensional Brownian motion.

    Given the clock ``S = |Y(t)|`` the outer value is ``x + sqrt(2 S) G`` with
    ``G`` standard normal in R^n, so no path discretization is involved.
    Returns shape ``(n,)`` for ``size=None`` and ``(size, n)`` otherwise.
    """
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    gen = as_generator(rng)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    n = x.size
    count = 1 if size is None else int(size)
    clock = np.abs(sample_symmetric_stable(alpha, t, gen, size=count))
    z = x + np.sqrt(2.0 * clock)[:, None] * gen.standard_normal((count, n))
    return z[0] if size is None else z
