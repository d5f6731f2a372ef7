"""Mean exit time of the Cauchy-time Brownian motion from a ball.

The Cauchy-time process leaves ``D`` exactly when the Cauchy clock leaves
``(-tau, tau)``, with ``tau`` the exit time of the outer Brownian motion.
Given ``tau`` the clock exit has mean ``tau``, so ``E T = E tau`` solves
``Lap u = -1`` on the ball with zero boundary values.

Skeletons use a per-step boundary test and no bridge correction; the
discretization bias is handled by running ``h, h/2, h/4`` and extrapolating
linearly in ``sqrt(h)``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from .montecarlo import Estimate, mc_samples

__all__ = [
    "BallDomain",
    "exit_oracle",
    "getoor_conditional_mean",
    "ExitLevel",
    "ExitTimeResult",
    "brownian_exit_times",
    "cauchy_exit_times",
    "exit_time_mc",
    "extrapolate_sqrt_h",
]


@dataclass(frozen=True)
class BallDomain:
    n: int
    R: float = 1.0
    center: tuple | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if not self.R > 0:
            raise ValueError("radius must be positive")
        c = (0.0,) * self.n if self.center is None else tuple(float(v) for v in np.atleast_1d(self.center))
        if len(c) != self.n:
            raise ValueError(f"center has dimension {len(c)}, expected {self.n}")
        object.__setattr__(self, "center", c)

    def distance(self, x) -> float:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if x.size != self.n:
            raise ValueError(f"point has dimension {x.size}, expected {self.n}")
        return float(np.linalg.norm(x - np.asarray(self.center)))


def exit_oracle(ball: BallDomain, x) -> float:
    """``(R^2 - |x - center|^2) / (2n)``, the solution of ``Lap u = -1``, ``u = 0`` on the sphere."""
    d = ball.distance(x)
    if d > ball.R:
        raise ValueError(f"x lies outside the ball (|x - center| = {d} > R = {ball.R})")
    return (ball.R ** 2 - d * d) / (2.0 * ball.n)


def getoor_conditional_mean(tau: float) -> float:
    """Mean exit time of the Cauchy process from ``(-tau, tau)`` started at 0."""
    if not tau > 0:
        raise ValueError("tau must be positive")
    return float(tau)


def brownian_exit_times(ball: BallDomain, x, h: float, count: int, gen: np.random.Generator) -> np.ndarray:
    """Exit times of ``count`` Brownian skeletons (step ``h``, variance ``2h`` per coordinate)."""
    center = np.asarray(ball.center)
    pos = np.broadcast_to(np.atleast_1d(np.asarray(x, dtype=float)) - center, (count, ball.n)).copy()
    out = np.empty(count)
    active = np.arange(count)
    scale, r2 = math.sqrt(2.0 * h), ball.R ** 2
    k = 0
    while active.size:
        k += 1
        pos += scale * gen.standard_normal(pos.shape)
        gone = np.einsum("ij,ij->i", pos, pos) >= r2
        if gone.any():
            out[active[gone]] = k * h
            keep = ~gone
            active, pos = active[keep], pos[keep]
    return out


def cauchy_exit_times(radius: np.ndarray, h: float, gen: np.random.Generator) -> np.ndarray:
    """First skeleton time ``k h`` with ``|C(k h)| >= radius`` for a Cauchy process from 0."""
    radius = np.asarray(radius, dtype=float)
    out = np.empty(radius.size)
    active = np.arange(radius.size)
    pos = np.zeros(radius.size)
    rad = radius.copy()
    k = 0
    while active.size:
        k += 1
        pos += h * gen.standard_cauchy(pos.size)
        gone = np.abs(pos) >= rad
        if gone.any():
            out[active[gone]] = k * h
            keep = ~gone
            active, pos, rad = active[keep], pos[keep], rad[keep]
    return out


def _exit_draw(count, gen, *, ball, x, h, two_stage):
    tau = brownian_exit_times(ball, x, h, count, gen)
    if not two_stage:
        return tau[:, None]
    return np.column_stack([tau, cauchy_exit_times(tau, h, gen)])


@dataclass(frozen=True)
class ExitLevel:
    h: float
    collapsed: Estimate
    two_stage: Estimate | None

    def as_dict(self) -> dict:
        return {"h": self.h, "collapsed": self.collapsed.as_dict(),
                "two_stage": None if self.two_stage is None else self.two_stage.as_dict()}


def extrapolate_sqrt_h(hs, means, stderrs) -> Estimate:
    """Least-squares intercept of ``mean`` against ``sqrt(h)``.

    Levels are independent, so the intercept's stderr follows from its
    linear weights.
    """
    u = np.sqrt(np.asarray(hs, dtype=float))
    y = np.asarray(means, dtype=float)
    se = np.asarray(stderrs, dtype=float)
    if u.size < 2:
        raise ValueError("need at least two levels")
    du = u - u.mean()
    w = 1.0 / u.size - u.mean() * du / np.sum(du * du)  # intercept = sum w_i y_i
    return Estimate(float(w @ y), float(math.sqrt(np.sum((w * se) ** 2))), 0)


@dataclass
class ExitTimeResult:
    ball: BallDomain
    x: tuple
    oracle: float
    levels: list[ExitLevel]
    collapsed: Estimate
    two_stage: Estimate | None
    coarse: bool
    warnings: list[str] = field(default_factory=list)

    @property
    def joint_stderr(self) -> float:
        if self.two_stage is None:
            return math.nan
        return math.hypot(self.collapsed.stderr, self.two_stage.stderr)

    @property
    def getoor_gap(self) -> float:
        if self.two_stage is None:
            return math.nan
        return abs(self.two_stage.mean - self.collapsed.mean)

    @property
    def refinement_converging(self) -> bool:
        """``|e(h/2) - e(h/4)| < |e(h) - e(h/2)| + 2 stderr`` on the collapsed estimator."""
        if len(self.levels) < 3:
            return True
        e = [lv.collapsed for lv in self.levels[-3:]]
        return abs(e[1].mean - e[2].mean) < abs(e[0].mean - e[1].mean) + 2.0 * max(v.stderr for v in e)

    def as_dict(self) -> dict:
        return {
            "n": self.ball.n, "R": self.ball.R, "center": list(self.ball.center), "x": list(self.x),
            "oracle": self.oracle,
            "levels": [lv.as_dict() for lv in self.levels],
            "collapsed": self.collapsed.as_dict(),
            "two_stage": None if self.two_stage is None else self.two_stage.as_dict(),
            "joint_stderr": self.joint_stderr,
            "getoor_gap": self.getoor_gap,
            "refinement_converging": self.refinement_converging,
            "coarse": self.coarse,
            "warnings": list(self.warnings),
        }


def exit_time_mc(ball: BallDomain, x, h, N: int, seed: int, *, two_stage: bool = True,
                 workers: int = 1) -> ExitTimeResult:
    """Exit-time estimates on a refinement ladder.

    ``h`` is either one step (the ladder ``h, h/2, h/4`` is used) or an
    explicit sequence of steps.  Each level uses its own block of random
    streams, so levels are independent.  ``collapsed`` returns the Brownian
    exit time ``tau``; ``two_stage`` continues with a Cauchy skeleton until
    ``|C| >= tau``.
    """
    if N < 1000:
        raise ValueError("N must be at least 1000")
    hs = [float(h), float(h) / 2, float(h) / 4] if np.ndim(h) == 0 else [float(v) for v in h]
    if any(not v > 0 for v in hs):
        raise ValueError("grid steps must be positive")
    xv = tuple(float(v) for v in np.atleast_1d(np.asarray(x, dtype=float)))
    if ball.distance(xv) >= ball.R:
        raise ValueError("x must lie strictly inside the ball")
    oracle = exit_oracle(ball, xv)
    notes = []
    coarse = oracle / max(hs) < 10
    if coarse:
        msg = f"grid step {max(hs):g} gives fewer than 10 expected steps before exit ({oracle / max(hs):.2f})"
        notes.append(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
    # Streams are blocked per level so each level's sample is independent.
    block = 1 << 20
    levels = []
    for i, hv in enumerate(hs):
        draw = partial(_exit_draw, ball=ball, x=xv, h=hv, two_stage=two_stage)
        s = mc_samples(draw, N, seed, workers=workers, first_stream=i * block)
        est = [Estimate(float(col.mean()), float(col.std(ddof=1) / math.sqrt(col.size)), col.size) for col in s.T]
        levels.append(ExitLevel(hv, est[0], est[1] if two_stage else None))
    if len(hs) >= 2:
        collapsed = extrapolate_sqrt_h(hs, [lv.collapsed.mean for lv in levels], [lv.collapsed.stderr for lv in levels])
        collapsed = Estimate(collapsed.mean, collapsed.stderr, N * len(hs))
        two = None
        if two_stage:
            two = extrapolate_sqrt_h(hs, [lv.two_stage.mean for lv in levels], [lv.two_stage.stderr for lv in levels])
            two = Estimate(two.mean, two.stderr, N * len(hs))
    else:
        collapsed, two = levels[0].collapsed, levels[0].two_stage
    return ExitTimeResult(ball, xv, oracle, levels, collapsed, two, coarse, notes)
