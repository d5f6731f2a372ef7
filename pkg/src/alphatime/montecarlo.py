"""Chunked Monte Carlo with a reduction order fixed by stream id.

Work is cut into chunks of a fixed size independent of the worker count;
chunk ``i`` draws from ``RngStream(seed, i)``.  Chunk statistics are merged
in increasing ``i``, so the estimate is bit-identical for any ``workers``.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .sampling import RngStream

DEFAULT_CHUNK = 250_000


@dataclass(frozen=True)
class Estimate:
    mean: float
    stderr: float
    n: int

    def within(self, target: float, k: float = 4.0) -> bool:
        return abs(self.mean - target) <= k * self.stderr

    def as_dict(self) -> dict:
        return {"mean": self.mean, "stderr": self.stderr, "n": self.n}


def _chunk_stats(draw: Callable, count: int, seed: int, stream_id: int):
    values = np.asarray(draw(count, RngStream(seed, stream_id).generator), dtype=float)
    mean = float(values.mean())
    m2 = float(np.sum((values - mean) ** 2))
    return values.size, mean, m2


def _merge(stats) -> Estimate:
    # Chan et al. pairwise update, applied in stream order.
    n, mean, m2 = 0, 0.0, 0.0
    for nb, mb, m2b in stats:
        if nb == 0:
            continue
        tot = n + nb
        delta = mb - mean
        mean += delta * nb / tot
        m2 += m2b + delta * delta * n * nb / tot
        n = tot
    var = m2 / (n - 1) if n > 1 else 0.0
    return Estimate(mean=mean, stderr=math.sqrt(var / n) if n else math.nan, n=n)


def mc_estimate(draw: Callable[[int, np.random.Generator], np.ndarray], n: int, seed: int,
                *, workers: int = 1, chunk: int = DEFAULT_CHUNK, first_stream: int = 0) -> Estimate:
    """Estimate ``E[X]`` from ``n`` draws of ``draw(count, generator)``.

    ``draw`` must be picklable (module-level function or ``functools.partial``)
    when ``workers > 1``.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    sizes = [chunk] * (n // chunk)
    if n % chunk:
        sizes.append(n % chunk)
    ids = [first_stream + i for i in range(len(sizes))]
    if workers <= 1 or len(sizes) == 1:
        stats = [_chunk_stats(draw, c, seed, i) for c, i in zip(sizes, ids)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            stats = list(pool.map(_chunk_stats, [draw] * len(sizes), sizes, [seed] * len(sizes), ids))
    return _merge(stats)


def mc_samples(draw: Callable, n: int, seed: int, *, workers: int = 1, chunk: int = DEFAULT_CHUNK,
               first_stream: int = 0) -> np.ndarray:
    """Raw draws concatenated in stream order (for estimators needing the sample itself)."""
    sizes = [chunk] * (n // chunk) + ([n % chunk] if n % chunk else [])
    ids = [first_stream + i for i in range(len(sizes))]
    if workers <= 1 or len(sizes) == 1:
        parts = [_raw_chunk(draw, c, seed, i) for c, i in zip(sizes, ids)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_raw_chunk, [draw] * len(sizes), sizes, [seed] * len(sizes), ids))
    return np.concatenate(parts, axis=0)


def _raw_chunk(draw, count, seed, stream_id):
    return np.asarray(draw(count, RngStream(seed, stream_id).generator))
