"""Deterministic, index-addressable sampling of interior points.

A point is addressed by ``(seed, index)``.  Points are drawn in fixed-size
blocks from ``numpy.random.default_rng([seed, block])`` so that a single
index and a batch of indices see bit-identical coordinates.
"""
from __future__ import annotations

from functools import lru_cache

import gmpy2
import numpy as np

BLOCK = 1024
RADIUS_FRACTION = 0.999


@lru_cache(maxsize=256)
def _disc_block(seed: int, block: int) -> np.ndarray:
    rng = np.random.default_rng([seed, block, 2])
    theta = rng.uniform(0.0, 2 * np.pi, BLOCK)
    radius = RADIUS_FRACTION * np.sqrt(rng.random(BLOCK))
    out = np.stack([radius * np.cos(theta), radius * np.sin(theta)], axis=1)
    out.flags.writeable = False
    return out


@lru_cache(maxsize=256)
def _ball_block(seed: int, block: int, dim: int) -> np.ndarray:
    # unit-ball sample; callers scale by s
    rng = np.random.default_rng([seed, block, dim, 1])
    g = rng.standard_normal((BLOCK, dim))
    norms = np.linalg.norm(g, axis=1)
    norms[norms == 0] = 1.0
    radius = RADIUS_FRACTION * rng.random(BLOCK) ** (1.0 / dim)
    out = g / norms[:, None] * radius[:, None]
    out.flags.writeable = False
    return out


def _gather(block_fn, seed, indices, *extra) -> np.ndarray:
    indices = np.asarray(indices, dtype=np.int64)
    if indices.ndim == 0:
        indices = indices[None]
    if np.any(indices < 0):
        raise ValueError("sample indices must be nonnegative")
    blocks, rows = np.divmod(indices, BLOCK)
    first = block_fn(seed, 0, *extra)
    out = np.empty((len(indices), first.shape[1]))
    for b in np.unique(blocks):
        mask = blocks == b
        out[mask] = block_fn(seed, int(b), *extra)[rows[mask]]
    return out


def disc_coords(seed: int, indices) -> np.ndarray:
    """Area-uniform points of radius at most 0.999, shape ``(len(indices), 2)``."""
    return _gather(_disc_block, seed, indices)


def ball_coords(seed: int, indices, dim: int, s: float) -> np.ndarray:
    """Volume-uniform points of norm at most 0.999*s, shape ``(len(indices), dim)``."""
    return _gather(_ball_block, seed, indices, dim) * s


def to_grid(x: float, scale, denominator: int):
    """Truncate ``x`` toward zero onto the grid ``scale * k / denominator``.

    Truncation never increases a coordinate's magnitude, so a point inside a
    ball stays inside it.
    """
    k = int(x / float(scale) * denominator)  # int() truncates toward zero
    return gmpy2.mpq(k, denominator) * scale
