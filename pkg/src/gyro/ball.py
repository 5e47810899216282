"""Möbius addition and gyrations on the s-ball of R^n.

Coordinates are tuples of backend scalars.  On the float backend each
coordinate may also be a numpy array, in which case a point stands for a
batch of points (one per array entry).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import numeric
from .disc import DiscGyration, DiscPoint
from .numeric import FLOAT, inner, norm_sq


@dataclass(frozen=True)
class BallParams:
    dim: int
    s: object = 1
    backend: str = FLOAT

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim!r}")
        if self.backend not in numeric.BACKENDS:
            raise ValueError(f"unknown backend {self.backend!r}")
        s = numeric.to_scalar(self.s, self.backend)
        if numeric.is_batch(s) or not s > 0:
            raise ValueError(f"s must be a positive scalar, got {self.s!r}")
        object.__setattr__(self, "s", s)

    @property
    def s_sq(self):
        return self.s * self.s


def _coerce(coords: Sequence, params: BallParams) -> tuple:
    coords = tuple(numeric.to_scalar(c, params.backend) for c in coords)
    if len(coords) != params.dim:
        raise ValueError(f"expected {params.dim} coordinates, got {len(coords)}")
    return coords


@dataclass(frozen=True)
class AmbientVector:
    """A vector of R^n with no norm restriction (argument of extended gyrations)."""

    coords: tuple
    params: BallParams

    def __post_init__(self):
        object.__setattr__(self, "coords", _coerce(self.coords, self.params))

    def components(self) -> tuple:
        return self.coords


@dataclass(frozen=True)
class BallPoint:
    """A vector of norm strictly less than ``params.s``."""

    coords: tuple
    params: BallParams

    def __post_init__(self):
        coords = _coerce(self.coords, self.params)
        if not numeric.all_true(norm_sq(coords) < self.params.s_sq):
            raise ValueError(f"BallPoint must have norm < s = {self.params.s}")
        object.__setattr__(self, "coords", coords)

    def components(self) -> tuple:
        return self.coords

    def ambient(self) -> AmbientVector:
        return AmbientVector(self.coords, self.params)


@dataclass(frozen=True)
class GyrationCoefficients:
    A: object
    B: object
    D: object


def _same_params(*xs) -> BallParams:
    params = xs[0].params
    for x in xs[1:]:
        if x.params != params:
            raise ValueError(f"ball parameter mismatch: {params} vs {x.params}")
    return params


def point(coords: Sequence, dim: int | None = None, s=1, backend: str = FLOAT) -> BallPoint:
    dim = len(coords) if dim is None else dim
    return BallPoint(tuple(coords), BallParams(dim, s, backend))


def zero(params: BallParams) -> BallPoint:
    return BallPoint((0,) * params.dim, params)


def ball_add(u: BallPoint, v: BallPoint) -> BallPoint:
    params = _same_params(u, v)
    s2 = params.s_sq
    uv = inner(u.coords, v.coords)
    uu = norm_sq(u.coords)
    vv = norm_sq(v.coords)
    # (1 + (2u.v + |v|^2)/s^2) u + (1 - |u|^2/s^2) v, regrouped around u + v so that
    # u (+) (-u) is exactly 0 in floating point
    total = tuple(x + y for x, y in zip(u.coords, v.coords))
    cs = 1 - uu / s2
    cu = norm_sq(total) / s2
    den = 1 + 2 * uv / s2 + uu * vv / (s2 * s2)
    return BallPoint(tuple((cs * t + cu * x) / den for t, x in zip(total, u.coords)), params)


def ball_neg(u: BallPoint) -> BallPoint:
    return BallPoint(tuple(-x for x in u.coords), u.params)


def ball_sub(u: BallPoint, v: BallPoint) -> BallPoint:
    return ball_add(u, ball_neg(v))


def gyration_coeffs(u: BallPoint, v: BallPoint, w) -> GyrationCoefficients:
    params = _same_params(u, v, w)
    s2 = params.s_sq
    s4 = s2 * s2
    uv = inner(u.coords, v.coords)
    uw = inner(u.coords, w.coords)
    vw = inner(v.coords, w.coords)
    uu = norm_sq(u.coords)
    vv = norm_sq(v.coords)
    A = -uw * vv / s4 + vw / s2 + 2 * uv * vw / s4
    B = -vw * uu / s4 - uw / s2
    D = 1 + 2 * uv / s2 + uu * vv / s4
    return GyrationCoefficients(A, B, D)


def gyrate(u: BallPoint, v: BallPoint, w):
    """Closed-form ``gyr[u,v] w = w + 2 (A u + B v) / D``.

    ``w`` may be a BallPoint or an AmbientVector; the result has the same type.
    """
    k = gyration_coeffs(u, v, w)
    coords = tuple(
        x + 2 * (k.A * a + k.B * b) / k.D for x, a, b in zip(w.coords, u.coords, v.coords)
    )
    return type(w)(coords, w.params)


def gyrate_via_definition(u: BallPoint, v: BallPoint, z: BallPoint) -> BallPoint:
    """``gyr[u,v] z = (-(u (+) v)) (+) (u (+) (v (+) z))``; z must lie in the ball."""
    _same_params(u, v, z)
    return ball_add(ball_neg(ball_add(u, v)), ball_add(u, ball_add(v, z)))


def basis(params: BallParams, j: int) -> AmbientVector:
    return AmbientVector(tuple(1 if i == j else 0 for i in range(params.dim)), params)


def gyration_matrix(u: BallPoint, v: BallPoint) -> tuple:
    """Row-major ``n x n`` matrix whose column j is ``gyrate(u, v, e_j)``."""
    params = _same_params(u, v)
    cols = [gyrate(u, v, basis(params, j)).coords for j in range(params.dim)]
    return tuple(tuple(col[i] for col in cols) for i in range(params.dim))


def from_disc(z: DiscPoint) -> BallPoint:
    return BallPoint((z.re, z.im), BallParams(2, 1, z.backend))


def to_disc(p: BallPoint) -> DiscPoint:
    if p.params.dim != 2 or p.params.s != 1:
        raise ValueError("only the unit ball of R^2 corresponds to the disc")
    return DiscPoint(*p.coords)


def gyration_from_disc(g: DiscGyration) -> tuple:
    """The 2x2 rotation matrix of a disc gyration, row-major."""
    return ((g.g_re, -g.g_im), (g.g_im, g.g_re))


def limit_scan(u: Sequence[float], v: Sequence[float], radii: Sequence[float]) -> list[dict]:
    """Distance between ``u (+)_s v`` and ``u + v`` for each radius s.

    The coordinates of u and v are held fixed while the ball grows.  Each row
    carries ``ratio = e(s) / e(next s)``; it is None for the last row and when
    the next error is zero.
    """
    rows = []
    for s in radii:
        params = BallParams(len(u), s, FLOAT)
        w = ball_add(BallPoint(tuple(u), params), BallPoint(tuple(v), params))
        err = math.sqrt(sum((wi - (ui + vi)) ** 2 for wi, ui, vi in zip(w.coords, u, v)))
        rows.append({"s": float(s), "error": err})
    for cur, nxt in zip(rows, rows[1:] + [None]):
        cur["ratio"] = cur["error"] / nxt["error"] if nxt and nxt["error"] else None
    return rows


def default_radii(count: int = 11) -> list[float]:
    return [10.0 * 2**k for k in range(count)]
