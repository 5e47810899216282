"""Möbius addition and gyrations on the complex open unit disc.

Complex numbers are carried as ``(re, im)`` pairs of backend scalars so that
the same code runs on floats, float batches and exact rationals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import numeric
from .numeric import DEFAULT_TOLERANCE, FLOAT, RATIONAL, Tolerance


@dataclass(frozen=True)
class DiscPoint:
    """A point ``re + i*im`` with ``re**2 + im**2 < 1``."""

    re: object
    im: object

    def __post_init__(self):
        backend = numeric.common_backend(self.re, self.im)
        re = numeric.to_scalar(self.re, backend)
        im = numeric.to_scalar(self.im, backend)
        if not numeric.all_true(re * re + im * im < 1):
            raise ValueError("DiscPoint must satisfy re^2 + im^2 < 1")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    @property
    def backend(self) -> str:
        return numeric.backend_of(self.re)

    def components(self) -> tuple:
        return (self.re, self.im)

    def abs_sq(self):
        return self.re * self.re + self.im * self.im

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


@dataclass(frozen=True)
class DiscGyration:
    """A rotation of the disc, stored as the unimodular number ``g_re + i*g_im``."""

    g_re: object
    g_im: object

    def __post_init__(self):
        backend = numeric.common_backend(self.g_re, self.g_im)
        g_re = numeric.to_scalar(self.g_re, backend)
        g_im = numeric.to_scalar(self.g_im, backend)
        mod_sq = g_re * g_re + g_im * g_im
        if backend == RATIONAL:
            if mod_sq != 1:
                raise ValueError(f"gyration must be unimodular, |g|^2 = {mod_sq}")
            if g_re == -1:
                raise ValueError("-1 is not a gyration of the disc")
        elif not numeric.all_true(numeric.approx_eq(mod_sq, 1.0, DEFAULT_TOLERANCE)):
            raise ValueError("gyration must be unimodular")
        object.__setattr__(self, "g_re", g_re)
        object.__setattr__(self, "g_im", g_im)

    def components(self) -> tuple:
        return (self.g_re, self.g_im)

    def inverse(self) -> "DiscGyration":
        return DiscGyration(self.g_re, -self.g_im)

    def angle(self) -> float:
        return math.atan2(float(self.g_im), float(self.g_re))

    def __complex__(self) -> complex:
        return complex(float(self.g_re), float(self.g_im))


def _mul(ar, ai, br, bi):
    return ar * br - ai * bi, ar * bi + ai * br


def _div(ar, ai, br, bi):
    d = br * br + bi * bi
    return (ar * br + ai * bi) / d, (ai * br - ar * bi) / d


def mobius_add(a: DiscPoint, z: DiscPoint) -> DiscPoint:
    """``(a + z) / (1 + conj(a) z)``."""
    # 1 + conj(a) z
    den_re = 1 + a.re * z.re + a.im * z.im
    den_im = a.re * z.im - a.im * z.re
    return DiscPoint(*_div(a.re + z.re, a.im + z.im, den_re, den_im))


def mobius_neg(z: DiscPoint) -> DiscPoint:
    return DiscPoint(-z.re, -z.im)


def mobius_sub(a: DiscPoint, z: DiscPoint) -> DiscPoint:
    return mobius_add(a, mobius_neg(z))


def _quarter_turns(theta: float) -> int:
    k = round(theta / (math.pi / 2))
    if abs(theta - k * math.pi / 2) > 1e-12 * max(1.0, abs(theta)):
        raise ValueError("the rational backend only rotates by multiples of pi/2")
    return k % 4


def mobius_transform(theta: float, a: DiscPoint, z: DiscPoint) -> DiscPoint:
    """The general disc automorphism ``z -> e^{i theta} (a (+) z)``.

    On the rational backend theta must be a multiple of pi/2, so the rotation
    stays exact.
    """
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    w = mobius_add(a, z)
    if w.backend == RATIONAL:
        re, im = w.re, w.im
        for _ in range(_quarter_turns(theta)):
            re, im = -im, re
        return DiscPoint(re, im)
    c, s = math.cos(theta), math.sin(theta)
    return DiscPoint(*_mul(c, s, w.re, w.im))


def gyration_denominator(a: DiscPoint, b: DiscPoint) -> tuple:
    """``1 + a conj(b)`` as ``(re, im)``; its real part is positive on the disc."""
    return 1 + a.re * b.re + a.im * b.im, a.im * b.re - a.re * b.im


def gyration(a: DiscPoint, b: DiscPoint) -> DiscGyration:
    """``gyr[a,b] = (1 + a conj(b)) / (1 + conj(a) b)``.

    With ``w = 1 + a conj(b)`` the quotient is ``w / conj(w) = w**2 / |w|**2``,
    which is unimodular exactly on the rational backend.
    """
    wr, wi = gyration_denominator(a, b)
    m = wr * wr + wi * wi
    return DiscGyration((wr * wr - wi * wi) / m, 2 * wr * wi / m)


def apply_gyration(g: DiscGyration, z: DiscPoint) -> DiscPoint:
    return DiscPoint(*_mul(g.g_re, g.g_im, z.re, z.im))


def compose(g: DiscGyration, h: DiscGyration) -> tuple:
    """Product of two rotations as a plain ``(re, im)`` pair.

    The product need not be a gyration, so no DiscGyration is built.
    """
    return _mul(g.g_re, g.g_im, h.g_re, h.g_im)


def gyration_via_addition(a: DiscPoint, b: DiscPoint, z: DiscPoint) -> DiscPoint:
    """``gyr[a,b] z`` computed as ``(-(a (+) b)) (+) (a (+) (b (+) z))``."""
    return mobius_add(mobius_neg(mobius_add(a, b)), mobius_add(a, mobius_add(b, z)))


def point(re, im, backend: str = FLOAT) -> DiscPoint:
    return DiscPoint(numeric.to_scalar(re, backend), numeric.to_scalar(im, backend))


ZERO = DiscPoint(0, 0)


def find_half_turn_pair(r: float = 0.9, tol: float = 1e-12):
    """Find ``a, b`` with ``|a| = |b| = r`` whose gyration is a quarter turn.

    Returns ``(a, b, g)``.  Since ``g * g = -1``, the composition of two
    attainable gyrations is the half turn, which is not itself attainable.
    Bisects on the direction of ``b`` relative to ``a = r``.
    """
    if not 0 < r < 1:
        raise ValueError("r must lie in (0, 1)")

    def angle(phi):
        b = DiscPoint(r * math.cos(phi), r * math.sin(phi))
        return gyration(DiscPoint(r, 0.0), b).angle()

    target = -math.pi / 2
    # the angle decreases monotonically from 0 down to -2*asin(r^2), reached at cos(phi) = -r^2
    lo, hi = 0.0, math.acos(-r * r)
    if not angle(hi) < target:
        raise ValueError(f"r = {r} is too small for a quarter-turn gyration")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if angle(mid) > target:
            lo = mid
        else:
            hi = mid
    phi = 0.5 * (lo + hi)
    a = DiscPoint(r, 0.0)
    b = DiscPoint(r * math.cos(phi), r * math.sin(phi))
    return a, b, gyration(a, b)
