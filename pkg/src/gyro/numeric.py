"""Scalar backends, tolerance policy and inner-product primitives.

Two backends are supported:

* ``"float"`` -- IEEE doubles.  A numpy ``float64`` array is accepted anywhere
  a float is, and is treated as a batch of independent scalars.
* ``"rational"`` -- exact rationals (``gmpy2.mpq``), always in lowest terms.

Backends are never mixed inside one computation; domain types coerce their
inputs once, at construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import gmpy2
import numpy as np

FLOAT = "float"
RATIONAL = "rational"
BACKENDS = (FLOAT, RATIONAL)

MPQ = type(gmpy2.mpq(0))


@dataclass(frozen=True)
class Tolerance:
    atol: float = 1e-12
    rtol: float = 1e-9

    def __post_init__(self):
        for name in ("atol", "rtol"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise ValueError(f"{name} must be finite and nonnegative, got {v!r}")


DEFAULT_TOLERANCE = Tolerance()


def is_rational(x) -> bool:
    return isinstance(x, MPQ)


def is_batch(x) -> bool:
    return isinstance(x, np.ndarray)


def backend_of(x) -> str:
    if isinstance(x, MPQ):
        return RATIONAL
    if isinstance(x, (float, np.floating, np.ndarray)):
        return FLOAT
    if isinstance(x, (int, Rational)):
        # ints and Fractions carry no float rounding; they go exact by default
        return RATIONAL
    raise TypeError(f"unsupported scalar type {type(x).__name__}")


def common_backend(*xs) -> str:
    return FLOAT if any(backend_of(x) == FLOAT for x in xs) else RATIONAL


def parse_rational(text: str) -> MPQ:
    """Parse ``"p/q"``, an integer or a finite decimal string exactly."""
    try:
        f = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc
    return gmpy2.mpq(f.numerator, f.denominator)


def to_scalar(x, backend: str):
    """Coerce ``x`` into ``backend``, rejecting NaN and infinities."""
    if backend == FLOAT:
        if isinstance(x, np.ndarray):
            out = np.asarray(x, dtype=np.float64)
            if not np.all(np.isfinite(out)):
                raise ValueError("non-finite value in batch")
            return out
        if isinstance(x, str):
            x = Fraction(x.strip()) if "/" in x else float(x)
        out = float(x)
        if not math.isfinite(out):
            raise ValueError(f"non-finite scalar {x!r}")
        return out
    if backend == RATIONAL:
        if isinstance(x, MPQ):
            return x
        if isinstance(x, str):
            return parse_rational(x)
        if isinstance(x, np.ndarray):
            raise TypeError("the rational backend does not take numpy batches")
        if isinstance(x, (float, np.floating)):
            if not math.isfinite(x):
                raise ValueError(f"non-finite scalar {x!r}")
            return gmpy2.mpq(float(x))
        if isinstance(x, Rational):
            return gmpy2.mpq(int(x.numerator), int(x.denominator))
        raise TypeError(f"cannot convert {type(x).__name__} to a rational")
    raise ValueError(f"unknown backend {backend!r}")


def all_true(cond) -> bool:
    return bool(np.all(cond))


def approx_eq(x, y, tol: Tolerance = DEFAULT_TOLERANCE):
    """``|x - y| <= atol + rtol * max(|x|, |y|)``; exact equality for rationals.

    Batched inputs give an elementwise boolean array.  NaN never compares equal.
    """
    if is_rational(x) and is_rational(y):
        return x == y
    if is_batch(x) or is_batch(y):
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        return np.abs(x - y) <= tol.atol + tol.rtol * np.maximum(np.abs(x), np.abs(y))
    x, y = float(x), float(y)
    return abs(x - y) <= tol.atol + tol.rtol * max(abs(x), abs(y))


def inner(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} != {len(v)}")
    acc = 0
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


def norm_sq(u: Sequence):
    return inner(u, u)


def format_scalar(x) -> str:
    """Exact ``p/q`` for rationals, 17 significant digits for floats."""
    if is_rational(x):
        return str(x) if x.denominator != 1 else str(x.numerator)
    return format(float(x), ".17g")


def format_decimal(x) -> str:
    return format(float(x), ".17g")
