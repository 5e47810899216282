"""Generic gyrogroup axiom engine.

A realization bundles a carrier's operations (``op``, ``neg``, ``zero``,
``gyr``) with deterministic sampling and a residual-reporting equality.
``run_suite`` checks the gyrogroup axioms G1-G6 and a set of derived
identities against it and returns an :class:`AxiomReport`.

Float realizations are *vectorized*: ``sample_many`` returns one point whose
coordinates are numpy arrays, and every check runs once over the whole batch.
Because batched and scalar float arithmetic round identically, a
counterexample found in a batch replays exactly through ``sample``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import ball, disc, numeric, sampling
from .numeric import DEFAULT_TOLERANCE, FLOAT, RATIONAL, Tolerance


@dataclass(frozen=True)
class Check:
    name: str
    arity: int
    # (realization, *elements) -> (lhs, rhs)
    sides: Callable


@dataclass
class CheckRecord:
    name: str
    samples_run: int = 0
    failures: int = 0
    max_residual: object = 0
    first_counterexample: dict | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "samples_run": self.samples_run,
            "failures": self.failures,
            "max_residual": numeric.format_scalar(self.max_residual),
            "passed": self.passed,
            "first_counterexample": self.first_counterexample,
        }


@dataclass
class AxiomReport:
    realization: str
    seed: int
    samples: int
    tolerance: Tolerance
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def max_residual(self):
        return max((r.max_residual for r in self.records), default=0)

    def record(self, name: str) -> CheckRecord:
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "realization": self.realization,
            "seed": self.seed,
            "samples": self.samples,
            "tolerance": {"atol": self.tolerance.atol, "rtol": self.tolerance.rtol},
            "passed": self.passed,
            "max_residual": numeric.format_scalar(self.max_residual),
            "records": [r.to_dict() for r in self.records],
        }


class Realization:
    """Base class for carriers.  Subclasses fill in the operations."""

    name = "realization"
    vectorized = False
    # finite carriers list their elements and are checked exhaustively
    elements: tuple | None = None

    def sample(self, seed: int, index: int):
        raise NotImplementedError

    def sample_many(self, seed: int, indices):
        raise NotImplementedError

    def op(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    @property
    def zero(self):
        raise NotImplementedError

    def gyr(self, a, b, c):
        raise NotImplementedError

    def eq(self, x, y, tol: Tolerance):
        """Return ``(ok, residual)``; both are arrays for batched inputs."""
        raise NotImplementedError

    def render(self, x):
        return [numeric.format_scalar(c) for c in x.components()]

    def extra_checks(self) -> list[Check]:
        return []


def _component_eq(xs, ys, scale, tol: Tolerance):
    """Max-abs componentwise residual in units of ``scale``."""
    if numeric.common_backend(*xs, *ys) == RATIONAL:
        res = numeric.to_scalar(max(abs(x - y) for x, y in zip(xs, ys)), RATIONAL) / scale
        return res == 0, res
    scale = float(scale)
    xs = [np.asarray(x, dtype=np.float64) / scale for x in xs]
    ys = [np.asarray(y, dtype=np.float64) / scale for y in ys]
    res = np.zeros(np.broadcast(*xs, *ys).shape)
    ok = np.ones(res.shape, dtype=bool)
    for x, y in zip(xs, ys):
        res = np.maximum(res, np.abs(x - y))
        ok &= numeric.approx_eq(x, y, tol)
    if res.ndim == 0:
        return bool(ok), float(res)
    return ok, res


class DiscRealization(Realization):
    """The Möbius disc.  Gyrations act by complex multiplication."""

    def __init__(self, backend: str = FLOAT, denominator: int = 64):
        if backend not in numeric.BACKENDS:
            raise ValueError(f"unknown backend {backend!r}")
        self.backend = backend
        self.vectorized = backend == FLOAT
        self.denominator = denominator
        self.name = f"disc[{backend}]"

    def sample(self, seed, index):
        re, im = sampling.disc_coords(seed, [index])[0]
        if self.backend == RATIONAL:
            return disc.DiscPoint(
                sampling.to_grid(re, 1, self.denominator), sampling.to_grid(im, 1, self.denominator)
            )
        return disc.DiscPoint(float(re), float(im))

    def sample_many(self, seed, indices):
        xy = sampling.disc_coords(seed, indices)
        return disc.DiscPoint(xy[:, 0].copy(), xy[:, 1].copy())

    def op(self, a, b):
        return disc.mobius_add(a, b)

    def neg(self, a):
        return disc.mobius_neg(a)

    @property
    def zero(self):
        return disc.ZERO if self.backend == RATIONAL else disc.DiscPoint(0.0, 0.0)

    def gyr(self, a, b, c):
        return disc.apply_gyration(disc.gyration(a, b), c)

    def eq(self, x, y, tol):
        return _component_eq(x.components(), y.components(), 1, tol)

    def extra_checks(self):
        g = disc.gyration
        return [
            Check(
                "gyration_via_addition",
                3,
                lambda r, a, b, c: (disc.gyration_via_addition(a, b, c), r.gyr(a, b, c)),
            ),
            Check("gyration_unimodular", 2, lambda r, a, b: (_Modulus(g(a, b)), _Modulus.ONE)),
            Check(
                "gyration_inverse_value",
                2,
                lambda r, a, b: (_Pair(disc.compose(g(a, b), g(b, a))), _Pair((1, 0))),
            ),
            Check("left_loop_value", 2, lambda r, a, b: (g(r.op(a, b), b), g(a, b))),
            Check("right_loop_value", 2, lambda r, a, b: (g(a, r.op(b, a)), g(a, b))),
            Check(
                "nested_gyration_value",
                2,
                lambda r, a, b: (g(b, r.neg(r.gyr(b, a, a))), g(a, b)),
            ),
            Check(
                "attainability",
                2,
                lambda r, a, b: (_Positive(disc.gyration_denominator(a, b)[0]), _Positive.TRUE),
            ),
        ]


class _Pair:
    def __init__(self, pair):
        self._pair = tuple(pair)

    def components(self):
        return self._pair


class _Modulus(_Pair):
    def __init__(self, g):
        super().__init__((g.g_re * g.g_re + g.g_im * g.g_im,))


_Modulus.ONE = _Pair((1,))


class _Positive(_Pair):
    """Encodes ``x > 0`` as an equality: component is 1 when it holds, 0 otherwise."""

    def __init__(self, x):
        if numeric.is_batch(x):
            super().__init__(((x > 0).astype(np.float64),))
        elif numeric.is_rational(x):
            super().__init__((numeric.to_scalar(int(x > 0), RATIONAL),))
        else:
            super().__init__((float(x > 0),))


_Positive.TRUE = _Pair((1,))


class BallRealization(Realization):
    """The Möbius s-ball of R^dim with the closed-form gyrator."""

    def __init__(self, dim: int, s=1, backend: str = FLOAT, denominator: int = 64):
        self.params = ball.BallParams(dim, s, backend)
        self.backend = backend
        self.vectorized = backend == FLOAT
        self.denominator = denominator
        self.name = f"ball[dim={dim},s={numeric.format_scalar(self.params.s)},{backend}]"
        self._zero = ball.zero(self.params)

    def sample(self, seed, index):
        row = sampling.ball_coords(seed, [index], self.params.dim, float(self.params.s))[0]
        if self.backend == RATIONAL:
            coords = tuple(sampling.to_grid(x, self.params.s, self.denominator) for x in row)
        else:
            coords = tuple(float(x) for x in row)
        return ball.BallPoint(coords, self.params)

    def sample_many(self, seed, indices):
        xs = sampling.ball_coords(seed, indices, self.params.dim, float(self.params.s))
        return ball.BallPoint(tuple(xs[:, j].copy() for j in range(self.params.dim)), self.params)

    def op(self, a, b):
        return ball.ball_add(a, b)

    def neg(self, a):
        return ball.ball_neg(a)

    @property
    def zero(self):
        return self._zero

    def gyr(self, a, b, c):
        return ball.gyrate(a, b, c)

    def eq(self, x, y, tol):
        # points are measured in units of s, inner products in units of s^2
        if isinstance(x, _Pair):
            return _component_eq(x.components(), y.components(), self.params.s_sq, tol)
        return _component_eq(x.components(), y.components(), self.params.s, tol)

    def extra_checks(self):
        def inner_preserved(r, a, b, c, d):
            lhs = numeric.inner(r.gyr(a, b, c).coords, r.gyr(a, b, d).coords)
            return _Pair((lhs,)), _Pair((numeric.inner(c.coords, d.coords),))

        return [
            Check(
                "closed_form_vs_definition",
                3,
                lambda r, a, b, c: (ball.gyrate_via_definition(a, b, c), r.gyr(a, b, c)),
            ),
            Check("inner_product_preservation", 4, inner_preserved),
            Check(
                "D_positive",
                2,
                lambda r, a, b: (
                    _Positive(ball.gyration_coeffs(a, b, a).D),
                    _Positive.TRUE,
                ),
            ),
        ]


def _g1(r, a):
    return r.op(r.zero, a), a


def _g2(r, a):
    return r.op(r.neg(a), a), r.zero


def _g3(r, a, b, c):
    return r.op(a, r.op(b, c)), r.op(r.op(a, b), r.gyr(a, b, c))


def _g4(r, a, b, c, d):
    return r.gyr(a, b, r.op(c, d)), r.op(r.gyr(a, b, c), r.gyr(a, b, d))


def _g4_inverse(r, a, b, c):
    return r.gyr(b, a, r.gyr(a, b, c)), c


def _g5(r, a, b, c):
    return r.gyr(r.op(a, b), b, c), r.gyr(a, b, c)


def _g6(r, a, b):
    return r.op(a, b), r.gyr(a, b, r.op(b, a))


def _right_gyroassoc(r, a, b, c):
    return r.op(r.op(a, b), c), r.op(a, r.op(b, r.gyr(b, a, c)))


def _right_loop(r, a, b, c):
    return r.gyr(a, r.op(b, a), c), r.gyr(a, b, c)


def _nested(r, a, b, c):
    return r.gyr(b, r.neg(r.gyr(b, a, a)), c), r.gyr(a, b, c)


def _automorphic_inverse(r, a, b):
    return r.neg(r.op(a, b)), r.op(r.neg(a), r.neg(b))


def _left_cancellation(r, a, c):
    return r.op(r.neg(a), r.op(a, c)), c


AXIOM_CHECKS = (
    Check("G1_left_identity", 1, _g1),
    Check("G2_left_inverse", 1, _g2),
    Check("G3_left_gyroassociative", 3, _g3),
    Check("G4_automorphism", 4, _g4),
    Check("G4_inverse_gyration", 3, _g4_inverse),
    Check("G5_left_loop", 3, _g5),
    Check("G6_gyrocommutative", 2, _g6),
)

DERIVED_CHECKS = (
    Check("right_gyroassociative", 3, _right_gyroassoc),
    Check("right_loop", 3, _right_loop),
    Check("nested_gyration", 3, _nested),
    Check("automorphic_inverse", 2, _automorphic_inverse),
    Check("left_cancellation", 2, _left_cancellation),
)

_BY_NAME = {c.name: c for c in AXIOM_CHECKS + DERIVED_CHECKS}


def _counterexample(r, check, indices, xs, tol):
    lhs, rhs = _safe_sides(r, check, xs)
    _, residual = _safe_eq(r, lhs, rhs, tol)
    return {
        "sample_indices": list(indices),
        "inputs": [_render(r, x) for x in xs],
        "lhs": _render(r, lhs),
        "rhs": _render(r, rhs),
        "residual": numeric.format_scalar(residual),
    }


def _render(r, x):
    return None if x is None else r.render(x)


def _safe_sides(r, check, xs):
    try:
        return check.sides(r, *xs)
    except (ValueError, ZeroDivisionError):
        # an operation left the carrier; counts as a failure
        return None, None


def _safe_eq(r, lhs, rhs, tol):
    if lhs is None or rhs is None:
        return False, _UNDEFINED
    return r.eq(lhs, rhs, tol)


# residual reported when one side is undefined
_UNDEFINED = float("inf")


def _element_indices(sample_index: int, arity: int) -> list[int]:
    return [sample_index * arity + j for j in range(arity)]


def run_check(r: Realization, check: Check, seed: int, samples: int, tol: Tolerance) -> CheckRecord:
    """Run one check over ``samples`` sampled tuples, or all tuples on a finite carrier."""
    rec = CheckRecord(check.name)
    if r.elements is not None:
        for i, xs in enumerate(itertools.product(r.elements, repeat=check.arity)):
            lhs, rhs = _safe_sides(r, check, xs)
            ok, res = _safe_eq(r, lhs, rhs, tol)
            _accumulate(rec, r, check, ok, res, lambda: (list(xs), xs), tol)
        return rec
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if r.vectorized:
        base = np.arange(samples, dtype=np.int64) * check.arity
        xs = [r.sample_many(seed, base + j) for j in range(check.arity)]
        try:
            lhs, rhs = check.sides(r, *xs)
        except (ValueError, ZeroDivisionError):
            return _run_scalar(r, check, seed, samples, tol)
        ok, res = r.eq(lhs, rhs, tol)
        ok = np.broadcast_to(ok, (samples,))
        res = np.broadcast_to(res, (samples,))
        rec.samples_run = samples
        rec.failures = int(np.count_nonzero(~ok))
        rec.max_residual = float(res.max())
        if rec.failures:
            i = int(np.flatnonzero(~ok)[0])
            idx = _element_indices(i, check.arity)
            rec.first_counterexample = _counterexample(
                r, check, idx, [r.sample(seed, k) for k in idx], tol
            )
        return rec
    return _run_scalar(r, check, seed, samples, tol)


def _run_scalar(r, check, seed, samples, tol) -> CheckRecord:
    rec = CheckRecord(check.name)
    for i in range(samples):
        idx = _element_indices(i, check.arity)
        xs = [r.sample(seed, k) for k in idx]
        lhs, rhs = _safe_sides(r, check, xs)
        ok, res = _safe_eq(r, lhs, rhs, tol)
        _accumulate(rec, r, check, ok, res, lambda: (idx, xs), tol)
    return rec


def _accumulate(rec, r, check, ok, res, witness, tol):
    rec.samples_run += 1
    if res > rec.max_residual:
        rec.max_residual = res
    if not ok:
        rec.failures += 1
        if rec.first_counterexample is None:
            idx, xs = witness()
            rec.first_counterexample = _counterexample(r, check, idx, xs, tol)


def _check_g3_uniqueness(r: Realization) -> CheckRecord:
    """On a finite carrier: exactly one X solves a(+)(b(+)c) = (a(+)b)(+)X."""
    rec = CheckRecord("G3_uniqueness")
    elems = r.elements
    for a, b, c in itertools.product(elems, repeat=3):
        rec.samples_run += 1
        target = r.op(a, r.op(b, c))
        ab = r.op(a, b)
        solutions = [x for x in elems if r.op(ab, x) == target]
        if len(solutions) != 1:
            rec.failures += 1
            rec.max_residual = 1
            if rec.first_counterexample is None:
                rec.first_counterexample = {
                    "inputs": [a, b, c],
                    "target": target,
                    "solutions": solutions,
                }
    return rec


def checks_for(r: Realization) -> list[Check]:
    return [*AXIOM_CHECKS, *DERIVED_CHECKS, *r.extra_checks()]


def check_G1(r, samples, seed=0, tol=DEFAULT_TOLERANCE):
    return run_check(r, _BY_NAME["G1_left_identity"], seed, samples, tol)


def check_G2(r, samples, seed=0, tol=DEFAULT_TOLERANCE):
    return run_check(r, _BY_NAME["G2_left_inverse"], seed, samples, tol)


def check_G3(r, samples, seed=0, tol=DEFAULT_TOLERANCE):
    return run_check(r, _BY_NAME["G3_left_gyroassociative"], seed, samples, tol)


def check_G4(r, samples, seed=0, tol=DEFAULT_TOLERANCE):
    """Automorphism and bijectivity (through the inverse gyration)."""
    return [
        run_check(r, _BY_NAME["G4_automorphism"], seed, samples, tol),
        run_check(r, _BY_NAME["G4_inverse_gyration"], seed, samples, tol),
    ]


def check_G5(r, samples, seed=0, tol=DEFAULT_TOLERANCE):
    return run_check(r, _BY_NAME["G5_left_loop"], seed, samples, tol)


def check_G6(r, samples, seed=0, tol=DEFAULT_TOLERANCE):
    return run_check(r, _BY_NAME["G6_gyrocommutative"], seed, samples, tol)


def check_derived_identities(r, samples, seed=0, tol=DEFAULT_TOLERANCE):
    return [run_check(r, c, seed, samples, tol) for c in DERIVED_CHECKS]


def run_suite(
    r: Realization, seed: int = 0, samples: int = 10_000, tol: Tolerance = DEFAULT_TOLERANCE
) -> AxiomReport:
    if samples < 1:
        raise ValueError("samples must be at least 1")
    report = AxiomReport(r.name, seed, samples, tol)
    for check in checks_for(r):
        report.records.append(run_check(r, check, seed, samples, tol))
    if r.elements is not None:
        report.records.insert(3, _check_g3_uniqueness(r))
    return report


def evaluate(r: Realization, check_name: str, *xs, tol: Tolerance = DEFAULT_TOLERANCE):
    """Residual of one named check on explicit elements."""
    check = {c.name: c for c in checks_for(r)}[check_name]
    if len(xs) != check.arity:
        raise ValueError(f"{check_name} takes {check.arity} elements, got {len(xs)}")
    lhs, rhs = _safe_sides(r, check, xs)
    return _safe_eq(r, lhs, rhs, tol)[1]


def replay(r: Realization, check_name: str, seed: int, counterexample: dict, tol=DEFAULT_TOLERANCE):
    """Recompute the residual of a recorded counterexample."""
    if r.elements is not None:
        xs = counterexample["inputs"]
    else:
        xs = [r.sample(seed, k) for k in counterexample["sample_indices"]]
    return evaluate(r, check_name, *xs, tol=tol)
