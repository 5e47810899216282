import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gyro import ball, disc, numeric
from gyro.ball import (
    AmbientVector,
    BallParams,
    BallPoint,
    ball_add,
    ball_neg,
    ball_sub,
    from_disc,
    gyrate,
    gyrate_via_definition,
    gyration_coeffs,
    gyration_matrix,
    to_disc,
)
from gyro.disc import DiscPoint

from conftest import Q, rational_vectors

H = Q(1, 2)
UNIT2 = BallParams(2, 1, "rational")


def bp(*coords, params=UNIT2):
    return BallPoint(coords, params)


def amb(*coords, params=UNIT2):
    return AmbientVector(coords, params)


def test_params_validation():
    with pytest.raises(ValueError):
        BallParams(0, 1)
    with pytest.raises(ValueError):
        BallParams(2, 0)
    with pytest.raises(ValueError):
        BallParams(2, -1, "rational")
    with pytest.raises(ValueError):
        BallParams(2, math.inf)
    assert BallParams(2, "1/2", "rational").s == Q(1, 2)


def test_point_guards():
    with pytest.raises(ValueError):
        bp(Q(3, 5), Q(4, 5))
    with pytest.raises(ValueError):
        bp(H)
    AmbientVector((5, 7), UNIT2)  # unrestricted


def test_ball_add_examples():
    v = bp(Q(1, 3), Q(-1, 7))
    assert ball_add(bp(0, 0), v) == v
    assert ball_add(bp(H, 0), bp(H, 0)) == bp(Q(4, 5), 0)
    assert ball_add(bp(0, H), bp(H, 0)) == bp(Q(6, 17), Q(10, 17))
    assert ball_add(bp(H, 0), bp(0, H)) == bp(Q(10, 17), Q(6, 17))


def test_neg_sub_examples():
    u, v = bp(H, 0), bp(0, H)
    assert ball_sub(u, u) == bp(0, 0)
    assert ball_neg(bp(Q(3, 5), 0)) == bp(Q(-3, 5), 0)
    assert ball_add(ball_neg(u), ball_add(u, v)) == v


def test_params_mismatch():
    u = bp(H, 0)
    other = BallPoint((H, 0), BallParams(2, 2, "rational"))
    with pytest.raises(ValueError):
        ball_add(u, other)
    with pytest.raises(ValueError):
        gyrate(u, u, AmbientVector((1, 0), BallParams(2, 2, "rational")))


def test_gyration_coeffs_examples():
    k = gyration_coeffs(bp(H, 0), bp(0, H), amb(H, 0))
    assert (k.A, k.B, k.D) == (Q(-1, 16), Q(-1, 4), Q(17, 16))
    s = Q(2)
    p = BallParams(3, s, "rational")
    u, w = BallPoint((Q(1, 3), Q(1, 2), 0), p), AmbientVector((1, -2, 5), p)
    zero = ball.zero(p)
    k = gyration_coeffs(u, zero, w)
    assert (k.A, k.B, k.D) == (0, -numeric.inner(u.coords, w.coords) / s**2, 1)
    k = gyration_coeffs(zero, u, w)
    assert (k.A, k.B, k.D) == (numeric.inner(u.coords, w.coords) / s**2, 0, 1)


def test_gyrate_examples():
    u, w = bp(Q(1, 3), Q(1, 5)), amb(3, -1)
    assert gyrate(u, bp(0, 0), w) == w
    assert gyrate(bp(H, 0), bp(0, H), amb(H, 0)) == amb(Q(15, 34), Q(-4, 17))
    assert gyrate(u, u, w) == w
    # a BallPoint argument gives a BallPoint back
    assert gyrate(bp(H, 0), bp(0, H), bp(H, 0)) == bp(Q(15, 34), Q(-4, 17))


def test_gyrate_via_definition_examples():
    u, v, z = bp(Q(1, 3), Q(1, 5)), bp(Q(-1, 4), Q(1, 2)), bp(Q(2, 7), 0)
    assert gyrate_via_definition(u, v, bp(0, 0)) == bp(0, 0)
    assert gyrate_via_definition(bp(H, 0), bp(0, H), bp(H, 0)) == bp(Q(15, 34), Q(-4, 17))
    assert gyrate_via_definition(bp(0, 0), v, z) == z


def test_gyration_matrix_examples():
    u = bp(Q(1, 3), Q(1, 5))
    ident = ((1, 0), (0, 1))
    assert gyration_matrix(u, bp(0, 0)) == ident
    assert gyration_matrix(u, u) == ident
    m = gyration_matrix(bp(H, 0), bp(0, H))
    assert m == ((Q(15, 17), Q(8, 17)), (Q(-8, 17), Q(15, 17)))
    assert m == ball.gyration_from_disc(disc.gyration(DiscPoint(H, 0), DiscPoint(0, H)))


def test_disc_correspondence_examples():
    assert from_disc(DiscPoint(H, 0)) == bp(H, 0)
    z = DiscPoint(Q(6, 17), Q(10, 17))
    assert to_disc(from_disc(z)) == z
    a, b = DiscPoint(H, 0), DiscPoint(0, H)
    assert from_disc(disc.mobius_add(a, b)) == ball_add(from_disc(a), from_disc(b)) == bp(Q(10, 17), Q(6, 17))


def test_to_disc_requires_unit_plane():
    with pytest.raises(ValueError):
        to_disc(BallPoint((H, 0, 0), BallParams(3, 1, "rational")))
    with pytest.raises(ValueError):
        to_disc(BallPoint((H, 0), BallParams(2, 2, "rational")))


# exact properties

DIMS = [1, 2, 3, 5]
RADII = [Fraction(1, 2), Fraction(1), Fraction(10)]


def _pts(data, dim, s, n):
    p = BallParams(dim, s, "rational")
    return [BallPoint(data.draw(rational_vectors(dim, s)), p) for _ in range(n)], p


@pytest.mark.parametrize("dim", DIMS)
@pytest.mark.parametrize("s", RADII)
@given(data=st.data())
def test_exact_ball_properties(dim, s, data):
    (u, v, a, b), p = _pts(data, dim, s, 4)
    w = AmbientVector(data.draw(rational_vectors(dim, s, inside=False)), p)
    s2 = p.s_sq
    # closure, D > 0
    assert numeric.norm_sq(ball_add(u, v).coords) < s2
    assert gyration_coeffs(u, v, w).D > 0
    # invertibility and inner-product preservation
    assert gyrate(v, u, gyrate(u, v, w)) == w
    assert numeric.inner(gyrate(u, v, a).coords, gyrate(u, v, w).coords) == numeric.inner(a.coords, w.coords)
    assert numeric.norm_sq(gyrate(u, v, w).coords) == numeric.norm_sq(w.coords)
    # automorphism and closed form = definition
    assert gyrate(u, v, ball_add(a, b)) == ball_add(gyrate(u, v, a), gyrate(u, v, b))
    assert gyrate(u, v, a) == gyrate_via_definition(u, v, a)


@pytest.mark.parametrize("dim", [2, 3])
@given(data=st.data(), alpha=st.fractions(max_denominator=9), beta=st.fractions(max_denominator=9))
def test_gyrate_is_linear(dim, data, alpha, beta):
    (u, v), p = _pts(data, dim, Fraction(1), 2)
    w1 = data.draw(rational_vectors(dim, inside=False))
    w2 = data.draw(rational_vectors(dim, inside=False))
    al, be = Q(alpha.numerator, alpha.denominator), Q(beta.numerator, beta.denominator)
    combo = AmbientVector(tuple(al * x + be * y for x, y in zip(w1, w2)), p)
    g1, g2 = gyrate(u, v, AmbientVector(w1, p)), gyrate(u, v, AmbientVector(w2, p))
    assert gyrate(u, v, combo).coords == tuple(al * x + be * y for x, y in zip(g1.coords, g2.coords))


@pytest.mark.parametrize("dim", [1, 2, 3])
@given(data=st.data())
def test_gyration_matrix_orthogonal_and_not_minus_identity(dim, data):
    (u, v), p = _pts(data, dim, Fraction(1), 2)
    m = gyration_matrix(u, v)
    for i in range(dim):
        for j in range(dim):
            assert sum(m[k][i] * m[k][j] for k in range(dim)) == (1 if i == j else 0)
    assert sum(m[i][i] for i in range(dim)) > -dim


@given(data=st.data())
def test_disc_consistency(data):
    from conftest import rational_disc_points

    a, b, z = (data.draw(rational_disc_points()) for _ in range(3))
    assert from_disc(disc.mobius_add(a, b)) == ball_add(from_disc(a), from_disc(b))
    assert from_disc(disc.apply_gyration(disc.gyration(a, b), z)) == gyrate(from_disc(a), from_disc(b), from_disc(z))


def test_one_dimensional_gyrations_are_trivial():
    p = BallParams(1, 1, "rational")
    u, v, w = BallPoint((Q(1, 3),), p), BallPoint((Q(-2, 3),), p), AmbientVector((Q(5),), p)
    assert gyrate(u, v, w) == w
    assert ball_add(u, v) == ball_add(v, u)


def test_float_batches_match_scalars():
    rng = np.random.default_rng(0)
    xs = rng.uniform(-0.4, 0.4, size=(3, 2, 16))
    p = BallParams(2, 1.0)
    batch = [BallPoint(tuple(x), p) for x in xs]
    out = gyrate(*batch)
    for k in range(16):
        single = [BallPoint(tuple(float(c) for c in x[:, k]), p) for x in xs]
        assert gyrate(*single).coords == tuple(float(c[k]) for c in out.coords)


def test_limit_scan_second_order():
    rows = ball.limit_scan((1.0, 0.0), (1.0, 0.0), ball.default_radii())
    ratios = [r["ratio"] for r in rows[:-1]]
    assert len(ratios) == 10
    assert all(3.5 <= q <= 4.5 for q in ratios)
    # e(s) = 2 / (s^2 + 1) in closed form for u = v = (1, 0)
    for r in rows:
        assert r["error"] == pytest.approx(2 / (r["s"] ** 2 + 1), rel=1e-6)


@pytest.mark.parametrize("v", [(0.0, 0.0), (-1.0, 0.0)])
def test_limit_scan_exact_cases(v):
    rows = ball.limit_scan((1.0, 0.0), v, ball.default_radii())
    assert all(r["error"] == 0 for r in rows)
    assert all(r["ratio"] is None for r in rows)
