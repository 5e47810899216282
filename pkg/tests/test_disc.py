import math

import pytest
from hypothesis import given

from gyro import disc
from gyro.disc import (
    DiscGyration,
    DiscPoint,
    apply_gyration,
    gyration,
    gyration_via_addition,
    mobius_add,
    mobius_neg,
    mobius_sub,
    mobius_transform,
)

from conftest import Q, rational_disc_points

H = Q(1, 2)
ONE_HALF = DiscPoint(H, 0)
I_HALF = DiscPoint(0, H)
ZERO = DiscPoint(0, 0)


def pt(re, im=0):
    return DiscPoint(re, im)


def test_construction_guards():
    with pytest.raises(ValueError):
        DiscPoint(1, 0)
    with pytest.raises(ValueError):
        DiscPoint(Q(3, 5), Q(4, 5))
    with pytest.raises(ValueError):
        DiscPoint(math.nan, 0.0)
    assert DiscPoint(0.5, 0).backend == "float"
    assert DiscPoint(H, 0).backend == "rational"


def test_mobius_add_examples():
    z = pt(Q(1, 3), Q(-1, 5))
    assert mobius_add(ZERO, z) == z
    assert mobius_add(ONE_HALF, ONE_HALF) == pt(Q(4, 5))
    assert mobius_add(I_HALF, ONE_HALF) == pt(Q(6, 17), Q(10, 17))
    # the operation is not commutative
    assert mobius_add(ONE_HALF, I_HALF) == pt(Q(10, 17), Q(6, 17))


def test_neg_and_sub_examples():
    assert mobius_neg(ZERO) == ZERO
    assert mobius_neg(ONE_HALF) == pt(-H)
    z = pt(Q(3, 5), Q(1, 5))
    assert mobius_add(mobius_neg(z), z) == ZERO
    assert mobius_sub(ONE_HALF, ONE_HALF) == ZERO
    assert mobius_sub(ONE_HALF, pt(Q(1, 4))) == pt(Q(2, 7))
    assert mobius_sub(ZERO, pt(0, Q(1, 3))) == pt(0, Q(-1, 3))


def test_mobius_transform_examples():
    a, z = pt(Q(1, 5), Q(1, 7)), pt(Q(-1, 3), Q(1, 2))
    assert mobius_transform(0, a, z) == mobius_add(a, z)
    assert mobius_transform(math.pi, ZERO, ONE_HALF) == pt(-H)
    assert mobius_transform(math.pi / 2, ONE_HALF, ONE_HALF) == pt(0, Q(4, 5))


def test_mobius_transform_float():
    w = mobius_transform(math.pi / 2, DiscPoint(0.5, 0.0), DiscPoint(0.5, 0.0))
    assert w.re == pytest.approx(0.0, abs=1e-15)
    assert w.im == pytest.approx(0.8, abs=1e-15)
    w = mobius_transform(0.3, DiscPoint(0.1, 0.2), DiscPoint(-0.4, 0.1))
    expected = complex(math.cos(0.3), math.sin(0.3)) * complex(mobius_add(DiscPoint(0.1, 0.2), DiscPoint(-0.4, 0.1)))
    assert complex(w) == pytest.approx(expected, abs=1e-15)


def test_mobius_transform_rational_rejects_irrational_angles():
    with pytest.raises(ValueError):
        mobius_transform(0.3, ONE_HALF, ONE_HALF)
    with pytest.raises(ValueError):
        mobius_transform(math.inf, DiscPoint(0.1, 0.0), DiscPoint(0.1, 0.0))


def test_gyration_examples():
    a = pt(Q(2, 5), Q(-1, 3))
    assert gyration(a, ZERO) == DiscGyration(1, 0)
    assert gyration(a, a) == DiscGyration(1, 0)
    g = gyration(ONE_HALF, I_HALF)
    assert g == DiscGyration(Q(15, 17), Q(-8, 17))
    assert g.g_re**2 + g.g_im**2 == 1


def test_apply_gyration_examples():
    z = pt(Q(1, 3), Q(1, 4))
    assert apply_gyration(DiscGyration(1, 0), z) == z
    w = apply_gyration(DiscGyration(Q(15, 17), Q(-8, 17)), ONE_HALF)
    assert w == pt(Q(15, 34), Q(-4, 17))
    assert w.abs_sq() == Q(1, 4)
    assert apply_gyration(DiscGyration(0, 1), ONE_HALF) == I_HALF


def test_gyration_via_addition_examples():
    z = pt(Q(1, 5), Q(2, 5))
    assert gyration_via_addition(ONE_HALF, ZERO, z) == z
    assert gyration_via_addition(ONE_HALF, I_HALF, ONE_HALF) == pt(Q(15, 34), Q(-4, 17))
    assert gyration_via_addition(ONE_HALF, ONE_HALF, pt(Q(1, 3))) == pt(Q(1, 3))


def test_disc_gyration_validation():
    with pytest.raises(ValueError):
        DiscGyration(Q(1, 2), 0)
    with pytest.raises(ValueError):
        DiscGyration(-1, 0)
    assert DiscGyration(Q(3, 5), Q(4, 5)).inverse() == DiscGyration(Q(3, 5), Q(-4, 5))


# exact invariants over random rational points


@given(rational_disc_points(), rational_disc_points())
def test_closure_and_automorphic_inverse(a, b):
    s = mobius_add(a, b)
    assert s.abs_sq() < 1
    assert mobius_neg(s) == mobius_sub(mobius_neg(a), b)


@given(rational_disc_points(), rational_disc_points())
def test_left_cancellation(a, z):
    assert mobius_add(mobius_neg(a), mobius_add(a, z)) == z


@given(rational_disc_points(), rational_disc_points())
def test_gyrocommutative_and_gyration_inverse(a, b):
    g = gyration(a, b)
    assert mobius_add(a, b) == apply_gyration(g, mobius_add(b, a))
    assert disc.compose(g, gyration(b, a)) == (1, 0)


@given(rational_disc_points(), rational_disc_points(), rational_disc_points())
def test_gyroassociative_laws(a, b, z):
    assert mobius_add(a, mobius_add(b, z)) == mobius_add(mobius_add(a, b), apply_gyration(gyration(a, b), z))
    assert mobius_add(mobius_add(a, b), z) == mobius_add(a, mobius_add(b, apply_gyration(gyration(b, a), z)))


@given(rational_disc_points(), rational_disc_points(), rational_disc_points(), rational_disc_points())
def test_gyration_respects_addition(a, b, c, d):
    g = gyration(a, b)
    assert apply_gyration(g, mobius_add(c, d)) == mobius_add(apply_gyration(g, c), apply_gyration(g, d))


@given(rational_disc_points(), rational_disc_points())
def test_loop_properties_and_nested_gyration(a, b):
    g = gyration(a, b)
    assert gyration(mobius_add(a, b), b) == g
    assert gyration(a, mobius_add(b, a)) == g
    assert gyration(b, mobius_neg(apply_gyration(gyration(b, a), a))) == g


@given(rational_disc_points(), rational_disc_points(), rational_disc_points())
def test_gyration_via_addition_matches(a, b, z):
    assert gyration_via_addition(a, b, z) == apply_gyration(gyration(a, b), z)


@given(rational_disc_points(), rational_disc_points())
def test_attainability(a, b):
    assert disc.gyration_denominator(a, b)[0] > 0
    assert gyration(a, b).g_re != -1


def test_find_half_turn_pair():
    a, b, g = disc.find_half_turn_pair(0.9)
    assert abs(complex(g) ** 2 + 1) <= 1e-9
    assert disc.gyration_denominator(a, b)[0] > 0
    with pytest.raises(ValueError):
        disc.find_half_turn_pair(0.5)
