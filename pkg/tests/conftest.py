import math
from fractions import Fraction

import gmpy2
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from gyro.disc import DiscPoint

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def Q(p, q=1):
    return gmpy2.mpq(p, q)


@st.composite
def rational_disc_points(draw, den=64):
    """Exact points p/den + i q/den strictly inside the unit disc."""
    lim = den - 1
    p = draw(st.integers(-lim, lim))
    q = draw(st.integers(-lim, lim).filter(lambda q: p * p + q * q < den * den))
    return DiscPoint(Q(p, den), Q(q, den))


@st.composite
def rational_vectors(draw, dim, s=Fraction(1), den=32, inside=True):
    """Coordinate tuples k/den * s; with ``inside`` the norm is < s.

    Interior points draw each coordinate within the remaining squared-norm
    budget, so no rejection is needed in high dimension.
    """
    ks = []
    budget = den * den - 1
    for _ in range(dim):
        lim = math.isqrt(budget) if inside else 3 * den
        k = draw(st.integers(-lim, lim))
        budget -= k * k
        ks.append(k)
    order = draw(st.permutations(range(dim)))
    s = Q(s.numerator, s.denominator)
    return tuple(Q(ks[i], den) * s for i in order)


@pytest.fixture
def half():
    return Q(1, 2)
