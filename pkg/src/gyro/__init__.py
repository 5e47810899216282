"""Möbius gyrogroups on the unit disc and the s-ball, with an axiom checker."""

from .ball import (
    AmbientVector,
    BallParams,
    BallPoint,
    GyrationCoefficients,
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
from .disc import (
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
from .numeric import DEFAULT_TOLERANCE, Tolerance, approx_eq, inner, norm_sq

__version__ = "0.1.0"
