"""Shared fixtures and hypothesis configuration for the test suite."""

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

# mpmath operations at a few hundred bits are fast but not microsecond-fast;
# disable the wall-clock deadline so property tests never flake on load.
settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    max_examples=30,
)
settings.load_profile("default")


@pytest.fixture
def generic_curve():
    """A rational sextic model with no split (2,2)-quotients."""
    from g2modpoly.g2curve import Genus2Curve

    return Genus2Curve(tuple(Fraction(c) for c in (-2, 3, 1, -1, 0, 2, 1)))


@pytest.fixture
def bielliptic_curve():
    """y^2 = (x^2-1)(x^2-4)(x^2-9): every quadratic factor is even, so the
    fully even kernel triple has vanishing delta (a split quotient)."""
    from g2modpoly.g2curve import Genus2Curve

    return Genus2Curve(tuple(Fraction(c) for c in (-36, 0, 49, 0, -14, 0, 1)))
