import math

import pytest

from bellfield.phasor_optics import InterferometerConfig


@pytest.fixture
def max_visibility():
    """beta = 2 alpha: full fringe contrast at every detector."""
    return InterferometerConfig(alpha=1.0, beta=2.0, theta1=math.radians(60), theta2=0.0)


def deg(x):
    return math.radians(x)
