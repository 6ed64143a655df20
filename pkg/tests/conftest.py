import numpy as np
import pytest

from cfpc.pilots import PilotAssignment


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_beta(rng, m, k, lo_exp=-13.0, hi_exp=-9.0):
    """Log-uniform channel gains spanning the realistic dynamic range."""
    return 10.0 ** rng.uniform(lo_exp, hi_exp, size=(m, k))


def assignment_of(pilots, tau_p):
    return PilotAssignment(pilot_of=np.asarray(pilots), tau_p=tau_p)
