import pytest
from hypothesis import settings

from rmdirac.model import PhysicalContext, PotentialParams

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def sample_params():
    # reference well: Mc^2 = 5, hbar c = 1, V1 = 3, V2 = 1, alpha = 0.5, alpha r_e = 1
    return PotentialParams(3.0, 1.0, 0.5, 2.0)


@pytest.fixture
def sample_context():
    return PhysicalContext(5.0)


@pytest.fixture
def nu_branch_params():
    # repulsive-core well whose spin states for kappa = -2 lie on the NU polynomial branch
    return PotentialParams(-3.0, -1.0, 0.5, 2.0)
