import numpy as np
import pytest

from paravector.exterior import Multivector


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


def random_multivector(rng, scale=1.0):
    return Multivector(rng.normal(scale=scale, size=8))


def random_unit(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_frame(rng):
    """Orthonormal pair (u, v)."""
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    return q[:, 0], q[:, 1]
