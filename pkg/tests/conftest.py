import numpy as np
import pytest
from hypothesis import settings

from cstardecay import COMPLEX, QUATERNIONS, Blocks, CStarMatrix, Functions

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def random_matrix(algebra, n, rng, density=1.0, scale=1.0):
    """Random CStarMatrix; ``density`` < 1 drops off-diagonal entries."""
    if algebra is QUATERNIONS:
        data = rng.standard_normal((n, n, 4))
    elif isinstance(algebra, Functions):
        t = algebra.nodes()
        c = rng.standard_normal((n, n, 3))
        data = c[..., :1] + c[..., 1:2] * t + 1j * c[..., 2:3] * np.cos(3 * t)
    else:
        shape = (n, n) + algebra.elem_shape
        data = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    pattern = rng.random((n, n)) < density
    pattern[np.arange(n), np.arange(n)] = True
    return CStarMatrix(algebra, scale * data, pattern)


def hermitian_part(A):
    return (A + A.adjoint()).scale(0.5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ALGEBRAS = [COMPLEX, Blocks(3), Functions(0.0, 1.0, 33), QUATERNIONS]


@pytest.fixture(params=ALGEBRAS, ids=["complex", "blocks3", "functions", "quaternions"])
def algebra(request):
    return request.param
