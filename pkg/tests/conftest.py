import numpy as np
import pytest

from orthograph import AlgebraShape, Element


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def basis_element(shape, block, i, j):
    """Matrix unit E_ij supported in one block."""
    shape = shape if isinstance(shape, AlgebraShape) else AlgebraShape(shape)
    blocks = [np.zeros((n, n)) for n in shape.blocks]
    blocks[block][i, j] = 1.0
    return Element(shape, blocks)


def e11_m2():
    return basis_element([2], 0, 0, 0)


def e22_m2():
    return basis_element([2], 0, 1, 1)


def random_element(shape, rng):
    shape = shape if isinstance(shape, AlgebraShape) else AlgebraShape(shape)
    return Element(
        shape,
        [rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)) for n in shape.blocks],
    )
