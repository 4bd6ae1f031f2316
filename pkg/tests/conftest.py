import numpy as np
import pytest

import einstein4 as e4


@pytest.fixture(scope="session")
def s4():
    return e4.round_sphere()


@pytest.fixture(scope="session")
def cp2():
    return e4.fubini_study()


@pytest.fixture(scope="session")
def s2xs2():
    return e4.sphere_product()


@pytest.fixture(scope="session")
def s4_tensor():
    return e4.RiemannTensor4.constant_curvature(1.0 / 3.0)


@pytest.fixture(scope="session")
def cp2_tensor(cp2):
    return e4.berger_to_tensor(cp2)


@pytest.fixture(scope="session")
def s2xs2_tensor():
    return e4.sphere_product_tensor()


@pytest.fixture(scope="session")
def sampled_forms():
    return e4.sample_admissible(seed=101, count=1000)


def ricci_by_loops(rm):
    """Independent Ricci oracle: explicit summation, no einsum."""
    r = rm.components
    ric = np.zeros((4, 4))
    for j in range(4):
        for l in range(4):
            ric[j, l] = sum(r[i, j, i, l] for i in range(4))
    return ric


def kn_by_loops(h, k):
    """Independent Kulkarni-Nomizu oracle: definition expanded index by index."""
    out = np.zeros((4, 4, 4, 4))
    for i in range(4):
        for j in range(4):
            for a in range(4):
                for b in range(4):
                    out[i, j, a, b] = (h[i, a] * k[j, b] + h[j, b] * k[i, a]
                                       - h[i, b] * k[j, a] - h[j, a] * k[i, b])
    return out
