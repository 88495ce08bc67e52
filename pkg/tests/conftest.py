import pytest

from equitheta.models.group import cyclic_group
from equitheta.models.module import FinGroupRing
from equitheta.models.polynomial import FqPoly, Place
from equitheta.services.lfun import carlitz_model, constant_field_model


def place(q: int, text: str) -> Place:
    if text == "inf":
        return Place.infinity(q)
    return Place(q, FqPoly.parse(q, text))


@pytest.fixture
def carlitz_t():
    """Carlitz model q=3, m=t: G = F_3^x = <g> of order 2, sigma_{t+1} = 1, sigma_{t+2} = g."""
    return carlitz_model(3, FqPoly.t(3))


@pytest.fixture
def carlitz_s0():
    return (place(3, "inf"), place(3, "t"))


@pytest.fixture
def constant_q2_r2():
    return constant_field_model(2, 2)


@pytest.fixture
def affine_line():
    return constant_field_model(3, 1)


@pytest.fixture
def z9_c2():
    return FinGroupRing(cyclic_group(2), 3, 2)


@pytest.fixture
def z8_c2():
    return FinGroupRing(cyclic_group(2), 2, 3)


@pytest.fixture
def z8():
    return FinGroupRing(cyclic_group(), 2, 3)


@pytest.fixture
def z9():
    return FinGroupRing(cyclic_group(), 3, 2)
