import pathlib

import pytest

from mmcomm.graph import GraphInstance

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"

# path a-b-c-d as vertices 0-1-2-3, edges ab=0, bc=1, cd=2
P4_EDGES = ((0, 1), (1, 2), (2, 3))
P4_SIGMA = (3, 1, 2, 4)  # b=1, c=2, a=3, d=4
P6_EDGES = tuple((i, i + 1) for i in range(5))


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def tight():
    return GraphInstance(4, P4_EDGES, opt=(0, 2), adversary=(1,), sigma=P4_SIGMA)


@pytest.fixture
def p6():
    return GraphInstance(6, P6_EDGES, opt=(0, 2, 4), adversary=(1, 3))
