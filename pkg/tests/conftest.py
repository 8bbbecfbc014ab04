import pytest

from penaltylogic.encoders import Graph
from penaltylogic.kb import parse_kb

PK1_TEXT = "inf a\n10 b | c\n5 !b\n7 !c\n"
INFERENCE_KB_TEXT = "inf a | b\n5 !a\n4 !a | !b\n2 b -> !c\n1 a -> c\n"


@pytest.fixture
def pk1():
    return parse_kb(PK1_TEXT)


@pytest.fixture
def pk2():
    return parse_kb("5 a\n3 a\n10 b\n")


@pytest.fixture
def pk3():
    return parse_kb("8 a\n10 b\n")


@pytest.fixture
def pk4():
    return parse_kb("18 a & b\n")


@pytest.fixture
def inference_kb():
    return parse_kb(INFERENCE_KB_TEXT)


@pytest.fixture
def five_vertex_graph():
    missing = {("a", "c"), ("a", "d"), ("a", "e"), ("b", "e"), ("c", "e")}
    vertices = "abcde"
    edges = [
        (x, y)
        for i, x in enumerate(vertices)
        for y in vertices[i + 1 :]
        if (x, y) not in missing
    ]
    return Graph.from_edges(vertices, edges)
