import pytest

from src.app.core.config import Limits
from src.app.core.exceptions.graph_exceptions import CapExceeded
from src.app.graphs.recognition import (
    fan_holes,
    find_cap,
    find_even_hole,
    has_triangle,
    holes,
    induced_path,
    is_cube,
    is_fan,
    near_clique,
    recognize,
    universal_node,
)

from .helpers import generators


def test_even_hole_in_c4() -> None:
    report = recognize(generators.cycle(4))
    assert report.even_hole == (0, 1, 2, 3)
    assert not report.in_class


def test_c5_is_in_class() -> None:
    report = recognize(generators.cycle(5))
    assert report.even_hole is None
    assert report.cap is None
    assert report.in_class
    assert not report.has_triangle


def test_cap_is_reported() -> None:
    g = generators.cap_graph()
    assert find_even_hole(g) is None
    assert find_cap(g) == ((0, 1, 2, 3, 4), 5)
    assert not recognize(g).in_class


def test_holes_are_sorted_and_capped() -> None:
    g = generators.fan(7, [1, 4, 7])
    found = holes(g)
    assert [len(c) for c in found] == [5, 5]
    with pytest.raises(CapExceeded):
        holes(g, Limits(hole_search_cap=7))


def test_cube() -> None:
    g = generators.cube()
    assert is_cube(g)
    assert find_even_hole(g) is not None
    assert not is_cube(generators.cycle(8))


def test_triangles() -> None:
    assert has_triangle(generators.clique(3))
    assert not has_triangle(generators.cycle(5))


def test_induced_path() -> None:
    assert induced_path(generators.path(4), 0b1111) == [0, 1, 2, 3]
    assert induced_path(generators.cycle(4), 0b1111) is None
    assert induced_path(generators.path(4), 0b0001) is None


def test_fan_and_its_holes() -> None:
    g = generators.fan(7, [1, 4, 7])
    assert is_fan(g) is not None
    assert fan_holes(g, (0, 7, 6)) == [0b10001111, 0b11111000]
    assert is_fan(generators.cube()) is None


def test_near_clique_and_universal_node() -> None:
    assert near_clique(generators.clique(4))
    assert near_clique(generators.path(4))
    assert not near_clique(generators.cycle(5))
    assert universal_node(generators.path(3)) == 1
    assert universal_node(generators.cycle(4)) is None
