from fractions import Fraction

import pytest

from src.app.core.exceptions.graph_exceptions import GraphParseError
from src.app.core.utils.dimacs import format_dimacs, parse_dimacs, parse_weights, read_graph, read_weights

from .helpers import generators


def test_parse_with_comments() -> None:
    g = parse_dimacs("c a path\np edge 3 2\ne 1 2\n\ne 3 2\n")
    assert g.n == 3
    assert g.edges() == [(0, 1), (1, 2)]
    assert g.names(g.full) == ["1", "2", "3"]


def test_format_is_read_back() -> None:
    g = generators.cycle(5)
    text = format_dimacs(g, "five")
    assert text.splitlines()[:2] == ["c five", "p edge 5 5"]
    assert parse_dimacs(text).edges() == g.edges()


@pytest.mark.parametrize(
    ("text", "message"),
    [
        ("e 1 2\n", "before the problem line"),
        ("p edge 2 1\np edge 2 1\n", "repeated"),
        ("p edge two 1\n", "integers"),
        ("p edge 2 1\ne 1 3\n", "out of range"),
        ("p edge 2 1\ne 1 1\n", "loop"),
        ("p edge 2 1\nx 1 2\n", "unknown line type"),
        ("p edge 3 3\ne 1 2\n", "announces 3 edges"),
        ("c nothing\n", "Missing problem line"),
    ],
)
def test_parse_errors(text: str, message: str) -> None:
    with pytest.raises(GraphParseError) as info:
        parse_dimacs(text)
    assert message in info.value.message


def test_weights() -> None:
    assert parse_weights("3\n-2\n3/2\n0.5\n", 4) == (3, -2, Fraction(3, 2), Fraction(1, 2))
    with pytest.raises(GraphParseError):
        parse_weights("1\n2\n", 3)
    with pytest.raises(GraphParseError):
        parse_weights("1\nabc\n", 2)


def test_read_files(fixtures, tmp_path) -> None:
    g = read_graph(fixtures / "c5.col")
    assert g.n == 5
    assert read_weights(None, 3) == (1, 1, 1)
    assert len(read_weights(fixtures / "c5.w", g.n)) == 5
    with pytest.raises(GraphParseError):
        read_graph(tmp_path / "missing.col")
