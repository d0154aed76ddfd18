from fractions import Fraction

import pytest

from src.app.core.config import Limits
from src.app.core.exceptions.decomposition_exceptions import NotInClass
from src.app.core.exceptions.graph_exceptions import CapExceeded
from src.app.graphs.oracle import mwss_brute
from src.app.polytope.builder import FormulationRun, build_formulation, summary
from src.app.polytope.lp import contains, lp_max

from .helpers import generators


def prism():
    return generators.from_edges(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (1, 4), (2, 5), (3, 6)])


def test_cube_is_a_leaf() -> None:
    f = build_formulation(generators.cube())
    assert lp_max(f, [1] * 8) == 4
    info = summary(f)
    assert info["original"] == 8
    assert info["auxiliary"] == info["variables"] - 8
    assert info["node_extra"] == 0
    assert info["size"] == info["variables"] + info["rows"]


def test_clique_cutsets_are_split() -> None:
    run = FormulationRun(Limits(leaf_cap=3))
    f = build_formulation(generators.path(9), run=run)
    assert lp_max(f, [1] * 9) == 5
    assert any(line.startswith("clique cutset") for line in run.history)


def test_triangle_free_pieces_use_templates() -> None:
    g = generators.c5_with_pendant()
    run = FormulationRun(Limits(leaf_cap=3))
    f = build_formulation(g, run=run)
    assert any(line.startswith("template list") for line in run.history)
    assert lp_max(f, [1] * 6) == 3
    # x(C5) = 5/2 breaks the hole inequality
    assert not contains(f, [Fraction(1, 2)] * 6)
    # average of {2, 4, 6} and {3, 5, 6}
    assert contains(f, [0, Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), 1])


def test_amalgams_are_composed() -> None:
    g = generators.amalgam_without_cutset()
    run = FormulationRun(Limits(leaf_cap=6))
    f = build_formulation(g, run=run)
    assert any(line.startswith("amalgam") for line in run.history)
    w = generators.random_weights(7)
    assert lp_max(f, w) == mwss_brute(g, w)[0]


def test_graphs_without_a_rule_are_rejected(mocker) -> None:
    mocker.patch("src.app.polytope.builder.find_amalgam", return_value=None)
    with pytest.raises(NotInClass) as info:
        build_formulation(prism(), Limits(leaf_cap=3))
    assert "no rule applies" in info.value.message


def test_amalgam_search_failures_are_reported(mocker) -> None:
    mocker.patch("src.app.polytope.builder.find_amalgam", side_effect=CapExceeded("too many pairs"))
    with pytest.raises(NotInClass) as info:
        build_formulation(prism(), Limits(leaf_cap=3))
    assert "amalgam search failed" in info.value.message


def test_templates_without_a_fan_base_stay_leaves() -> None:
    g = generators.ear_graph()
    run = FormulationRun(Limits(leaf_cap=3))
    f = build_formulation(g, run=run)
    assert any(line.startswith("template list") for line in run.history)
    assert any("kept as an enumerated leaf" in line for line in run.history)
    assert lp_max(f, [1] * 10) == mwss_brute(g, [1] * 10)[0]
    for _ in range(3):
        w = generators.random_weights(10)
        assert lp_max(f, w) == mwss_brute(g, w)[0]


def test_small_graphs_are_decomposed_before_enumeration() -> None:
    run = FormulationRun(Limits())
    f = build_formulation(generators.path(5), run=run)
    assert any(line.startswith("clique cutset") for line in run.history)
    assert lp_max(f, [1] * 5) == 3
