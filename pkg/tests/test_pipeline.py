from fractions import Fraction

import pytest

from src.app.core.config import Limits
from src.app.decomposition.engine import ListMode
from src.app.decomposition.pipeline import PipelineRun, linearized_list, solve_pipeline, solve_rooted
from src.app.graphs.core import weight_of
from src.app.graphs.oracle import mwss_brute, rooted_mwss_brute

from .helpers import generators

SMALL = Limits(leaf_cap=3)


def test_cube_has_four() -> None:
    solution = solve_pipeline(generators.cube(), [1] * 8)
    assert solution.value == 4
    assert solution.witness in (0b01101001, 0b10010110)


def test_single_node() -> None:
    solution = solve_pipeline(generators.path(1), [7])
    assert (solution.value, solution.witness) == (7, 1)


def test_weighted_c5() -> None:
    w = [Fraction(3), Fraction(1), Fraction(1), Fraction(3, 2), Fraction(2)]
    solution = solve_pipeline(generators.cycle(5), w)
    assert solution.value == Fraction(9, 2)
    assert solution.witness == 0b01001


def test_long_path_is_linearized() -> None:
    g = generators.path(9)
    solution = solve_pipeline(g, [1] * 9, SMALL)
    assert solution.value == 5
    assert solution.lists
    assert solution.lists[0].mode is ListMode.LINEARIZED01
    assert any("clique_cut" in line for line in solution.history)


def test_fan_goes_through_templates() -> None:
    g = generators.fan(10, [1, 4, 7, 10])
    w = generators.random_weights(g.n, low=0)
    solution = solve_pipeline(g, w, SMALL)
    assert solution.value == mwss_brute(g, w)[0]
    assert weight_of(w, solution.witness) == solution.value
    assert any(lst.mode is ListMode.TEMPLATE for lst in solution.lists)


def test_universal_node_is_set_aside() -> None:
    g = generators.from_edges(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)] + [(6, v) for v in range(1, 6)])
    run = PipelineRun(Limits(leaf_cap=2))
    table = solve_rooted(g, 0, [Fraction(1)] * 5 + [Fraction(3)], run)
    assert table[0] == 3
    assert any("universal" in line for line in run.history)


def test_rooted_tables_match_enumeration() -> None:
    g = generators.path(7)
    w = generators.random_weights(7)
    run = PipelineRun(SMALL)
    table = solve_rooted(g, 0b0001100, w, run)
    assert table.values == rooted_mwss_brute(g, 0b0001100, w).values


def test_linearized_list_records_its_history() -> None:
    run = PipelineRun(SMALL)
    lst = linearized_list(generators.path(6), 0, [Fraction(1)] * 6, run)
    assert len(lst) > 1
    assert len(run.history) == len(lst.steps)


@pytest.mark.parametrize("n", [5, 6])
def test_random_members_match_enumeration(n: int) -> None:
    for _ in range(3):
        g = generators.random_class_member(n)
        w = generators.random_weights(n)
        solution = solve_pipeline(g, w, SMALL)
        assert solution.value == mwss_brute(g, w)[0]
        assert g.is_stable(solution.witness)


@pytest.mark.parametrize("n", [8, 9, 11])
def test_grown_members_match_enumeration(n: int) -> None:
    for _ in range(3):
        g = generators.grown_class_member(n)
        w = generators.random_weights(n)
        solution = solve_pipeline(g, w, SMALL)
        assert solution.value == mwss_brute(g, w)[0]
        assert g.is_stable(solution.witness)


def test_template_masters_without_a_fan_base_are_enumerated() -> None:
    g = generators.ear_graph()
    for w in ([Fraction(1)] * g.n, generators.random_weights(g.n), generators.random_weights(g.n)):
        solution = solve_pipeline(g, w, SMALL)
        assert solution.value == mwss_brute(g, w)[0]
        assert g.is_stable(solution.witness)
    templates = [lst for lst in solution.lists if lst.mode is ListMode.TEMPLATE]
    assert templates and len(templates[0]) > 1
    assert any("kept as an enumerated leaf" in line for line in solution.history)


def test_leaf_cap_does_not_decide_membership() -> None:
    g = generators.ear_graph()
    w = generators.random_weights(g.n)
    values = {solve_pipeline(g, w, Limits(leaf_cap=cap)).value for cap in (2, 3, 4, 8)}
    assert values == {mwss_brute(g, w)[0]}


def test_amalgams_feed_the_linearized_list() -> None:
    g = generators.amalgam_without_cutset()
    run = PipelineRun(Limits(leaf_cap=6))
    lst = linearized_list(g, 0, [Fraction(1)] * g.n, run)
    assert len(lst) > 1
    assert run.history[0].startswith("one_lin at position 0")
    w = generators.random_weights(g.n)
    table = solve_rooted(g, 0, w, PipelineRun(Limits(leaf_cap=6)))
    assert table[0] == mwss_brute(g, w)[0]


def test_small_graphs_go_through_the_engine() -> None:
    solution = solve_pipeline(generators.path(5), [1] * 5)
    assert solution.value == 3
    assert any("clique_cut" in line for line in solution.history)


def test_adjacent_twins_are_linearized() -> None:
    # node 6 sees 1, 2 and 3 of the hole, so 2 and 6 are adjacent twins
    g = generators.from_edges(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (6, 1), (6, 2), (6, 3)])
    w = generators.random_weights(g.n)
    solution = solve_pipeline(g, w, Limits(leaf_cap=2))
    assert solution.value == mwss_brute(g, w)[0]
    assert solution.history[0].startswith("one_lin at position 0")


def test_random_members_are_never_substituted(mocker) -> None:
    mocker.patch("tests.helpers.generators.recognize", return_value=mocker.Mock(in_class=False))
    with pytest.raises(ValueError):
        generators.random_class_member(6, tries=3)
