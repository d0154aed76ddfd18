from fractions import Fraction

import pytest

from src.app.core.exceptions.decomposition_exceptions import DNotMonotone, DomainMismatch, UnresolvedSigma
from src.app.decomposition.solver import (
    brute_leaf,
    chvatal_list,
    check_service_table,
    patch_master_template,
    root_map,
    solve_chvatal,
    solve_list,
    solve_servant,
)
from src.app.graphs.core import popcount, weight_of
from src.app.graphs.oracle import mwss_brute
from src.app.graphs.templates import RootedTemplate, ServiceTable, constant_table

from .helpers import generators


def test_template_list_value_and_witness() -> None:
    solution = solve_list(generators.path3_template_step())
    assert solution.value() == 2
    assert solution.witness() == 0b101
    assert solution.tables[1].values == {0: 1, 0b10: 0}


def test_linearized_list_value_and_witness() -> None:
    solution = solve_list(generators.path5_linearized_step())
    assert solution.value() == 3
    assert solution.witness() == 0b10101


def test_root_map_of_a_servant() -> None:
    assert root_map(generators.path3_template_step(), 1) == {1: 1}
    assert root_map(generators.path3_template_step(), 0) == {}


def test_master_waits_for_its_servant() -> None:
    master = generators.path3_template_step().nodes[0].template
    with pytest.raises(UnresolvedSigma):
        solve_servant(master, (Fraction(1), Fraction(1)), brute_leaf())


def test_patch_needs_a_waiting_region() -> None:
    with pytest.raises(DomainMismatch):
        patch_master_template(RootedTemplate(generators.path(2)), constant_table(generators.path(1), 1), 5)


def test_patch_checks_the_servant_root() -> None:
    master = generators.path3_template_step().nodes[0].template
    with pytest.raises(DomainMismatch):
        patch_master_template(master, constant_table(generators.path(2), 0b01), 1)


def test_service_tables_must_be_monotone() -> None:
    table = ServiceTable(generators.path(1), 1, {0: Fraction(0), 1: Fraction(1)})
    with pytest.raises(DNotMonotone):
        check_service_table(table)
    check_service_table(constant_table(generators.path(1), 1, Fraction(2)))


def test_chvatal_list_splits_a_path_into_short_pieces() -> None:
    lst = chvatal_list(generators.path(6), [Fraction(1)] * 6)
    assert len(lst) > 1
    assert all(node.template.graph.n <= 4 for node in lst.nodes)


@pytest.mark.parametrize("n", [5, 6, 7])
def test_clique_cutset_solver_matches_enumeration(n: int) -> None:
    for _ in range(4):
        g = generators.random_graph(n, 0.3)
        w = generators.random_weights(n)
        expected, _ = mwss_brute(g, w)
        solution = solve_chvatal(g, w)
        assert solution.value() == expected
        witness = solution.witness()
        assert g.is_stable(witness)
        assert weight_of(w, witness) == expected


def test_clique_cutset_solver_on_unit_weights() -> None:
    g = generators.cycle(5)
    solution = solve_chvatal(g, [Fraction(1)] * 5)
    assert solution.value() == 2
    assert popcount(solution.witness()) == 2
