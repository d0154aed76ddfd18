from fractions import Fraction

import pytest

from src.app.core.config import Limits
from src.app.core.exceptions.polytope_exceptions import BlowUpGuard, SpaceMismatch
from src.app.polytope.formulation import Relation, fix, leaf_formulation, make_row
from src.app.polytope.lp import contains, lp_max
from src.app.polytope.projection import fm_project

from .helpers import generators


def keys(f) -> set:
    return {row.key for row in f.rows}


def test_edge_projects_to_its_facets() -> None:
    f = fm_project(leaf_formulation(generators.path(2)))
    assert f.variables == ("x_1", "x_2")
    assert not f.extra
    assert keys(f) == {
        make_row({"x_1": 1, "x_2": 1}, Relation.LE, 1).key,
        make_row({"x_1": -1}).key,
        make_row({"x_2": -1}).key,
    }


def test_hole_inequality_appears() -> None:
    g = generators.cycle(5)
    f = fm_project(leaf_formulation(g))
    names = f.original
    assert make_row(dict.fromkeys(names, 1), Relation.LE, 2).key in keys(f)
    assert lp_max(f, [1] * 5) == 2
    assert not contains(f, [Fraction(1, 2)] * 5)


def test_equalities_survive() -> None:
    f = fm_project(fix(leaf_formulation(generators.path(2)), {"x_1": 0}))
    assert make_row({"x_1": 1}, Relation.EQ, 0).key in keys(f)
    assert lp_max(f, [1, 1]) == 1


def test_keep_must_be_known() -> None:
    with pytest.raises(SpaceMismatch):
        fm_project(leaf_formulation(generators.path(2)), keep=["x_9"])


def test_guard_stops_large_eliminations() -> None:
    with pytest.raises(BlowUpGuard):
        fm_project(leaf_formulation(generators.cycle(5)), limits=Limits(fm_guard=2))
