from fractions import Fraction

import pytest

from src.app.core.exceptions.decomposition_exceptions import NotGoodFan
from src.app.decomposition.fans import (
    apex_free_pieces,
    good_fan_base,
    is_good_fan_template,
    record_fan,
    solve_fan_template,
)
from src.app.graphs.core import Grouping, singletons
from src.app.graphs.oracle import rooted_mwss_brute, template_mwss_brute
from src.app.graphs.templates import RootedTemplate, ServiceTable, make_region

from .helpers import generators

FAN = generators.fan(7, [1, 4, 7])


def with_region(values: dict[int, int]) -> RootedTemplate:
    """The fan with a region on the path 2-3-4 inside its first hole."""
    grouping = singletons(0b1110)
    pattern = generators.path(3)
    sigma = ServiceTable(pattern, pattern.full, {k: Fraction(v) for k, v in values.items()})
    return RootedTemplate(FAN, 1 << 7, (make_region(FAN, grouping, sigma, tag="w"),))


def test_good_fan_base() -> None:
    # node 4 is a second apex: 3-2-1-8-7-6-5 is an induced path between its neighbors
    assert good_fan_base(RootedTemplate(FAN)) == (2, 3, 4)
    assert good_fan_base(RootedTemplate(FAN, 1 << 7)) == (0, 7, 6)
    assert not is_good_fan_template(RootedTemplate(FAN, 1 << 1))
    assert good_fan_base(RootedTemplate(generators.cube())) is None


def test_regions_must_sit_inside_a_hole() -> None:
    region = make_region(FAN, Grouping((1 << 2, 1 << 3, 1 << 4)))
    assert not is_good_fan_template(RootedTemplate(FAN, 1 << 7, (region,)))
    assert is_good_fan_template(with_region({0: 0, 1: 0, 2: 0, 4: 0, 5: 0}))


def test_rejects_a_template_without_a_base() -> None:
    with pytest.raises(NotGoodFan):
        solve_fan_template(RootedTemplate(generators.cube()), [Fraction(1)] * 8)


@pytest.mark.parametrize("root", [0, 1 << 7, 1 << 0 | 1 << 6, 1 << 0 | 1 << 7])
def test_fan_template_matches_enumeration(root: int) -> None:
    w = generators.random_weights(FAN.n)
    table = solve_fan_template(RootedTemplate(FAN, root), w)
    assert table.values == rooted_mwss_brute(FAN, root, w).values
    for key, witness in (table.witnesses or {}).items():
        assert FAN.is_stable(witness)
        assert witness & root == key


@pytest.mark.parametrize(
    "values",
    [
        {0: 3, 1: 2, 2: 2, 4: 1, 5: 0},
        {0: 0, 1: 2, 2: 1, 4: 0, 5: 3},
    ],
    ids=["monotone", "toggled"],
)
def test_regions_become_records(values: dict[int, int]) -> None:
    t = with_region(values)
    w = [Fraction(1)] * FAN.n
    recorded = record_fan(t, w)
    assert recorded.graph.n == FAN.n + 5
    assert solve_fan_template(t, w).values == template_mwss_brute(t, w).values


def test_apex_free_pieces_are_small() -> None:
    recorded = record_fan(RootedTemplate(FAN, 1 << 7), [Fraction(1)] * FAN.n)
    assert recorded.apex == 7
    assert sum(apex_free_pieces(recorded)) >= 7
