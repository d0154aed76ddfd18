"""Oracle comparisons at scale. Deselected by default; run with ``pytest -m slow``."""

from fractions import Fraction
from functools import cache

import networkx as nx
import pytest

from src.app.core.config import Limits
from src.app.core.exceptions.decomposition_exceptions import StructuralConditionFailed
from src.app.decomposition.engine import assert_bounds
from src.app.decomposition.fans import apex_free_pieces, record_fan, solve_fan_template
from src.app.decomposition.linearize import (
    linearizable_by_one_node,
    linearize_from_table,
    verify_linearization,
    via_grouping,
)
from src.app.decomposition.pipeline import solve_pipeline
from src.app.graphs.core import Graph, Grouping, bits, enumerate_stable_sets, mask_of, pattern_graph
from src.app.graphs.oracle import mwss_brute, template_mwss_brute
from src.app.graphs.recognition import recognize
from src.app.graphs.separation import amalgam
from src.app.graphs.templates import ServiceTable
from src.app.polytope.builder import build_formulation
from src.app.polytope.composition import amalgam_blocks, amalgam_compose, burlet_fonlupt_eliminate
from src.app.polytope.formulation import leaf_formulation
from src.app.polytope.lp import contains, lp_max
from src.app.polytope.projection import fm_project

from .conftest import fake
from .helpers import generators

pytestmark = pytest.mark.slow

SMALL = Limits(leaf_cap=3)


@cache
def atlas_members() -> tuple[Graph, ...]:
    """Connected cap-free graphs without even holes on 1 to 7 nodes, one per isomorphism class."""
    graphs = (generators.from_networkx(h) for h in nx.graph_atlas_g()[1:] if nx.is_connected(h))
    return tuple(g for g in graphs if recognize(g).in_class)


def weight_vectors(n: int, count: int) -> list:
    return [[Fraction(1)] * n] + [generators.random_weights(n) for _ in range(count)]


def check_solution(g: Graph, w) -> None:
    solution = solve_pipeline(g, w, SMALL)
    assert solution.value == mwss_brute(g, w)[0]
    assert g.is_stable(solution.witness)
    for lst in solution.lists:
        assert_bounds(lst)


@pytest.mark.parametrize("n", range(1, 8))
def test_small_graphs_match_enumeration(n: int) -> None:
    members = [g for g in atlas_members() if g.n == n]
    assert members
    for g in members:
        for w in weight_vectors(n, 5):
            check_solution(g, w)


@pytest.mark.parametrize("n", range(9, 15))
def test_grown_members_match_enumeration(n: int) -> None:
    # 84 graphs per size, 504 in all
    for _ in range(84):
        g = generators.grown_class_member(n)
        for w in weight_vectors(n, 2):
            check_solution(g, w)


@pytest.mark.parametrize("n", range(3, 7))
def test_formulations_match_enumeration(n: int) -> None:
    for g in (g for g in atlas_members() if g.n == n):
        f = build_formulation(g, SMALL)
        for w in weight_vectors(n, 10):
            assert lp_max(f, w) == mwss_brute(g, w)[0]


def random_decreasing_table(pattern: Graph) -> ServiceTable:
    drops = [fake.pyint(min_value=0, max_value=3) for _ in range(pattern.n)]
    top = sum(drops) + fake.pyint(min_value=0, max_value=2)
    values = {t: Fraction(top - sum(drops[i] for i in bits(t))) for t in enumerate_stable_sets(pattern)}
    return ServiceTable(pattern, pattern.full, values)


def random_partition(u: int) -> Grouping:
    nodes = list(bits(u))
    count = fake.pyint(min_value=1, max_value=len(nodes))
    order = fake.random_sample(elements=tuple(nodes), length=len(nodes))
    blocks = [mask_of(order[i::count]) for i in range(count)]
    return Grouping(tuple(b for b in blocks if b))


@pytest.mark.parametrize("batch", range(20))
def test_one_node_linearization_holds_exactly_under_its_condition(batch: int) -> None:
    for _ in range(20):
        n = fake.pyint(min_value=3, max_value=8)
        h = generators.random_graph(n, density=0.5)
        u = mask_of(fake.random_sample(elements=tuple(range(n)), length=fake.pyint(min_value=2, max_value=n - 1)))
        outside = [v for v in range(n) if not u >> v & 1]
        r = fake.random_element(elements=(None, *outside))
        grouping = random_partition(u)
        d = random_decreasing_table(pattern_graph(h, grouping))
        if linearizable_by_one_node(h, u, grouping, r):
            lin = linearize_from_table(h, u, grouping, d, r)
            assert verify_linearization(lin, via_grouping(grouping, d))
        else:
            with pytest.raises(StructuralConditionFailed):
                linearize_from_table(h, u, grouping, d, r)


@pytest.mark.parametrize("batch", range(10))
def test_fan_solver_on_random_fans(batch: int) -> None:
    for _ in range(10):
        t = generators.random_good_fan_template(max_length=20)
        w = generators.random_weights(t.graph.n)
        assert max(apex_free_pieces(record_fan(t, w))) <= 8
        assert solve_fan_template(t, w).values == template_mwss_brute(t, w).values


@pytest.mark.parametrize("index", range(30))
def test_projected_formulations_are_the_polytope(index: int) -> None:
    members = [g for g in atlas_members() if 3 <= g.n <= 6]
    g = members[index * len(members) // 30]
    p = fm_project(build_formulation(g, SMALL), limits=Limits(fm_guard=30))
    assert p.original == p.variables
    for s in range(1 << g.n):
        point = [s >> v & 1 for v in range(g.n)]
        assert contains(p, point) == g.is_stable(s)
        assert lp_max(p, point) == mwss_brute(g, point)[0]
    for _ in range(20):
        w = [Fraction(fake.pyint(min_value=-9, max_value=9), fake.pyint(min_value=1, max_value=5)) for _ in range(g.n)]
        assert lp_max(p, w) == mwss_brute(g, w)[0]


def test_eliminating_empty_nodes_keeps_every_optimum() -> None:
    g = generators.amalgam_example()
    blocks = amalgam_blocks(g, amalgam(g, 0b00001, 0b00010, 0b00100, 0b01000, 0b10000))
    sys1, sys2 = (fm_project(leaf_formulation(h)) for h in (blocks.g1, blocks.g2))
    composed = amalgam_compose(sys1, sys2, blocks, g)
    eliminated = burlet_fonlupt_eliminate(sys1, sys2, blocks.k, blocks.empty1, blocks.empty2)
    for _ in range(100):
        w = generators.random_weights(g.n)
        assert lp_max(eliminated, w) == lp_max(composed, w) == mwss_brute(g, w)[0]
