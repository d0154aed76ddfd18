from fractions import Fraction

from src.app.polytope.formulation import ExtendedFormulation, Relation, make_row, nonnegative
from src.app.verification import sample_weights, verify_graph

from .helpers import generators


def edge_system(g) -> ExtendedFormulation:
    names = tuple(f"x_{v + 1}" for v in range(g.n))
    rows = [nonnegative(x) for x in names]
    rows += [make_row({names[u]: 1, names[v]: 1}, Relation.LE, 1, "edge") for u, v in g.edges()]
    return ExtendedFormulation(names, tuple(rows), names)


def test_samples_follow_the_seed() -> None:
    first = sample_weights(6, 4, seed=7)
    assert first == sample_weights(6, 4, seed=7)
    assert first != sample_weights(6, 4, seed=8)
    assert all(-5 <= x <= 10 for w in first for x in w)


def test_hole_passes() -> None:
    report = verify_graph(generators.cycle(5), samples=5, seed=1)
    assert report.ok
    assert report.pipeline_checked == report.lp_checked == 5
    assert report.formulation_size is not None


def test_a_weak_system_is_caught(mocker) -> None:
    mocker.patch("src.app.verification.sample_weights", return_value=[(Fraction(1),) * 5])
    report = verify_graph(generators.cycle(5), samples=1, seed=0, formulation=edge_system(generators.cycle(5)))
    assert not report.ok
    assert report.pipeline_checked == 1
    [mismatch] = report.mismatches
    assert mismatch.check == "lp"
    assert (mismatch.expected, mismatch.got) == ("2", "5/2")


def test_no_samples() -> None:
    report = verify_graph(generators.cube(), samples=0, seed=0)
    assert report.ok
    assert report.pipeline_checked == report.lp_checked == 0
    assert report.formulation_size is None
