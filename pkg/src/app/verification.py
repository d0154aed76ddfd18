"""Oracle comparisons over random weight vectors, shared by the CLI and the worker."""

import random
from collections.abc import Sequence
from fractions import Fraction

from .core.config import Limits, default_limits
from .core.exceptions.decomposition_exceptions import NoLeafMethod
from .core.exceptions.graph_exceptions import CapExceeded
from .core.exceptions.polytope_exceptions import Infeasible, Unbounded
from .core.logger import logging
from .decomposition.pipeline import solve_pipeline
from .graphs.core import Graph
from .graphs.oracle import mwss_brute
from .polytope.builder import build_formulation
from .polytope.formulation import ExtendedFormulation
from .polytope.lp import lp_max
from .schemas.report import Mismatch, VerificationReport

logger = logging.getLogger(__name__)

LOW, HIGH = -5, 10


def sample_weights(n: int, samples: int, seed: int) -> list[tuple[Fraction, ...]]:
    """``samples`` integer vectors in [-5, 10]; the same seed gives the same vectors."""
    rng = random.Random(seed)
    return [tuple(Fraction(rng.randint(LOW, HIGH)) for _ in range(n)) for _ in range(samples)]


def _mismatch(check: str, w: Sequence[Fraction], expected: Fraction, got: Fraction | str) -> Mismatch:
    return Mismatch(check=check, weights=[str(x) for x in w], expected=str(expected), got=str(got))


def verify_graph(
    g: Graph,
    samples: int,
    seed: int,
    limits: Limits | None = None,
    formulation: ExtendedFormulation | None = None,
) -> VerificationReport:
    """Compare the pipeline and the LP over the built formulation with brute force.

    ``formulation`` replaces the built one, e.g. to check a stored system.
    """
    limits = limits or default_limits()
    report = VerificationReport(nodes=g.n, samples=samples, seed=seed)
    if samples == 0:
        return report
    if formulation is None:
        try:
            formulation = build_formulation(g, limits)
        except (NoLeafMethod, CapExceeded) as err:
            report.skipped.append(f"formulation: {err}")
    if formulation is not None:
        report.formulation_size = formulation.size
    for w in sample_weights(g.n, samples, seed):
        expected, _ = mwss_brute(g, w, limits)
        try:
            value = solve_pipeline(g, w, limits).value
        except (NoLeafMethod, CapExceeded) as err:
            report.skipped.append(f"pipeline: {err}")
        else:
            report.pipeline_checked += 1
            if value != expected:
                report.mismatches.append(_mismatch("pipeline", w, expected, value))
        if formulation is None:
            continue
        try:
            got: Fraction | str = lp_max(formulation, w)
        except (Infeasible, Unbounded) as err:
            got = type(err).__name__
        report.lp_checked += 1
        if got != expected:
            report.mismatches.append(_mismatch("lp", w, expected, got))
    level = logging.INFO if report.ok else logging.WARNING
    logger.log(level, f"verified {g.n} nodes over {samples} samples: {len(report.mismatches)} mismatches")
    return report
