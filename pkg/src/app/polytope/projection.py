"""Fourier-Motzkin projection of extended formulations onto a subset of their variables.

Equalities are used first to substitute variables away; the remaining ones are
eliminated by pairing rows with opposite signs, cheapest variable first.
Redundant rows are removed by exact LP dominance.
"""

from collections.abc import Iterable, Sequence
from fractions import Fraction
from math import gcd, lcm

from ..core.config import Limits, default_limits
from ..core.exceptions.polytope_exceptions import BlowUpGuard, Infeasible, SpaceMismatch, Unbounded
from ..core.logger import logging
from .formulation import ExtendedFormulation, Relation, Row, make_row
from .lp import lp_solve

logger = logging.getLogger(__name__)

PRUNE_AT = 48

Linear = dict[str, Fraction]
Inequality = tuple[Linear, Fraction]


def _canonical(coeffs: Linear, rhs: Fraction, equality: bool = False) -> Inequality:
    """Scale to coprime integer coefficients; equalities also get a positive leading coefficient."""
    scale = lcm(*(c.denominator for c in coeffs.values()))
    numerators = [int(c * scale) for c in coeffs.values()]
    divisor = gcd(*numerators)
    factor = Fraction(scale, divisor)
    if equality and coeffs[min(coeffs)] < 0:
        factor = -factor
    return {v: c * factor for v, c in sorted(coeffs.items())}, rhs * factor


def _tidy(rows: Iterable[Inequality]) -> list[Inequality]:
    """Drop trivial rows and keep the tightest right-hand side per left-hand side."""
    best: dict[tuple[tuple[str, Fraction], ...], Fraction] = {}
    for coeffs, rhs in rows:
        if not coeffs:
            if rhs < 0:
                raise Infeasible(f"Projection derived 0 <= {rhs}.")
            continue
        coeffs, rhs = _canonical(coeffs, rhs)
        key = tuple(coeffs.items())
        if key not in best or rhs < best[key]:
            best[key] = rhs
    return [(dict(key), rhs) for key, rhs in best.items()]


def _substitute(rows: list[Inequality], var: str, by: Linear, const: Fraction) -> list[Inequality]:
    out = []
    for coeffs, rhs in rows:
        coeffs = dict(coeffs)
        a = coeffs.pop(var, Fraction(0))
        if a:
            for v, c in by.items():
                value = coeffs.get(v, Fraction(0)) + a * c
                if value:
                    coeffs[v] = value
                else:
                    coeffs.pop(v, None)
            rhs -= a * const
        out.append((coeffs, rhs))
    return out


def _to_rows(eqs: Sequence[Inequality], ineqs: Sequence[Inequality]) -> list[Row]:
    rows = [make_row(c, Relation.EQ, r, "fm_eq") for c, r in eqs]
    return rows + [make_row(c, Relation.LE, r, "fm") for c, r in ineqs]


def prune(variables: Sequence[str], eqs: Sequence[Inequality], ineqs: Sequence[Inequality]) -> list[Inequality]:
    """Remove every inequality whose maximum over the others does not exceed its right-hand side."""
    kept = list(ineqs)
    i = 0
    while i < len(kept):
        coeffs, rhs = kept[i]
        others = kept[:i] + kept[i + 1 :]
        f = ExtendedFormulation(tuple(variables), tuple(_to_rows(eqs, others)), ())
        try:
            redundant = lp_solve(f, coeffs).value <= rhs
        except Unbounded:
            redundant = False
        if redundant:
            del kept[i]
        else:
            i += 1
    return kept


def _eliminate(rows: list[Inequality], var: str) -> list[Inequality]:
    zero, pos, neg = [], [], []
    for coeffs, rhs in rows:
        a = coeffs.get(var, Fraction(0))
        (zero if not a else pos if a > 0 else neg).append((coeffs, rhs))
    out = list(zero)
    for pc, pr in pos:
        for nc, nr in neg:
            p, q = pc[var], -nc[var]
            combined: Linear = {}
            for v in set(pc) | set(nc):
                if v == var:
                    continue
                value = q * pc.get(v, Fraction(0)) + p * nc.get(v, Fraction(0))
                if value:
                    combined[v] = value
            out.append((combined, q * pr + p * nr))
    return out


def fm_project(
    f: ExtendedFormulation, keep: Sequence[str] | None = None, limits: Limits | None = None
) -> ExtendedFormulation:
    """System over ``keep`` (default: the original variables) describing the projection of ``f``.

    Raises
    ------
    BlowUpGuard
        If more variables than the guard allows are left for pairwise elimination.
    Infeasible
        If the system turns out to be empty.
    """
    limits = limits or default_limits()
    keep = tuple(f.original if keep is None else keep)
    if not set(keep) <= set(f.variables):
        raise SpaceMismatch(f"Cannot keep unknown variables {sorted(set(keep) - set(f.variables))}.")
    kept = set(keep)
    eqs: list[Inequality] = [(dict(r.coeffs), r.rhs) for r in f.rows if r.relation is Relation.EQ]
    ineqs: list[Inequality] = [(dict(r.coeffs), r.rhs) for r in f.rows if r.relation is Relation.LE]
    for var in f.variables:
        if var in kept:
            continue
        i = next((i for i, (coeffs, _) in enumerate(eqs) if var in coeffs), None)
        if i is None:
            continue
        coeffs, rhs = eqs.pop(i)
        a = coeffs.pop(var)
        by = {v: -c / a for v, c in coeffs.items()}
        eqs = _substitute(eqs, var, by, rhs / a)
        ineqs = _substitute(ineqs, var, by, rhs / a)
    for coeffs, rhs in eqs:
        if not coeffs and rhs != 0:
            raise Infeasible(f"Projection derived 0 = {rhs}.")
    eqs = [_canonical(c, r, equality=True) for c, r in eqs if c]
    ineqs = _tidy(ineqs)
    left = sorted({v for coeffs, _ in ineqs for v in coeffs if v not in kept})
    if len(left) > limits.fm_guard:
        raise BlowUpGuard(f"{len(left)} variables left to eliminate, guard is {limits.fm_guard}.")
    while left:

        def cost(v: str) -> tuple[int, str]:
            p = sum(1 for c, _ in ineqs if c.get(v, 0) > 0)
            n = sum(1 for c, _ in ineqs if c.get(v, 0) < 0)
            return p * n - p - n, v

        var = min(left, key=cost)
        ineqs = _tidy(_eliminate(ineqs, var))
        left.remove(var)
        if len(ineqs) > PRUNE_AT:
            ineqs = prune(list(keep) + left, eqs, ineqs)
        logger.debug(f"eliminated {var}: {len(ineqs)} rows, {len(left)} variables left")
    ineqs = prune(keep, eqs, ineqs)
    meta = f.meta + (f"projected onto {len(keep)} variables",)
    return ExtendedFormulation(keep, tuple(_to_rows(eqs, ineqs)), keep, meta)
