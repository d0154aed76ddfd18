"""Exact rational linear programming over extended formulations.

A dense two-phase simplex on ``Fraction`` entries pivoting by Bland's rule.
Variables bounded by a ``-v <= 0`` row are kept nonnegative; free variables are
solved out of equality rows where possible and split into two parts otherwise.
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from ..core.exceptions.polytope_exceptions import Infeasible, SpaceMismatch, Unbounded
from ..core.logger import logging
from .formulation import ExtendedFormulation, Relation, Row, make_row

logger = logging.getLogger(__name__)

Linear = dict[str, Fraction]


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    point: dict[str, Fraction]
    pivots: int


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]) -> None:
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    def pivot(self, i: int, j: int) -> None:
        row = self.rows[i]
        piv = row[j]
        if piv != 1:
            row = [a / piv for a in row]
            self.rows[i] = row
            self.rhs[i] /= piv
        for k, other in enumerate(self.rows):
            f = other[j]
            if k == i or not f:
                continue
            self.rows[k] = [a - f * b if b else a for a, b in zip(other, row)]
            self.rhs[k] -= f * self.rhs[i]
        self.basis[i] = j
        self.pivots += 1

    def reduced(self, cost: Sequence[Fraction]) -> list[Fraction]:
        out = list(cost)
        for i, b in enumerate(self.basis):
            if cost[b]:
                cb = cost[b]
                out = [o - cb * a if a else o for o, a in zip(out, self.rows[i])]
        return out

    def value(self, cost: Sequence[Fraction]) -> Fraction:
        return sum((cost[b] * self.rhs[i] for i, b in enumerate(self.basis)), Fraction(0))

    def maximize(self, cost: Sequence[Fraction], allowed: int) -> None:
        """Pivot to optimality; columns from ``allowed`` on never enter.

        Raises
        ------
        Unbounded
            If an entering column has no positive entry.
        """
        reduced = self.reduced(cost)
        while True:
            j = next((j for j in range(allowed) if reduced[j] > 0), None)
            if j is None:
                return
            best: tuple[tuple[Fraction, int], int] | None = None
            for i, row in enumerate(self.rows):
                if row[j] > 0:
                    key = (self.rhs[i] / row[j], self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise Unbounded()
            i = best[1]
            self.pivot(i, j)
            r = reduced[j]
            reduced = [o - r * a if a else o for o, a in zip(reduced, self.rows[i])]

    def drop_row(self, i: int) -> None:
        del self.rows[i], self.rhs[i], self.basis[i]


def _simplex(
    a: list[list[Fraction]], b: list[Fraction], equal: list[bool], c: list[Fraction]
) -> tuple[Fraction, list[Fraction], int]:
    """max c·y subject to ``a y (<= or =) b`` and y ≥ 0."""
    n = len(c)
    slack_of: dict[int, int] = {}
    for i, eq in enumerate(equal):
        if not eq:
            slack_of[i] = n + len(slack_of)
    real = n + len(slack_of)
    needs = [i for i in range(len(a)) if equal[i] or b[i] < 0]
    art_of = {i: real + k for k, i in enumerate(needs)}
    width = real + len(needs)
    rows, rhs, basis = [], [], []
    for i, coeffs in enumerate(a):
        row = coeffs + [Fraction(0)] * (width - n)
        if i in slack_of:
            row[slack_of[i]] = Fraction(1)
        value = b[i]
        if value < 0:
            row = [-x for x in row]
            value = -value
        if i in art_of:
            row[art_of[i]] = Fraction(1)
            basis.append(art_of[i])
        else:
            basis.append(slack_of[i])
        rows.append(row)
        rhs.append(value)
    tab = _Tableau(rows, rhs, basis)
    if needs:
        phase1 = [Fraction(0)] * real + [Fraction(-1)] * len(needs)
        tab.maximize(phase1, width)
        if tab.value(phase1) < 0:
            raise Infeasible()
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] < real:
                i += 1
                continue
            j = next((j for j in range(real) if tab.rows[i][j]), None)
            if j is None:
                tab.drop_row(i)
                continue
            tab.pivot(i, j)
            i += 1
    cost = c + [Fraction(0)] * (width - n)
    tab.maximize(cost, real)
    y = [Fraction(0)] * n
    for i, col in enumerate(tab.basis):
        if col < n:
            y[col] = tab.rhs[i]
    return tab.value(cost), y, tab.pivots


def _substitute(expr: Linear, var: str, by: Linear, const: Fraction) -> tuple[Linear, Fraction]:
    """Replace ``var`` in ``expr`` by ``const + by``; returns the new expression and the constant moved out."""
    coeff = expr.pop(var, Fraction(0))
    if not coeff:
        return expr, Fraction(0)
    for v, c in by.items():
        value = expr.get(v, Fraction(0)) + coeff * c
        if value:
            expr[v] = value
        else:
            expr.pop(v, None)
    return expr, coeff * const


def lp_solve(
    f: ExtendedFormulation, objective: Mapping[str, Fraction | int], extra: Sequence[Row] = ()
) -> LPResult:
    """Maximize a linear objective over the system of ``f`` plus ``extra`` rows.

    Raises
    ------
    Infeasible
        If the system has no solution.
    Unbounded
        If the objective grows without bound.
    """
    rows = list(f.rows) + list(extra)
    known = set(f.variables)
    if not set(objective) <= known or any(not r.variables <= known for r in extra):
        raise SpaceMismatch("Objective and rows must use variables of the formulation.")
    nonneg = {r.coeffs[0][0] for r in rows if r.is_nonnegativity()}
    work: list[tuple[Linear, bool, Fraction]] = [
        (dict(r.coeffs), r.relation is Relation.EQ, r.rhs) for r in rows if not r.is_nonnegativity()
    ]
    obj: Linear = {v: Fraction(c) for v, c in objective.items() if c}
    offset = Fraction(0)
    solved: list[tuple[str, Linear, Fraction]] = []
    while True:
        pick = next(
            ((i, v) for i, (coeffs, eq, _) in enumerate(work) if eq for v in sorted(coeffs) if v not in nonneg),
            None,
        )
        if pick is None:
            break
        i, var = pick
        coeffs, _, rhs = work.pop(i)
        a = coeffs.pop(var)
        by = {v: -c / a for v, c in coeffs.items()}
        const = rhs / a
        solved.append((var, by, const))
        rest = []
        for other, eq, b in work:
            other, moved = _substitute(other, var, by, const)
            b -= moved
            if other:
                rest.append((other, eq, b))
            elif (b != 0) if eq else (b < 0):
                raise Infeasible(f"Row reduces to 0 {'=' if eq else '<='} {b}.")
        work = rest
        obj, moved = _substitute(obj, var, by, const)
        offset += moved
    gone = {var for var, _, _ in solved}
    columns: list[tuple[str, int]] = []
    for v in f.variables:
        if v in gone:
            continue
        columns.append((v, 1))
        if v not in nonneg:
            columns.append((v, -1))
    index = {col: j for j, col in enumerate(columns)}
    a, b, equal = [], [], []
    for coeffs, eq, rhs in work:
        row = [Fraction(0)] * len(columns)
        for v, c in coeffs.items():
            row[index[(v, 1)]] = c
            if (v, -1) in index:
                row[index[(v, -1)]] = -c
        a.append(row)
        b.append(rhs)
        equal.append(eq)
    cost = [obj.get(v, Fraction(0)) * sign for v, sign in columns]
    value, y, pivots = _simplex(a, b, equal, cost)
    point = {v: Fraction(0) for v in f.variables}
    for (v, sign), x in zip(columns, y):
        point[v] += sign * x
    for var, by, const in reversed(solved):
        point[var] = const + sum((c * point[v] for v, c in by.items()), Fraction(0))
    logger.debug(f"lp on {len(columns)} columns and {len(a)} rows solved in {pivots} pivots")
    return LPResult(value + offset, point, pivots)


def _objective(
    f: ExtendedFormulation, w: Sequence[Fraction | int] | Mapping[str, Fraction | int]
) -> dict[str, Fraction]:
    if isinstance(w, Mapping):
        return {v: Fraction(c) for v, c in w.items()}
    if len(w) != len(f.original):
        raise SpaceMismatch(f"Expected {len(f.original)} weights, got {len(w)}.")
    return {v: Fraction(c) for v, c in zip(f.original, w)}


def lp_max(f: ExtendedFormulation, w: Sequence[Fraction | int] | Mapping[str, Fraction | int]) -> Fraction:
    """Maximum of ``w·x`` over the projection of ``f``; a sequence is read along ``f.original``."""
    return lp_solve(f, _objective(f, w)).value


def _pinned(f: ExtendedFormulation, point: Sequence[Fraction | int]) -> list[Row]:
    if len(point) != len(f.original):
        raise SpaceMismatch(f"Expected {len(f.original)} coordinates, got {len(point)}.")
    return [make_row({x: 1}, Relation.EQ, value, "pin") for x, value in zip(f.original, point)]


def lift_point(f: ExtendedFormulation, point: Sequence[Fraction | int]) -> dict[str, Fraction]:
    """A full solution of ``f`` agreeing with ``point`` on the original variables.

    Raises
    ------
    Infeasible
        If ``point`` lies outside the projection.
    """
    return lp_solve(f, {}, _pinned(f, point)).point


def contains(f: ExtendedFormulation, point: Sequence[Fraction | int]) -> bool:
    try:
        lift_point(f, point)
    except Infeasible:
        return False
    return True
