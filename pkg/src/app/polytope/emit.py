"""Writer for the human-readable LP file format.

Rows are scaled to integer coefficients one at a time; every variable is
declared free because nonnegativity is part of the rows.
"""

from collections.abc import Mapping, Sequence
from fractions import Fraction
from math import gcd, lcm

from .formulation import ExtendedFormulation, Relation

INDENT = "   "
MAX_TERMS_IN_LINE = 8


def _integral(
    coeffs: Sequence[tuple[str, Fraction]], rhs: Fraction, reduce: bool = True
) -> tuple[list[tuple[str, int]], int]:
    scale = lcm(*(c.denominator for _, c in coeffs), rhs.denominator)
    ints = [(v, int(c * scale)) for v, c in coeffs]
    divisor = (gcd(*(c for _, c in ints), int(rhs * scale)) or 1) if reduce else 1
    return [(v, c // divisor) for v, c in ints], int(rhs * scale) // divisor


def _terms(coeffs: Sequence[tuple[str, int]]) -> list[str]:
    out = []
    for i, (v, c) in enumerate(coeffs):
        sign = "-" if c < 0 else ("+" if i else "")
        size = abs(c)
        body = v if size == 1 else f"{size} {v}"
        out.append(f"{sign} {body}".strip())
    return out


def _wrap(terms: Sequence[str]) -> str:
    lines = [" ".join(terms[i : i + MAX_TERMS_IN_LINE]) for i in range(0, len(terms), MAX_TERMS_IN_LINE)]
    return ("\n" + INDENT + "  ").join(lines) if lines else "0"


def emit_lp(
    f: ExtendedFormulation, objective: Mapping[str, Fraction | int] | None = None, title: str = "stable set polytope"
) -> str:
    """LP text maximizing ``objective`` (default: the sum of the original variables) over ``f``."""
    objective = objective if objective is not None else dict.fromkeys(f.original, 1)
    out = [f"\\ {title}"]
    out += [f"\\ {line}" for line in f.meta]
    out.append(f"\\ {len(f.variables)} variables, {len(f.rows)} rows, {len(f.original)} original")
    obj = sorted((v, Fraction(c)) for v, c in objective.items() if c)
    obj_ints, _ = _integral(obj, Fraction(0), reduce=False)
    out += ["Maximize", f"{INDENT}obj: {_wrap(_terms(obj_ints))}", "Subject To"]
    for i, row in enumerate(f.rows):
        coeffs, rhs = _integral(row.coeffs, row.rhs)
        relop = "=" if row.relation is Relation.EQ else "<="
        out.append(f"{INDENT}{row.name or 'r'}_{i}: {_wrap(_terms(coeffs))} {relop} {rhs}")
    out.append("Bounds")
    out += [f"{INDENT}{v} free" for v in f.variables]
    out.append("End")
    return "\n".join(out) + "\n"
