"""Extended formulations: linear systems over named variables with a designated original space.

Node variables are named after graph labels, so formulations of overlapping
graphs meet on the variables of their common nodes. Auxiliary variables start
with ``z_`` and are renamed apart whenever formulations are combined.
"""

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from ..core.config import Limits, default_limits
from ..core.exceptions.graph_exceptions import CapExceeded, InvalidGraph
from ..core.exceptions.polytope_exceptions import SpaceMismatch
from ..graphs.core import Graph, Label, LabelKind, NodeSet, bits, enumerate_stable_sets, mask_of

AUX = "z_"

Coefficients = tuple[tuple[str, Fraction], ...]


class Relation(str, Enum):
    LE = "<="
    EQ = "="


@dataclass(frozen=True)
class Row:
    """``Σ coeffs <relation> rhs`` with coefficients sorted by variable and free of zeros."""

    coeffs: Coefficients
    relation: Relation = Relation.LE
    rhs: Fraction = Fraction(0)
    name: str = ""

    @property
    def key(self) -> tuple[Coefficients, Relation, Fraction]:
        return self.coeffs, self.relation, self.rhs

    @property
    def variables(self) -> set[str]:
        return {v for v, _ in self.coeffs}

    def coefficient(self, var: str) -> Fraction:
        return next((c for v, c in self.coeffs if v == var), Fraction(0))

    def lhs(self, point: Mapping[str, Fraction]) -> Fraction:
        return sum((c * point[v] for v, c in self.coeffs), Fraction(0))

    def holds(self, point: Mapping[str, Fraction]) -> bool:
        value = self.lhs(point)
        return value == self.rhs if self.relation is Relation.EQ else value <= self.rhs

    def renamed(self, mapping: Mapping[str, str]) -> "Row":
        return make_row({mapping.get(v, v): c for v, c in self.coeffs}, self.relation, self.rhs, self.name)

    def without(self, var: str) -> dict[str, Fraction]:
        return {v: c for v, c in self.coeffs if v != var}

    def is_nonnegativity(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0][1] < 0 and self.rhs == 0 and self.relation is Relation.LE


def make_row(
    coeffs: Mapping[str, Fraction | int], relation: Relation = Relation.LE, rhs: Fraction | int = 0, name: str = ""
) -> Row:
    merged = {v: Fraction(c) for v, c in coeffs.items() if c != 0}
    return Row(tuple(sorted(merged.items())), relation, Fraction(rhs), name)


def at_least(coeffs: Mapping[str, Fraction | int], rhs: Fraction | int, name: str = "") -> Row:
    return make_row({v: -Fraction(c) for v, c in coeffs.items()}, Relation.LE, -Fraction(rhs), name)


def nonnegative(var: str) -> Row:
    return make_row({var: -1}, Relation.LE, 0, "nonneg")


# -------------- variable names --------------
def _escape(name: str) -> str:
    return "".join(ch if ch.isascii() and ch.isalnum() else f"_{ord(ch):04x}" for ch in name)


def var_name(label: Label) -> str:
    """``x_<name>`` for original nodes, ``y_<kind>_<name>`` for every added node."""
    if label.kind is LabelKind.ORIGINAL:
        return f"x_{_escape(label.name)}"
    return f"y_{label.kind.value}_{_escape(label.name)}"


def node_variables(g: Graph, within: NodeSet | None = None) -> tuple[str, ...]:
    nodes = range(g.n) if within is None else bits(within)
    return tuple(var_name(g.labels[v]) for v in nodes)


def original_variables(g: Graph) -> tuple[str, ...]:
    return tuple(var_name(label) for label in g.labels if label.kind is LabelKind.ORIGINAL)


def is_auxiliary(var: str) -> bool:
    return var.startswith(AUX)


# -------------- formulations --------------
@dataclass(frozen=True)
class ExtendedFormulation:
    """A system over ``variables`` whose projection onto ``original`` is the described polytope.

    ``meta`` logs the constructions that produced the system.
    """

    variables: tuple[str, ...]
    rows: tuple[Row, ...]
    original: tuple[str, ...]
    meta: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        known = set(self.variables)
        if len(known) != len(self.variables):
            raise SpaceMismatch("Variables must be unique.")
        if len(set(self.original)) != len(self.original) or not known.issuperset(self.original):
            raise SpaceMismatch("Original variables must be distinct variables of the system.")
        for row in self.rows:
            if not row.variables <= known:
                raise SpaceMismatch(f"Row {row.name} uses unknown variables {sorted(row.variables - known)}.")

    @property
    def extra(self) -> tuple[str, ...]:
        original = set(self.original)
        return tuple(v for v in self.variables if v not in original)

    @property
    def size(self) -> int:
        return len(self.variables) + len(self.rows)

    def with_original(self, original: Iterable[str]) -> "ExtendedFormulation":
        return ExtendedFormulation(self.variables, self.rows, tuple(original), self.meta)

    def with_rows(self, rows: Iterable[Row], note: str = "") -> "ExtendedFormulation":
        """Append rows, adding unknown variables and skipping rows already present."""
        variables = dict.fromkeys(self.variables)
        seen = {row.key for row in self.rows}
        out = list(self.rows)
        for row in rows:
            if row.key in seen:
                continue
            seen.add(row.key)
            out.append(row)
            for v, _ in row.coeffs:
                variables.setdefault(v)
        meta = self.meta + ((note,) if note else ())
        return ExtendedFormulation(tuple(variables), tuple(out), self.original, meta)

    def renamed(self, mapping: Mapping[str, str]) -> "ExtendedFormulation":
        return ExtendedFormulation(
            tuple(mapping.get(v, v) for v in self.variables),
            tuple(row.renamed(mapping) for row in self.rows),
            tuple(mapping.get(v, v) for v in self.original),
            self.meta,
        )

    def satisfied_by(self, point: Mapping[str, Fraction]) -> bool:
        return all(row.holds(point) for row in self.rows)


def scoped(f: ExtendedFormulation, prefix: str) -> ExtendedFormulation:
    """Rename the auxiliary variables of ``f`` into their own namespace."""
    mapping = {v: f"{AUX}{prefix}_{v[len(AUX):]}" for v in f.variables if is_auxiliary(v)}
    return f.renamed(mapping)


def fix(f: ExtendedFormulation, values: Mapping[str, Fraction | int], note: str = "") -> ExtendedFormulation:
    """Face or slice of ``f`` where each named variable takes its value; unknown names are added."""
    return f.with_rows((make_row({v: 1}, Relation.EQ, value, "fix") for v, value in values.items()), note)


def intersect(
    fs: Sequence[ExtendedFormulation], original: Iterable[str] | None = None, note: str = ""
) -> ExtendedFormulation:
    """All systems at once: node variables shared by name, auxiliaries kept apart, duplicate rows dropped."""
    variables: dict[str, None] = {}
    names: dict[str, None] = {}
    rows: list[Row] = []
    seen: set[tuple[Coefficients, Relation, Fraction]] = set()
    meta: list[str] = []
    for i, f in enumerate(fs):
        if len(fs) > 1:
            f = scoped(f, f"p{i}")
        variables.update(dict.fromkeys(f.variables))
        names.update(dict.fromkeys(f.original))
        for row in f.rows:
            if row.key not in seen:
                seen.add(row.key)
                rows.append(row)
        meta += f.meta
    if note:
        meta.append(note)
    out = ExtendedFormulation(tuple(variables), tuple(rows), tuple(names), tuple(meta))
    return out if original is None else out.with_original(original)


# -------------- points and unions --------------
def point_formulation(original: Sequence[str], point: Mapping[str, Fraction | int]) -> ExtendedFormulation:
    rows = tuple(make_row({x: 1}, Relation.EQ, point.get(x, 0), "point") for x in original)
    return ExtendedFormulation(tuple(original), rows, tuple(original), ("point",))


def leaf_formulation(g: Graph, limits: Limits | None = None, cap: int | None = None) -> ExtendedFormulation:
    """pol(G) as the convex hull of the stable set vectors, one weight λ_S per stable set.

    This is the union of the single points with their copies substituted away.

    Raises
    ------
    CapExceeded
        If G has more nodes than the leaf cap (or ``cap``).
    """
    limits = limits or default_limits()
    cap = limits.leaf_cap if cap is None else cap
    if g.n > cap:
        raise CapExceeded(f"Leaf formulations are limited to {cap} nodes, got {g.n}.")
    names = node_variables(g)
    points = enumerate_stable_sets(g, cap=cap)
    lams = [f"{AUX}pt{i}" for i in range(len(points))]
    rows = [nonnegative(lam) for lam in lams]
    rows.append(make_row(dict.fromkeys(lams, 1), Relation.EQ, 1, "convexity"))
    for v, x in enumerate(names):
        coeffs: dict[str, Fraction | int] = {x: 1}
        for lam, s in zip(lams, points):
            if s >> v & 1:
                coeffs[lam] = -1
        rows.append(make_row(coeffs, Relation.EQ, 0, "vertex"))
    return ExtendedFormulation(names + tuple(lams), tuple(rows), names, (f"leaf on {g.n} nodes, {len(points)} points",))


def balas_union(fs: Sequence[ExtendedFormulation], tag: str = "u") -> ExtendedFormulation:
    """Convex hull of the union of polytopes: ``x = Σ x^i``, ``Σ λ_i = 1`` and ``A^i x^i + B^i y^i ≤ λ_i d^i``.

    Raises
    ------
    SpaceMismatch
        If the formulations do not share their original variables.
    """
    if not fs:
        raise SpaceMismatch("A union needs at least one formulation.")
    original = fs[0].original
    for f in fs[1:]:
        if set(f.original) != set(original):
            raise SpaceMismatch("United formulations must share their original variables.")
    variables = list(original)
    rows: list[Row] = []
    lams = []
    for i, f in enumerate(fs):
        prefix = f"{AUX}{tag}{i}_"
        lam = f"{prefix}lam"
        for row in f.rows:
            coeffs: dict[str, Fraction | int] = {prefix + v: c for v, c in row.coeffs}
            if row.rhs:
                coeffs[lam] = -row.rhs
            rows.append(make_row(coeffs, row.relation, 0, row.name))
        rows.append(nonnegative(lam))
        variables += [prefix + v for v in f.variables] + [lam]
        lams.append(lam)
    rows.append(make_row(dict.fromkeys(lams, 1), Relation.EQ, 1, "convexity"))
    for x in original:
        coeffs = {x: 1}
        coeffs.update({f"{AUX}{tag}{i}_{x}": -1 for i in range(len(fs))})
        rows.append(make_row(coeffs, Relation.EQ, 0, "sum"))
    meta = tuple(m for f in fs for m in f.meta) + (f"union of {len(fs)}",)
    return ExtendedFormulation(tuple(variables), tuple(rows), original, meta)


# -------------- clique families --------------
@dataclass(frozen=True)
class CliqueFamily:
    """Cliques of ``graph`` whose constraints ``x(C) ≤ 1`` are made tight."""

    graph: Graph
    cliques: tuple[NodeSet, ...]

    def __post_init__(self) -> None:
        for c in self.cliques:
            if not self.graph.is_clique(c):
                raise InvalidGraph(f"{self.graph.names(c)} is not a clique.")

    def __len__(self) -> int:
        return len(self.cliques)

    def rows(self) -> list[Row]:
        names = node_variables(self.graph)
        return [make_row({names[v]: 1 for v in bits(c)}, Relation.EQ, 1, "clique") for c in self.cliques]


def record_cliques(g: Graph, u: NodeSet, nodes: Mapping[NodeSet, int]) -> CliqueFamily:
    """The record clique plus, for v in U, v together with every r_T with v outside T."""
    cliques = [mask_of(nodes.values())]
    for v in bits(u):
        cliques.append(1 << v | mask_of(r for t, r in nodes.items() if not t >> v & 1))
    return CliqueFamily(g, tuple(cliques))


def face(f: ExtendedFormulation, family: CliqueFamily) -> ExtendedFormulation:
    return f.with_rows(family.rows(), f"{len(family)} tight cliques")
