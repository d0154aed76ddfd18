"""DIMACS edge files and plain weight files.

Graphs use the ``p edge n m`` header followed by ``e u v`` lines with 1-based
ids; ``c`` lines are comments. Weights are one rational per line in node order.
"""

from fractions import Fraction
from pathlib import Path

from ...graphs.core import Graph
from ..exceptions.graph_exceptions import GraphParseError, InvalidGraph


def parse_dimacs(text: str) -> Graph:
    """Graph with nodes named ``1..n`` after their DIMACS ids.

    Raises
    ------
    GraphParseError
        On a missing or repeated header, a malformed line, an id out of range
        or an edge count that differs from the header.
    """
    n: int | None = None
    expected = 0
    edges: set[tuple[int, int]] = set()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split()
        if not line or line[0] == "c":
            continue
        if line[0] == "p":
            if n is not None:
                raise GraphParseError(f"Line {number}: repeated problem line.")
            if len(line) != 4 or line[1] not in ("edge", "col"):
                raise GraphParseError(f"Line {number}: expected 'p edge n m'.")
            try:
                n, expected = int(line[2]), int(line[3])
            except ValueError as err:
                raise GraphParseError(f"Line {number}: node and edge counts must be integers.") from err
            if n < 0 or expected < 0:
                raise GraphParseError(f"Line {number}: counts must be nonnegative.")
            continue
        if line[0] == "e":
            if n is None:
                raise GraphParseError(f"Line {number}: edge before the problem line.")
            if len(line) != 3:
                raise GraphParseError(f"Line {number}: expected 'e u v'.")
            try:
                u, v = int(line[1]), int(line[2])
            except ValueError as err:
                raise GraphParseError(f"Line {number}: node ids must be integers.") from err
            if not (1 <= u <= n and 1 <= v <= n) or u == v:
                raise GraphParseError(f"Line {number}: edge {u} {v} is a loop or out of range.")
            edges.add((min(u, v) - 1, max(u, v) - 1))
            continue
        raise GraphParseError(f"Line {number}: unknown line type {line[0]!r}.")
    if n is None:
        raise GraphParseError("Missing problem line.")
    if expected and expected != len(edges):
        raise GraphParseError(f"Header announces {expected} edges, found {len(edges)}.")
    try:
        return Graph.from_edges(n, sorted(edges), names=[str(v + 1) for v in range(n)])
    except InvalidGraph as err:
        raise GraphParseError(err.message) from err


def format_dimacs(g: Graph, comment: str | None = None) -> str:
    lines = [f"c {comment}"] if comment else []
    lines.append(f"p edge {g.n} {len(g.edges())}")
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_weights(text: str, n: int) -> tuple[Fraction, ...]:
    """One rational per nonblank line (``3``, ``-2``, ``3/2`` or ``0.5``).

    Raises
    ------
    GraphParseError
        If a value is not rational or the count differs from ``n``.
    """
    values = []
    for number, raw in enumerate(text.splitlines(), start=1):
        raw = raw.strip()
        if not raw or raw.startswith("c"):
            continue
        try:
            values.append(Fraction(raw))
        except (ValueError, ZeroDivisionError) as err:
            raise GraphParseError(f"Line {number}: {raw!r} is not a rational.") from err
    if len(values) != n:
        raise GraphParseError(f"Expected {n} weights, got {len(values)}.")
    return tuple(values)


def read_graph(path: str | Path) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise GraphParseError(f"Cannot read {path}: {err.strerror}.") from err
    return parse_dimacs(text)


def read_weights(path: str | Path | None, n: int) -> tuple[Fraction, ...]:
    """Weights from ``path``, or all ones without a path."""
    if path is None:
        return (Fraction(1),) * n
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise GraphParseError(f"Cannot read {path}: {err.strerror}.") from err
    return parse_weights(text, n)
