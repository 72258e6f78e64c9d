"""Line-oriented text formats for graphs and contraction sets.

Graph files::

    # comment
    p <n> <m>
    e <u> <v> <num>/<den>      (or a bare integer length)
    t <alpha> <beta> [weak]    (optional: the tolerance an instance is meant for)

Contraction sets are newline-separated edge ids; blank lines and ``#``
comments are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .graph import Edge, Graph
from .tolerance import AffineTolerance, parse_rational


class FormatError(ValueError):
    """A malformed input line; ``line`` is 1-based."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class GraphFile:
    graph: Graph
    tolerance: AffineTolerance | None = None
    weak: bool = False


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _int_token(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(line, f"{what} must be an integer, got {token!r}") from None


def parse_graph(text: str) -> GraphFile:
    header: tuple[int, int] | None = None
    edges: list[Edge] = []
    tolerance = None
    weak = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "p":
            if header is not None:
                raise FormatError(lineno, "duplicate 'p' header")
            if len(parts) != 3:
                raise FormatError(lineno, "expected 'p <n> <m>'")
            header = (_int_token(parts[1], lineno, "n"), _int_token(parts[2], lineno, "m"))
            if header[0] < 0 or header[1] < 0:
                raise FormatError(lineno, "counts must be non-negative")
        elif kind == "e":
            if header is None:
                raise FormatError(lineno, "edge line before the 'p' header")
            if len(parts) != 4:
                raise FormatError(lineno, "expected 'e <u> <v> <length>'")
            u = _int_token(parts[1], lineno, "u")
            v = _int_token(parts[2], lineno, "v")
            try:
                length = parse_rational(parts[3])
            except ValueError as exc:
                raise FormatError(lineno, str(exc)) from None
            if not (0 <= u < header[0] and 0 <= v < header[0]):
                raise FormatError(lineno, f"endpoint outside [0, {header[0]})")
            if u == v:
                raise FormatError(lineno, "loops are not allowed")
            if length <= 0:
                raise FormatError(lineno, "lengths must be positive")
            edges.append(Edge(u, v, length))
        elif kind == "t":
            if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "weak"):
                raise FormatError(lineno, "expected 't <alpha> <beta> [weak]'")
            try:
                tolerance = AffineTolerance(parse_rational(parts[1]), parse_rational(parts[2]))
            except ValueError as exc:
                raise FormatError(lineno, str(exc)) from None
            weak = len(parts) == 4
        else:
            raise FormatError(lineno, f"unknown line type {kind!r}")
    if header is None:
        raise FormatError(0, "missing 'p <n> <m>' header")
    if len(edges) != header[1]:
        raise FormatError(0, f"header announces {header[1]} edges, found {len(edges)}")
    try:
        graph = Graph(header[0], tuple(edges))
    except ValueError as exc:
        raise FormatError(0, str(exc)) from None
    return GraphFile(graph, tolerance, weak)


def format_graph(g: Graph, tolerance: AffineTolerance | None = None, weak: bool = False) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines += [f"e {e.u} {e.v} {format_rational(e.length)}" for e in g.edges]
    if tolerance is not None:
        suffix = " weak" if weak else ""
        lines.append(f"t {format_rational(tolerance.alpha)} {format_rational(tolerance.beta)}{suffix}")
    return "\n".join(lines) + "\n"


def parse_edge_set(text: str) -> frozenset[int]:
    ids = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            ids.append(_int_token(line, lineno, "edge id"))
    return frozenset(ids)


def format_edge_set(edge_set: Iterable[int]) -> str:
    return "".join(f"{e}\n" for e in sorted(edge_set))


def read_graph(path: str | Path) -> GraphFile:
    return parse_graph(Path(path).read_text())


def read_edge_set(path: str | Path) -> frozenset[int]:
    return parse_edge_set(Path(path).read_text())
