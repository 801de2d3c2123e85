"""Undirected multigraphs with self-loops, cuts, and text-file I/O.

Edges are keyed on canonical (min, max) vertex pairs with merged integer
multiplicities; parallel edges have no individual identity.  A self-loop
contributes 2 to its vertex's degree and can never cross a cut.  Vertex
ids are dense integers 0..n-1; degree-0 vertices are representable.

Multigraph instances are treated as immutable after construction;
concurrent reads are safe.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import ContractError, DomainError, GraphFormatError

GRAPH_HEADER = "# plmc-graph"
CUT_HEADER = "# plmc-cut"


class Multigraph:
    """Immutable undirected multigraph with self-loops and merged multiplicities."""

    __slots__ = ("_n", "_edges", "_degrees", "_arrays", "_adjacency")

    def __init__(
        self,
        vertex_count: int,
        edges: Iterable[tuple[int, int, int]] = (),
        strict: bool = False,
    ):
        if vertex_count < 0:
            raise ContractError(f"vertex_count must be nonnegative, got {vertex_count}")
        self._n = int(vertex_count)
        merged: dict[tuple[int, int], int] = {}
        for u, v, mult in edges:
            u, v, mult = int(u), int(v), int(mult)
            if not (0 <= u < self._n and 0 <= v < self._n):
                raise ContractError(f"edge ({u},{v}) outside vertex range 0..{self._n - 1}")
            if mult <= 0:
                raise ContractError(f"edge ({u},{v}) has non-positive multiplicity {mult}")
            key = (u, v) if u <= v else (v, u)
            if key in merged:
                if strict:
                    raise ContractError(f"duplicate edge key {key} in strict mode")
                merged[key] += mult
            else:
                merged[key] = mult
        self._edges = merged
        degrees = [0] * self._n
        for (u, v), mult in merged.items():
            if u == v:
                degrees[u] += 2 * mult
            else:
                degrees[u] += mult
                degrees[v] += mult
        self._degrees = tuple(degrees)
        self._arrays = None
        self._adjacency = None

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        """Number of distinct edge keys (loops included)."""
        return len(self._edges)

    @property
    def edge_multiplicity_total(self) -> int:
        return sum(self._edges.values())

    @property
    def self_loop_mult_total(self) -> int:
        return sum(m for (u, v), m in self._edges.items() if u == v)

    @property
    def effective_edge_total(self) -> int:
        """Edge multiplicity total excluding self-loops: the cut-value ceiling."""
        return self.edge_multiplicity_total - self.self_loop_mult_total

    def degree(self, v: int) -> int:
        return self._degrees[v]

    @property
    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    @property
    def max_degree(self) -> int:
        return max(self._degrees, default=0)

    def multiplicity(self, u: int, v: int) -> int:
        key = (u, v) if u <= v else (v, u)
        return self._edges.get(key, 0)

    def iter_edges(self) -> Iterator[tuple[int, int, int]]:
        for (u, v), m in sorted(self._edges.items()):
            yield u, v, m

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(u, v, mult) int64 arrays in canonical sorted order; cached."""
        if self._arrays is None:
            items = sorted(self._edges.items())
            u = np.fromiter((k[0] for k, _ in items), dtype=np.int64, count=len(items))
            v = np.fromiter((k[1] for k, _ in items), dtype=np.int64, count=len(items))
            m = np.fromiter((mult for _, mult in items), dtype=np.int64, count=len(items))
            self._arrays = (u, v, m)
        return self._arrays

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-vertex (neighbor, multiplicity) lists, self-loops excluded; cached."""
        if self._adjacency is None:
            adj: list[list[tuple[int, int]]] = [[] for _ in range(self._n)]
            for (u, v), m in self._edges.items():
                if u != v:
                    adj[u].append((v, m))
                    adj[v].append((u, m))
            self._adjacency = adj
        return self._adjacency

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self):
        return hash((self._n, frozenset(self._edges.items())))

    def __repr__(self) -> str:
        return (
            f"Multigraph(n={self._n}, distinct_edges={len(self._edges)}, "
            f"mult_total={self.edge_multiplicity_total})"
        )


@dataclass(frozen=True)
class Cut:
    """Two-sided vertex assignment; side values are 0 or 1."""

    sides: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (0, 1) for s in self.sides):
            raise ContractError("cut sides must be 0 or 1")

    @classmethod
    def from_iterable(cls, it: Iterable[int]) -> "Cut":
        return cls(tuple(int(s) for s in it))

    def __len__(self) -> int:
        return len(self.sides)

    def __getitem__(self, v: int) -> int:
        return self.sides[v]

    def complement(self) -> "Cut":
        return Cut(tuple(1 - s for s in self.sides))

    def to_line(self) -> str:
        return "".join(str(s) for s in self.sides)


@dataclass(frozen=True)
class DegreeInterval:
    """Closed degree range [a, b] selecting vertices by their degree."""

    a: int
    b: int

    def __post_init__(self):
        if not (1 <= self.a <= self.b):
            raise DomainError(f"need 1 <= a <= b, got [{self.a}, {self.b}]")


def cut_value(g: Multigraph, c: Cut) -> int:
    """Total multiplicity crossing the cut; self-loops never contribute."""
    if len(c) != g.vertex_count:
        raise ContractError(
            f"cut length {len(c)} does not match vertex count {g.vertex_count}"
        )
    if g.edge_count == 0:
        return 0
    u, v, m = g.edge_arrays()
    sides = np.asarray(c.sides, dtype=np.int8)
    return int((m * (sides[u] != sides[v])).sum())


def degree_histogram(g: Multigraph) -> dict[int, int]:
    """Exact degree -> count map; counts sum to the vertex count."""
    return dict(Counter(g.degrees))


def induced_interval_subgraph(
    g: Multigraph, iv: DegreeInterval
) -> tuple[Multigraph, tuple[int, ...]]:
    """Subgraph on vertices with degree in [iv.a, iv.b].

    Returns the subgraph plus the new-id -> old-id mapping.  Only edges
    with both endpoints retained survive; the result may be empty.
    """
    keep = [v for v in range(g.vertex_count) if iv.a <= g.degree(v) <= iv.b]
    old_to_new = {old: new for new, old in enumerate(keep)}
    edges = []
    for u, v, m in g.iter_edges():
        nu = old_to_new.get(u)
        nv = old_to_new.get(v)
        if nu is not None and nv is not None:
            edges.append((nu, nv, m))
    return Multigraph(len(keep), edges), tuple(keep)


def core_strength(g: Multigraph) -> float:
    """Density surrogate: sum over edges of mult / ((D_u + Dbar)(D_v + Dbar)).

    Dbar is the average degree.  Self-loops use the squared denominator of
    their single endpoint.  Undefined (raises) on graphs without edges.
    """
    if g.edge_count == 0:
        raise DomainError("core strength undefined for graphs without edges")
    d_bar = sum(g.degrees) / g.vertex_count
    total = 0.0
    for u, v, m in g.iter_edges():
        total += m / ((g.degree(u) + d_bar) * (g.degree(v) + d_bar))
    return total


# ---------------------------------------------------------------------------
# file I/O
# ---------------------------------------------------------------------------


def write_graph(g: Multigraph, path: str | os.PathLike) -> None:
    """Write the line-oriented text format: header, then one `u v mult` per edge."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{GRAPH_HEADER} n={g.vertex_count}\n")
        for u, v, m in g.iter_edges():
            fh.write(f"{u} {v} {m}\n")


def read_graph(path: str | os.PathLike, strict: bool = False) -> Multigraph:
    """Parse a graph file; raises GraphFormatError with the offending line number."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline()
        if not header.startswith(GRAPH_HEADER):
            raise GraphFormatError(f"missing `{GRAPH_HEADER}` header", line=1)
        try:
            n = int(header.split("n=", 1)[1])
        except (IndexError, ValueError):
            raise GraphFormatError("header lacks a parseable n=<int>", line=1) from None
        edges = []
        for lineno, raw in enumerate(fh, start=2):
            text = raw.strip()
            if not text or text.startswith("#"):
                continue
            parts = text.split()
            if len(parts) != 3:
                raise GraphFormatError(f"expected `u v mult`, got {text!r}", line=lineno)
            try:
                u, v, m = (int(x) for x in parts)
            except ValueError:
                raise GraphFormatError(f"non-integer field in {text!r}", line=lineno) from None
            edges.append((u, v, m))
    try:
        return Multigraph(n, edges, strict=strict)
    except ContractError as exc:
        raise GraphFormatError(str(exc)) from exc


def write_cut(c: Cut, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{CUT_HEADER} n={len(c)}\n")
        fh.write(c.to_line() + "\n")


def read_cut(path: str | os.PathLike) -> Cut:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline()
        if not header.startswith(CUT_HEADER):
            raise GraphFormatError(f"missing `{CUT_HEADER}` header", line=1)
        try:
            n = int(header.split("n=", 1)[1])
        except (IndexError, ValueError):
            raise GraphFormatError("header lacks a parseable n=<int>", line=1) from None
        line = fh.readline().strip()
        if len(line) != n or any(ch not in "01" for ch in line):
            raise GraphFormatError(f"expected {n} characters of 0/1", line=2)
        return Cut.from_iterable(int(ch) for ch in line)
