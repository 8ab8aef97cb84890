"""Graphs, vertex colorings and the decidable restrictions checked after reconstruction.

Vertices are numbered 1..n in documentation and error messages; internally
lists are 0-based.  The vertex order is part of a graph's value: two graphs
are equal iff they have the same n and the same edge bits.

Edge bits are stored in lower-triangle row-major order
``(2,1), (3,1), (3,2), (4,1), (4,2), (4,3), ...``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ParameterMismatchError


def triangle_size(n: int) -> int:
    """Number of vertex pairs on n vertices."""
    return n * (n - 1) // 2


def pair_index(i: int, j: int) -> int:
    """Position of the 1-based pair {i, j} in the lower-triangle order."""
    if i == j:
        raise ValueError("self-loops have no triangle position")
    if i < j:
        i, j = j, i
    return (i - 1) * (i - 2) // 2 + (j - 1)


def pairs(n: int) -> Iterator[tuple[int, int]]:
    """Yield 1-based pairs (i, j), i > j, in lower-triangle order."""
    for i in range(2, n + 1):
        for j in range(1, i):
            yield i, j


@dataclass(frozen=True)
class Graph:
    n: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"vertex count must be >= 1, got {self.n}")
        bits = tuple(int(b) for b in self.bits)
        if len(bits) != triangle_size(self.n):
            raise ValueError(
                f"n={self.n} needs {triangle_size(self.n)} edge bits, got {len(bits)}"
            )
        if any(b not in (0, 1) for b in bits):
            raise ValueError("edge bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build from 1-based edge pairs."""
        bits = [0] * triangle_size(n)
        for i, j in edges:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
            bits[pair_index(i, j)] = 1
        return cls(n, tuple(bits))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * triangle_size(n))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, (1,) * triangle_size(n))

    @property
    def edge_count(self) -> int:
        return sum(self.bits)

    def has_edge(self, i: int, j: int) -> bool:
        return i != j and self.bits[pair_index(i, j)] == 1

    def edges(self) -> list[tuple[int, int]]:
        """1-based edges as (smaller, larger) pairs, in triangle order."""
        return [(j, i) for (i, j), b in zip(pairs(self.n), self.bits) if b]

    def adjacency(self) -> list[list[int]]:
        """0-based adjacency lists."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for (i, j), b in zip(pairs(self.n), self.bits):
            if b:
                adj[i - 1].append(j - 1)
                adj[j - 1].append(i - 1)
        return adj


@dataclass(frozen=True)
class Coloring:
    k: int
    colors: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"palette size must be >= 1, got {self.k}")
        colors = tuple(int(c) for c in self.colors)
        for v, c in enumerate(colors, start=1):
            if not 0 <= c < self.k:
                raise ValueError(f"color {c} of v{v} outside Z_{self.k}")
        object.__setattr__(self, "colors", colors)

    @classmethod
    def blank(cls, n: int) -> "Coloring":
        """The k=1 coloring, meaning coloring is not considered."""
        return cls(1, (0,) * n)

    def __len__(self) -> int:
        return len(self.colors)


@dataclass(frozen=True)
class ColoredGraph:
    graph: Graph
    coloring: Coloring

    def __post_init__(self):
        if len(self.coloring) != self.graph.n:
            raise ValueError(
                f"coloring has {len(self.coloring)} entries for {self.graph.n} vertices"
            )

    @classmethod
    def uncolored(cls, graph: Graph) -> "ColoredGraph":
        return cls(graph, Coloring.blank(graph.n))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def k(self) -> int:
        return self.coloring.k


PREDICATE_KINDS = ("connected", "proper_coloring", "bipartite", "any")


@dataclass(frozen=True)
class Predicate:
    """A named restriction on the reconstructed secret.

    ``reference`` is only meaningful for ``proper_coloring``: when set, the
    coloring is checked against that (publicly known) structure instead of
    the structure carried by the colored graph itself.
    """

    kind: str = "any"
    reference: Graph | None = None

    def __post_init__(self):
        if self.kind not in PREDICATE_KINDS:
            raise ValueError(f"unknown predicate {self.kind!r}; expected one of {PREDICATE_KINDS}")
        if self.reference is not None and self.kind != "proper_coloring":
            raise ValueError("only proper_coloring takes a reference graph")

    @classmethod
    def parse(cls, token: str) -> "Predicate":
        return cls(token.strip())

    def __str__(self) -> str:
        return self.kind


def is_connected(g: Graph) -> bool:
    adj = g.adjacency()
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == g.n


def is_proper_coloring(cg: ColoredGraph) -> bool:
    colors = cg.coloring.colors
    return all(colors[i - 1] != colors[j - 1] for i, j in cg.graph.edges())


def two_coloring(g: Graph) -> tuple[int, ...] | None:
    """A proper 2-coloring found by BFS, or None when g has an odd cycle."""
    adj = g.adjacency()
    side = [-1] * g.n
    for start in range(g.n):
        if side[start] != -1:
            continue
        side[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if side[w] == -1:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    return None
    return tuple(side)


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


def evaluate_predicate(p: Predicate, cg: ColoredGraph) -> bool:
    if p.kind == "any":
        return True
    if p.kind == "connected":
        return is_connected(cg.graph)
    if p.kind == "bipartite":
        return is_bipartite(cg.graph)
    # proper_coloring
    if p.reference is None:
        return is_proper_coloring(cg)
    if p.reference.n != cg.n:
        raise ParameterMismatchError(
            f"reference graph has {p.reference.n} vertices, secret has {cg.n}"
        )
    return is_proper_coloring(ColoredGraph(p.reference, cg.coloring))


def partition_of(coloring: Coloring | Sequence[int]) -> tuple[frozenset[int], ...]:
    """Color classes as sets of 1-based vertices, sorted by smallest member.

    Empty classes are dropped, so the result forgets which color label each
    class carried and only keeps the grouping.
    """
    colors = coloring.colors if isinstance(coloring, Coloring) else tuple(coloring)
    classes: dict[int, set[int]] = {}
    for v, c in enumerate(colors, start=1):
        classes.setdefault(c, set()).add(v)
    return tuple(sorted((frozenset(s) for s in classes.values()), key=min))
