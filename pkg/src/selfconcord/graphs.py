"""Undirected simple graphs with exact clique and stability oracles.

Vertices are 1..n.  Edges are unordered pairs stored as (i, j) with i < j;
`edge_order` is the fixed lexicographic edge list that downstream
constructions use to lay out per-edge coordinates deterministically.

The clique oracle is a plain branch-and-bound with a greedy-coloring bound.
It is exponential in the worst case and intended for desk-scale graphs
(n up to ~20); it is the ground truth the reduction suites compare against.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Iterator

__all__ = [
    "Graph",
    "graph_from_edges",
    "parse_dimacs",
    "parse_edge_list",
    "parse_graph_text",
    "complement",
    "max_clique",
    "clique_number",
    "max_stable_set",
    "stability_number",
    "has_clique",
    "enumerate_graphs",
]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be >= 0, got {self.n}")
        for e in self.edges:
            if not (isinstance(e, tuple) and len(e) == 2):
                raise ValueError(f"edge {e!r} is not a pair")
            i, j = e
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (1 <= i < j <= self.n):
                raise ValueError(f"edge {e} out of range for n={self.n}")

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_order(self) -> tuple[tuple[int, int], ...]:
        """Lexicographic edge list e_1, ..., e_m; fixes per-edge coordinates."""
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> dict[int, frozenset]:
        adj = {v: set() for v in range(1, self.n + 1)}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return {v: frozenset(s) for v, s in adj.items()}


def graph_from_edges(n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
    """Canonicalize orientation, drop duplicates, reject self-loops."""
    edges = set()
    for i, j in pairs:
        if i == j:
            raise ValueError(f"self-loop at vertex {i}")
        if i > j:
            i, j = j, i
        if not (1 <= i and j <= n):
            raise ValueError(f"edge ({i},{j}) out of range for n={n}")
        edges.add((i, j))
    return Graph(n, frozenset(edges))


def parse_dimacs(text: str) -> Graph:
    """DIMACS subset: 'p edge n m' header, 'e i j' lines, 'c' comments."""
    n = None
    pairs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ValueError(f"line {lineno}: duplicate 'p' header")
            if len(parts) != 4 or parts[1] != "edge":
                raise ValueError(f"line {lineno}: malformed header {line!r}, expected 'p edge n m'")
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise ValueError(f"line {lineno}: edge before 'p edge' header")
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: malformed edge {line!r}")
            pairs.append((int(parts[1]), int(parts[2])))
        else:
            raise ValueError(f"line {lineno}: unrecognized record {line!r}")
    if n is None:
        raise ValueError("missing 'p edge n m' header")
    return graph_from_edges(n, pairs)


def parse_edge_list(text: str) -> Graph:
    """Plain edge list: first line 'n m', then m lines 'i j'."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"malformed edge-list header {lines[0]!r}, expected 'n m'")
    n, m = int(head[0]), int(head[1])
    pairs = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"malformed edge record {ln!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    if len(pairs) != m:
        raise ValueError(f"header declares {m} edges, found {len(pairs)}")
    return graph_from_edges(n, pairs)


def parse_graph_text(text: str) -> Graph:
    """Auto-detect DIMACS (has a 'p' header) versus plain edge list."""
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("#"):
            continue
        if line.split()[0] == "p":
            return parse_dimacs(text)
        return parse_edge_list(text)
    raise ValueError("empty graph input")


def complement(G: Graph) -> Graph:
    edges = frozenset(
        (i, j) for i, j in combinations(range(1, G.n + 1), 2) if (i, j) not in G.edges
    )
    return Graph(G.n, edges)


@lru_cache(maxsize=16384)
def max_clique(G: Graph) -> frozenset:
    """A maximum clique, found by branch-and-bound with a greedy-coloring bound.

    Deterministic: candidates are always processed in sorted order, so ties
    resolve the same way on every run.
    """
    if G.n == 0:
        return frozenset()
    adj = G.adjacency
    best: list[int] = []

    def expand(clique: list[int], candidates: set[int]):
        nonlocal best
        if not candidates:
            if len(clique) > len(best):
                best = list(clique)
            return
        # Greedy coloring of the candidate set; the color index of v bounds
        # the largest clique inside {v} plus earlier-colored candidates.
        color_of: dict[int, int] = {}
        classes: list[set[int]] = []
        for v in sorted(candidates):
            for ci, cls in enumerate(classes):
                if not (adj[v] & cls):
                    cls.add(v)
                    color_of[v] = ci + 1
                    break
            else:
                classes.append({v})
                color_of[v] = len(classes)
        ordered = sorted(candidates, key=lambda v: (color_of[v], v))
        remaining = set(candidates)
        for v in reversed(ordered):
            if len(clique) + color_of[v] <= len(best):
                return
            clique.append(v)
            expand(clique, remaining & adj[v])
            clique.pop()
            remaining.discard(v)

    expand([], set(range(1, G.n + 1)))
    return frozenset(best)


def clique_number(G: Graph) -> int:
    return len(max_clique(G))


def max_stable_set(G: Graph) -> frozenset:
    return max_clique(complement(G))


def stability_number(G: Graph) -> int:
    return len(max_stable_set(G))


def has_clique(G: Graph, k: int) -> bool:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return clique_number(G) >= k


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """All labeled graphs on n vertices with at least one edge.

    Exhaustive over edge subsets (2^(n choose 2) - 1 graphs), so capped at
    n <= 6.
    """
    if n < 2:
        raise ValueError(f"need n >= 2 for a graph with an edge, got {n}")
    if n > 6:
        raise ValueError(f"exhaustive enumeration capped at n <= 6, got {n}")
    pairs = list(combinations(range(1, n + 1), 2))
    for mask in range(1, 1 << len(pairs)):
        edges = frozenset(p for b, p in enumerate(pairs) if mask >> b & 1)
        yield Graph(n, edges)
