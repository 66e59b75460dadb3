"""Immutable simple undirected graphs on dense integer vertices.

Vertex subsets (sampled sets, survivor sets, independent sets) are plain
``frozenset[int]`` values over the host graph's indices.
"""

from __future__ import annotations

import warnings
from collections import deque
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

VertexSet = frozenset


class GraphError(ValueError):
    """Invalid graph construction or vertex reference."""


class ParseError(GraphError):
    """Malformed edge-list text."""


class DuplicateEdgeWarning(UserWarning):
    pass


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``labels`` maps each local vertex to its index in the graph this one was
    induced from (identity for top-level graphs).
    """

    __slots__ = ("_adj", "_m", "_labels")

    def __init__(self, adjacency: Sequence[frozenset], labels: Sequence[int] | None = None):
        self._adj = tuple(adjacency)
        self._m = sum(len(a) for a in self._adj) // 2
        self._labels = tuple(labels) if labels is not None else None

    @classmethod
    def from_edge_list(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop ({u}, {v}) is not allowed")
            adj[u].add(v)
            adj[v].add(u)
        return cls([frozenset(a) for a in adj])

    # -- basic statistics --------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def e(self) -> int:
        return self._m

    @property
    def t(self) -> Fraction:
        """Exact average degree ``2e/n`` (0 for the null graph)."""
        if not self._adj:
            return Fraction(0)
        return Fraction(2 * self._m, len(self._adj))

    @property
    def labels(self) -> tuple[int, ...]:
        if self._labels is None:
            return tuple(range(self.n))
        return self._labels

    def adj(self, v: int) -> frozenset:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, a in enumerate(self._adj) for v in sorted(a) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.e})"

    def __getstate__(self):
        return (self._adj, self._labels)

    def __setstate__(self, state):
        self._adj, self._labels = state
        self._m = sum(len(a) for a in self._adj) // 2

    # -- derived structure -------------------------------------------------

    def _check_members(self, s: Iterable[int]) -> frozenset:
        s = frozenset(s)
        bad = [v for v in s if not 0 <= v < self.n]
        if bad:
            raise GraphError(f"vertex {min(bad)} outside 0..{self.n - 1}")
        return s

    def induced(self, s: Iterable[int]) -> "Graph":
        """Subgraph induced on ``s``, relabelled ``0..|s|-1`` in increasing order.

        The result's ``labels`` give the original index of each vertex, composed
        through any earlier induction.
        """
        members = sorted(self._check_members(s))
        local = {v: i for i, v in enumerate(members)}
        adj = [frozenset(local[w] for w in self._adj[v] if w in local) for v in members]
        host = self.labels
        return Graph(adj, [host[v] for v in members])

    def survivor_set(self, h: Iterable[int]) -> frozenset:
        """Vertices outside ``h`` with no neighbour in ``h``: ``V \\ (h ∪ N(h))``."""
        h = self._check_members(h)
        removed = set(h)
        for v in h:
            removed |= self._adj[v]
        return frozenset(v for v in range(self.n) if v not in removed)

    def low_degree_set(self, cap) -> frozenset:
        """Vertices of degree at most ``cap`` (compared exactly when rational)."""
        cap = Fraction(cap)
        return frozenset(v for v in range(self.n) if len(self._adj[v]) <= cap)

    def connected_components(self) -> list[frozenset]:
        """Components ordered by their smallest vertex."""
        seen = [False] * self.n
        out = []
        for root in range(self.n):
            if seen[root]:
                continue
            seen[root] = True
            comp = [root]
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            out.append(frozenset(comp))
        return out

    def is_triangle_free(self) -> bool:
        for u in range(self.n):
            au = self._adj[u]
            for v in au:
                if v > u and not au.isdisjoint(self._adj[v]):
                    return False
        return True

    def is_independent(self, s: Iterable[int]) -> bool:
        s = self._check_members(s)
        return all(self._adj[v].isdisjoint(s) for v in s)

    def internal_edges(self, s: Iterable[int]) -> int:
        s = frozenset(s)
        return sum(len(self._adj[v] & s) for v in s) // 2

    def to_original(self, s: Iterable[int]) -> frozenset:
        lab = self.labels
        return frozenset(lab[v] for v in s)


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    return Graph.from_edge_list(n, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    adj = []
    offset = 0
    for g in graphs:
        adj.extend(frozenset(w + offset for w in g.adj(v)) for v in g.vertices())
        offset += g.n
    return Graph(adj)


def brute_force_triangle_free(g: Graph) -> bool:
    return not any(
        g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)
        for a, b, c in combinations(range(g.n), 3)
    )


# -- small named graphs ------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph.from_edge_list(n, [])


def complete_graph(n: int) -> Graph:
    return Graph.from_edge_list(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph.from_edge_list(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edge_list(10, outer + spokes + inner)


# -- edge-list text format ---------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` lines are comments.

    Duplicate edges are dropped with a :class:`DuplicateEdgeWarning`.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            rows.append((lineno, int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseError(f"line {lineno}: expected two integers, got {raw!r}") from None
    if not rows:
        raise ParseError("missing header line 'n m'")
    _, n, m = rows[0]
    if n < 0 or m < 0:
        raise ParseError(f"header has negative counts: n={n} m={m}")
    body = rows[1:]
    if len(body) != m:
        raise ParseError(f"header declares {m} edges but {len(body)} edge lines follow")
    seen = set()
    edges = []
    for lineno, u, v in body:
        if u == v:
            raise ParseError(f"line {lineno}: self-loop ({u}, {v})")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {lineno}: edge ({u}, {v}) outside 0..{n - 1}")
        key = (min(u, v), max(u, v))
        if key in seen:
            warnings.warn(f"line {lineno}: duplicate edge {key} ignored", DuplicateEdgeWarning)
            continue
        seen.add(key)
        edges.append(key)
    return Graph.from_edge_list(n, edges)


def read_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{g.n} {g.e}")
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g, comment))
