"""Seeded random and structured graph families used as test beds."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .graph import Graph


def derive_seed(seed: int, index: int) -> int:
    """64-bit seed for sub-task ``index`` of a run seeded with ``seed``."""
    return int(np.random.SeedSequence([seed, index]).generate_state(1, dtype=np.uint64)[0])


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")


def gen_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdős–Rényi G(n, p)."""
    _check_p(p)
    rng = np.random.default_rng(seed)
    adj = [set() for _ in range(n)]
    for u in range(n - 1):
        hits = np.flatnonzero(rng.random(n - u - 1) < p) + (u + 1)
        for v in hits.tolist():
            adj[u].add(v)
            adj[v].add(u)
    return Graph([frozenset(a) for a in adj])


def gen_bipartite(n_left: int, n_right: int, p: float, seed: int) -> Graph:
    """Random bipartite graph; left side is ``0..n_left-1``. Always triangle-free."""
    _check_p(p)
    rng = np.random.default_rng(seed)
    n = n_left + n_right
    adj = [set() for _ in range(n)]
    for u in range(n_left):
        hits = np.flatnonzero(rng.random(n_right) < p) + n_left
        for v in hits.tolist():
            adj[u].add(v)
            adj[v].add(u)
    return Graph([frozenset(a) for a in adj])


def gen_triangle_free_process(n: int, seed: int) -> Graph:
    """Triangle-free process run to saturation.

    Every pair is offered once in uniformly random order and kept unless it
    closes a triangle. A rejected pair stays rejected as edges only accumulate,
    so one pass yields a maximal triangle-free graph.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    rng = np.random.default_rng(seed)
    pairs = list(combinations(range(n), 2))
    adj = [set() for _ in range(n)]
    for idx in rng.permutation(len(pairs)).tolist():
        u, v = pairs[idx]
        if adj[u].isdisjoint(adj[v]):
            adj[u].add(v)
            adj[v].add(u)
    return Graph([frozenset(a) for a in adj])


def gen_clique_union(r: int, k: int) -> Graph:
    """``r`` disjoint copies of K_k (the complement of the Turán graph T(rk, r))."""
    if r < 1 or k < 1:
        raise ValueError(f"need r, k >= 1, got r={r} k={k}")
    adj = []
    for b in range(0, r * k, k):
        block = frozenset(range(b, b + k))
        adj.extend(block - {v} for v in range(b, b + k))
    return Graph(adj)


def is_maximal_triangle_free(g: Graph) -> bool:
    """Every non-edge would close a triangle if added."""
    for u, v in combinations(range(g.n), 2):
        if not g.has_edge(u, v) and g.adj(u).isdisjoint(g.adj(v)):
            return False
    return True


# -- generator spec strings --------------------------------------------------

_SPECS = {
    "gnp": (("n", int), ("p", float)),
    "bipartite": (("l", int), ("r", int), ("p", float)),
    "tfp": (("n", int),),
    "clique-union": (("r", int), ("k", int)),
}


class SpecError(ValueError):
    pass


def parse_spec(spec: str) -> tuple[str, dict]:
    """Parse ``name:key=val,key=val`` into ``(name, params)``."""
    name, _, rest = spec.partition(":")
    name = name.strip()
    if name not in _SPECS:
        raise SpecError(f"unknown generator {name!r}; choose from {sorted(_SPECS)}")
    raw = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, val = item.partition("=")
        if not eq:
            raise SpecError(f"expected key=value, got {item!r}")
        raw[key.strip()] = val.strip()
    fields = dict(_SPECS[name])
    unknown = set(raw) - set(fields)
    missing = set(fields) - set(raw)
    if unknown or missing:
        raise SpecError(
            f"{name} takes {', '.join(fields)}; "
            + (f"unknown {sorted(unknown)} " if unknown else "")
            + (f"missing {sorted(missing)}" if missing else "")
        )
    try:
        params = {k: fields[k](v) for k, v in raw.items()}
    except ValueError as exc:
        raise SpecError(f"bad value in {spec!r}: {exc}") from None
    return name, params


def build_from_spec(spec: str, seed: int) -> Graph:
    name, p = parse_spec(spec)
    if name == "gnp":
        return gen_gnp(p["n"], p["p"], seed)
    if name == "bipartite":
        return gen_bipartite(p["l"], p["r"], p["p"], seed)
    if name == "tfp":
        return gen_triangle_free_process(p["n"], seed)
    return gen_clique_union(p["r"], p["k"])
