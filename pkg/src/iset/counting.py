"""Exact independent-set counting.

All three quantities (the count i(G), the independence number and the
size profile) come out of one branching engine

    f(G) = f(G - v) + x * f(G - N[v])

evaluated in a different algebra each time. Connected components multiply,
isolated vertices contribute ``(1 + x)`` each, pendant vertices are
eliminated exactly before any branching happens, and cliques are summed
directly.
"""

from __future__ import annotations

import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import Graph

DEFAULT_BUDGET = 10**8
BRUTE_FORCE_MAX_N = 25


class BudgetExhausted(RuntimeError):
    """The branching search visited more nodes than allowed."""


def default_budget() -> int:
    raw = os.environ.get("ISET_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class BigCount:
    """Exact nonnegative count with a log2 view."""

    value: int

    @property
    def log2(self) -> float:
        # math.log2 handles ints beyond float range without overflow
        return math.log2(self.value) if self.value > 0 else -math.inf

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class SizeProfile:
    """``coefficients[j]`` is the number of independent sets of size ``j``."""

    coefficients: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.coefficients)

    @property
    def alpha(self) -> int:
        return len(self.coefficients) - 1


# -- algebras ----------------------------------------------------------------

class _CountAlgebra:
    one = 1

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def shift(a):
        return a

    @staticmethod
    def isolated(m):
        return 1 << m


class _AlphaAlgebra:
    one = 0

    @staticmethod
    def add(a, b):
        return max(a, b)

    @staticmethod
    def mul(a, b):
        return a + b

    @staticmethod
    def shift(a):
        return a + 1

    @staticmethod
    def isolated(m):
        return m


class _PolyAlgebra:
    one = (1,)

    @staticmethod
    def add(a, b):
        if len(a) < len(b):
            a, b = b, a
        return tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a))

    @staticmethod
    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return tuple(out)

    @staticmethod
    def shift(a):
        return (0,) + a

    @staticmethod
    def isolated(m):
        return tuple(math.comb(m, j) for j in range(m + 1))


_ALGEBRAS = {"count": _CountAlgebra, "alpha": _AlphaAlgebra, "poly": _PolyAlgebra}


# -- branching engine --------------------------------------------------------

class _Solver:
    """Branching over vertex-weighted subproblems.

    Each live vertex carries a pair of algebra values: the factor it
    contributes when left out of the independent set and when taken. Vertices
    default to ``(one, x)``. A vertex of degree one is folded into its
    neighbour exactly, so trees vanish without branching.
    """

    def __init__(self, adj: Sequence[frozenset], algebra, budget: int):
        self.adj = adj
        self.alg = algebra
        self.budget = budget
        self.nodes = 0
        self.x = algebra.shift(algebra.one)

    def components(self, s: frozenset) -> list[frozenset]:
        adj = self.adj
        left = set(s)
        out = []
        while left:
            root = left.pop()
            comp = [root]
            stack = [root]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w in left:
                        left.remove(w)
                        comp.append(w)
                        stack.append(w)
            out.append(frozenset(comp))
        return out

    def solve_set(self, s: frozenset, w_out: dict, w_in: dict):
        alg = self.alg
        result = alg.one
        singles = 0
        for comp in self.components(s):
            if len(comp) == 1 and comp.isdisjoint(w_out) and comp.isdisjoint(w_in):
                singles += 1
            else:
                result = alg.mul(result, self.solve_component(comp, w_out, w_in))
        if singles:
            result = alg.mul(result, alg.isolated(singles))
        return result

    def solve_component(self, comp: frozenset, w_out: dict, w_in: dict):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted(f"node budget of {self.budget} exhausted")
        alg, adj, one, x = self.alg, self.adj, self.alg.one, self.x
        live = set(comp)
        deg = {v: len(adj[v] & comp) for v in comp}
        w_out = {v: w_out[v] for v in comp if v in w_out}
        w_in = {v: w_in[v] for v in comp if v in w_in}
        factor = one

        # fold leaves into their neighbours
        leaves = sorted(v for v, d in deg.items() if d <= 1)
        while leaves:
            u = leaves.pop()
            if u not in live:
                continue
            out_u, in_u = w_out.pop(u, one), w_in.pop(u, x)
            live.discard(u)
            if deg[u] == 0:
                factor = alg.mul(factor, alg.add(out_u, in_u))
                continue
            (v,) = [w for w in adj[u] if w in live]
            w_in[v] = alg.mul(w_in.get(v, x), out_u)
            w_out[v] = alg.mul(w_out.get(v, one), alg.add(out_u, in_u))
            deg[v] -= 1
            if deg[v] <= 1:
                leaves.append(v)
        if not live:
            return factor
        size = len(live)
        if all(deg[v] == size - 1 for v in live):
            # clique: take no vertex, or exactly one (prefix/suffix products of the outs)
            order = sorted(live)
            outs = [w_out.get(v, one) for v in order]
            prefix = [one]
            for o in outs:
                prefix.append(alg.mul(prefix[-1], o))
            total = prefix[-1]
            suffix = one
            for j in range(size - 1, -1, -1):
                term = alg.mul(alg.mul(prefix[j], suffix), w_in.get(order[j], x))
                total = alg.add(total, term)
                suffix = alg.mul(suffix, outs[j])
            return alg.mul(factor, total)

        # every live vertex now has degree >= 2; branch on a maximum-degree one
        best_v = min(live, key=lambda v: (-deg[v], v))
        rest = frozenset(live)
        without_v = rest - {best_v}
        without_closed = without_v - adj[best_v]
        taken = w_in.get(best_v, x)
        for u in adj[best_v] & without_v:
            taken = alg.mul(taken, w_out.get(u, one))
        branch_out = alg.mul(w_out.get(best_v, one), self.solve_set(without_v, w_out, w_in))
        branch_in = alg.mul(taken, self.solve_set(without_closed, w_out, w_in))
        return alg.mul(factor, alg.add(branch_out, branch_in))


def _solve_component_task(args):
    adj, comp, kind, budget = args
    solver = _Solver(adj, _ALGEBRAS[kind], budget)
    return solver.solve_component(comp, {}, {})


def _evaluate(g: Graph, kind: str, budget: int | None, workers: int):
    budget = default_budget() if budget is None else budget
    alg = _ALGEBRAS[kind]
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 4 * g.n + 1000))
    try:
        if workers <= 1:
            return _Solver(g._adj, alg, budget).solve_set(frozenset(range(g.n)), {}, {})
        comps = g.connected_components()
        big = [c for c in comps if len(c) > 1]
        result = alg.isolated(len(comps) - len(big))
        tasks = []
        for c in big:
            sub = g.induced(c)
            tasks.append((sub._adj, frozenset(range(sub.n)), kind, budget))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # map preserves order, so the fold is identical to the serial one
            for part in pool.map(_solve_component_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))):
                result = alg.mul(result, part)
        return result
    finally:
        sys.setrecursionlimit(old_limit)


def count_independent_sets(g: Graph, budget: int | None = None, workers: int = 1) -> BigCount:
    """Exact number of independent sets of ``g``, the empty set included.

    Raises :class:`BudgetExhausted` rather than returning a partial number.
    """
    return BigCount(_evaluate(g, "count", budget, workers))


def independence_number(g: Graph, budget: int | None = None, workers: int = 1) -> int:
    return _evaluate(g, "alpha", budget, workers)


def size_profile(g: Graph, budget: int | None = None, workers: int = 1) -> SizeProfile:
    coeffs = _evaluate(g, "poly", budget, workers)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    return SizeProfile(tuple(coeffs))


# -- oracle ------------------------------------------------------------------

def _independent_mask(g: Graph) -> np.ndarray:
    """Boolean array over all 2^n vertex subsets (bit i = vertex i)."""
    n = g.n
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force is capped at n <= {BRUTE_FORCE_MAX_N}, got n={n}")
    ok = np.ones(1, dtype=bool)
    for i in range(n):
        lower = sum(1 << w for w in g.adj(i) if w < i)
        masks = np.arange(1 << i, dtype=np.int64)
        ok = np.concatenate([ok, ok & ((masks & lower) == 0)])
    return ok


def brute_force_count(g: Graph) -> BigCount:
    """Count independent sets by checking every vertex subset."""
    return BigCount(int(_independent_mask(g).sum()))


def brute_force_profile(g: Graph) -> SizeProfile:
    ok = _independent_mask(g)
    sizes = np.array([bin(m).count("1") for m in range(len(ok))])[ok]
    coeffs = np.bincount(sizes)
    return SizeProfile(tuple(int(c) for c in coeffs))
