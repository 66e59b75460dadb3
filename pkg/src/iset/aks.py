"""Iterated sparse-sampling independent set algorithm for triangle-free graphs.

Each round draws a uniform ``k``-subset ``H`` of the low-degree vertices of
the current survivor graph, keeps it if it is nearly edgeless and the
survivor graph ``M = V \\ (H ∪ N(H))`` stays large with a good
vertices-to-degree ratio, and recurses on ``M``. The isolated vertices of
all kept samples form the output. When the ratio factor degrades too far
(or no acceptable sample is found) the algorithm returns a greedy
Turán-size independent set of the current graph instead.
"""

from __future__ import annotations

import enum
import heapq
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
import numpy as np

from .graph import Graph


class HypothesisWarning(UserWarning):
    """The input lies outside the regime where the algorithm's guarantees are proven."""


class HypothesisError(ValueError):
    pass


class DegenerateInput(ValueError):
    pass


class PoolExhausted(ValueError):
    pass


class FallbackSignal(Exception):
    """No acceptable sample was found; the caller should take the Turán path."""

    def __init__(self, reason: str, attempts: int):
        super().__init__(reason)
        self.reason = reason
        self.attempts = attempts


class Path(enum.Enum):
    TURAN_FALLBACK = "TuranFallback"
    SPARSE_UNION = "SparseUnion"


@dataclass(frozen=True)
class AksParams:
    """Configuration; ``k``, ``R`` and ``nu_floor`` default from the input graph."""

    k: int | None = None
    R: int | None = None
    c10: float = 1.0
    nu_floor: float | None = None
    low_degree_factor: float = 10.0
    edge_cap_factor: Fraction = Fraction(1, 50)
    max_attempts: int = 64
    seed: int = 0
    strict_hypotheses: bool = False

    def __post_init__(self):
        if self.k is not None and self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.R is not None and self.R < 1:
            raise ValueError(f"R must be >= 1, got {self.R}")
        if self.c10 <= 0:
            raise ValueError(f"c10 must be positive, got {self.c10}")
        object.__setattr__(self, "edge_cap_factor", Fraction(self.edge_cap_factor))
        if not 0 < self.edge_cap_factor < 1:
            raise ValueError(f"edge_cap_factor must lie in (0, 1), got {self.edge_cap_factor}")
        if self.max_attempts < 1:
            raise ValueError(f"max_attempts must be >= 1, got {self.max_attempts}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass
class IterationRecord:
    index: int
    n: int
    t: Fraction
    nu: float | None  # None: not evaluated in round 0
    h: frozenset | None = None  # original labels
    e_h: int | None = None
    attempts: int = 0
    accepted: bool = False
    isolated: frozenset = frozenset()
    note: str | None = None

    @property
    def isolated_count(self) -> int:
        return len(self.isolated)


@dataclass
class AksOutcome:
    path: Path
    independent_set: frozenset
    trace: list[IterationRecord]
    completed_iterations: int
    k: int
    R: int
    nu_floor: float
    fallback_reason: str | None = None
    fallback_graph: tuple[int, Fraction] | None = None  # (n, t) of the graph the fallback ran on
    unmet_hypotheses: list[str] = field(default_factory=list)


def ratio_factor(n: int, t, c10: float) -> float:
    """``1 - 1/t - c10*sqrt(t/n)``; an edgeless graph loses nothing (1.0)."""
    if t == 0:
        return 1.0
    return 1.0 - 1.0 / float(t) - c10 * math.sqrt(float(t) / n)


def sparse_sample_step(g: Graph, candidates, k: int, rng: np.random.Generator):
    """Uniform ``k``-subset of ``candidates`` and its internal edge count."""
    pool = candidates if isinstance(candidates, (list, tuple)) else sorted(candidates)
    if k < 1 or len(pool) < k:
        raise PoolExhausted(f"candidate pool of {len(pool)} vertices cannot supply k={k}")
    picks = rng.choice(len(pool), size=k, replace=False)
    h = frozenset(pool[i] for i in picks.tolist())
    return h, g.internal_edges(h)


def extract_isolated(h_graph: Graph) -> frozenset:
    return frozenset(v for v in h_graph.vertices() if h_graph.degree(v) == 0)


def turan_greedy(g: Graph) -> frozenset:
    """Repeatedly take a minimum-degree vertex and delete its closed neighbourhood.

    The result has at least ``ceil(n / (t + 1))`` vertices.
    """
    deg = [g.degree(v) for v in g.vertices()]
    alive = [True] * g.n
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    chosen = []
    while heap:
        d, v = heapq.heappop(heap)
        if not alive[v] or d != deg[v]:
            continue
        chosen.append(v)
        gone = [v] + [u for u in g.adj(v) if alive[u]]
        for u in gone:
            alive[u] = False
        for u in gone:
            for w in g.adj(u):
                if alive[w]:
                    deg[w] -= 1
                    heapq.heappush(heap, (deg[w], w))
    return frozenset(chosen)


def _accepts(g: Graph, h: frozenset, e_h: int, m: frozenset, k: int, params: AksParams, nu: float) -> bool:
    if e_h > params.edge_cap_factor * k:
        return False
    if 2 * len(m) <= g.n:
        return False
    if not m:
        return False
    e_m = g.internal_edges(m)
    if e_m == 0:
        return True
    # n(M)/t(M) > nu * n/t, with t(M) = 2e(M)/n(M); here t > 0 since e(M) > 0
    return len(m) ** 2 / (2 * e_m) > nu * g.n / float(g.t)


def lemma_step(
    g: Graph,
    params: AksParams,
    rng: np.random.Generator,
    *,
    k: int | None = None,
    nu: float | None = None,
    index: int = 0,
):
    """One rejection-sampled round on ``g``.

    Returns ``(h, m, record)`` with ``h`` and ``m`` in ``g``'s local labels and
    the record's sets in original labels. Raises :class:`FallbackSignal` when
    the pool is too small or ``max_attempts`` draws are all rejected.
    """
    k = params.k if k is None else k
    if nu is None:
        nu = ratio_factor(g.n, g.t, params.c10)
    record = IterationRecord(index=index, n=g.n, t=g.t, nu=None)
    pool = sorted(g.low_degree_set(Fraction(params.low_degree_factor) * g.t))
    if k is None or len(pool) < k:
        raise FallbackSignal("pool-exhausted", 0)
    for attempt in range(1, params.max_attempts + 1):
        h, e_h = sparse_sample_step(g, pool, k, rng)
        m = g.survivor_set(h)
        if _accepts(g, h, e_h, m, k, params, nu):
            h_graph = g.induced(h)
            record.h = g.to_original(h)
            record.e_h = e_h
            record.attempts = attempt
            record.accepted = True
            record.isolated = h_graph.to_original(extract_isolated(h_graph))
            return h, m, record
    raise FallbackSignal("attempts-exhausted", params.max_attempts)


def _hypothesis_failures(n: int, t: float) -> list[str]:
    failed = []
    log_n = math.log2(n) if n > 1 else 0.0
    if not n > 2**50:
        failed.append("n > 2^50")
    if not t <= 2 * math.sqrt(n) * log_n:
        failed.append("t <= 2 sqrt(n) log n")
    if not (2**100 < t < math.sqrt(n) * log_n):
        failed.append("2^100 < t < sqrt(n) log n")
    return failed


def resolve_params(g: Graph, params: AksParams) -> tuple[int, int, float]:
    """Concrete ``(k, R, nu_floor)`` for ``g``."""
    t = g.t
    if g.n < 1:
        raise DegenerateInput("degenerate input: graph has no vertices")
    if t <= 1 and (params.k is None or params.R is None):
        raise DegenerateInput(f"degenerate average degree t={float(t):g}: supply explicit k and R")
    if params.k is not None:
        k = params.k
    else:
        k = math.floor(Fraction(g.n) / (200 * t))
        if k == 0:
            raise DegenerateInput("k underflow: supply explicit k")
    if params.R is not None:
        R = params.R
    else:
        R = max(1, math.floor(math.log2(t) / 2))
    if params.nu_floor is not None:
        nu_floor = params.nu_floor
    elif t > 1:
        nu_floor = 1.0 - 1.0 / math.log2(t)
    else:
        nu_floor = -math.inf
    return k, R, nu_floor


def run_aks(g: Graph, params: AksParams = AksParams()) -> AksOutcome:
    k, R, nu_floor = resolve_params(g, params)
    unmet = _hypothesis_failures(g.n, float(g.t))
    if unmet:
        if params.strict_hypotheses:
            raise HypothesisError("hypotheses not met: " + "; ".join(unmet))
        warnings.warn("hypotheses not met: " + "; ".join(unmet), HypothesisWarning, stacklevel=2)
    rng = np.random.default_rng(params.seed)
    trace: list[IterationRecord] = []

    def finish(path, chosen, reason=None, source=None):
        if not g.is_independent(chosen):
            raise AssertionError("produced set is not independent")
        stats = (source.n, source.t) if source is not None else None
        return AksOutcome(path, frozenset(chosen), trace, sum(r.accepted for r in trace),
                          k, R, nu_floor, reason, stats, unmet)

    current = g
    previous: Graph | None = None
    union: set[int] = set()
    for i in range(R):
        nu_i = None
        if i >= 1:
            nu_i = ratio_factor(previous.n, previous.t, params.c10)
            if nu_i <= nu_floor:
                trace.append(IterationRecord(i, current.n, current.t, nu_i, note="nu-floor"))
                return finish(Path.TURAN_FALLBACK, previous.to_original(turan_greedy(previous)),
                              "nu-floor", previous)
        nu_lemma = ratio_factor(current.n, current.t, params.c10)
        try:
            _, m, record = lemma_step(current, params, rng, k=k, nu=nu_lemma, index=i)
        except FallbackSignal as sig:
            trace.append(IterationRecord(i, current.n, current.t, nu_i, attempts=sig.attempts, note=sig.reason))
            return finish(Path.TURAN_FALLBACK, current.to_original(turan_greedy(current)),
                          sig.reason, current)
        record.nu = nu_i
        trace.append(record)
        union |= record.isolated
        previous, current = current, current.induced(m)
    return finish(Path.SPARSE_UNION, union)


def verify_outcome(g: Graph, outcome: AksOutcome, edge_cap_factor=Fraction(1, 50)) -> list[str]:
    """Structural checks on an outcome; returns a list of violations (empty when sound)."""
    problems = []
    if not g.is_independent(outcome.independent_set):
        problems.append("output is not independent")
    accepted = [r for r in outcome.trace if r.accepted]
    for r in accepted:
        if r.e_h > outcome.k * Fraction(edge_cap_factor):
            problems.append(f"round {r.index}: e(H)={r.e_h} exceeds the edge cap")
        if r.isolated_count < outcome.k - 2 * r.e_h:
            problems.append(f"round {r.index}: isolated count below k - 2e(H)")
    hs = [r.h for r in accepted]
    for a in range(len(hs)):
        for b in range(a + 1, len(hs)):
            if hs[a] & hs[b]:
                problems.append(f"samples {a} and {b} overlap")
            if any(g.adj(v) & hs[b] for v in hs[a]):
                problems.append(f"samples {a} and {b} are adjacent")
    if outcome.path is Path.SPARSE_UNION:
        need = sum(outcome.k - 2 * r.e_h for r in accepted)
        if len(outcome.independent_set) < need:
            problems.append(f"|I|={len(outcome.independent_set)} below sum of k - 2e(H_i) = {need}")
    else:
        n_f, t_f = outcome.fallback_graph
        if len(outcome.independent_set) < math.ceil(n_f / (t_f + 1)):
            problems.append(f"fallback set smaller than ceil({n_f}/(t+1))")
    return problems
