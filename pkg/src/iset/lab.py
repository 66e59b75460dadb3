"""Monte-Carlo checks of the sampling lemma and the distinct-outcome experiment.

A trial draws a uniform ``k``-subset ``H`` of the low-degree pool
``{v : deg(v) <= 10 t}`` and records ``n(M)``, ``e(M)`` and ``e(H)`` for the
survivor graph ``M = V \\ (H ∪ N(H))``. Every trial seeds its own generator
from ``(seed, trial index)``, so results do not depend on how trials are
split across workers.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from ._parallel import chunk_ranges, ordered_map
from .aks import AksParams, HypothesisWarning, PoolExhausted, ratio_factor, run_aks
from .generators import derive_seed
from .graph import Graph

OBSERVABLES = ("n_M", "e_M", "e_H")

CONSISTENT = "consistent"
CONDITIONAL = "consistent (conditional)"
VIOLATED = "violated"
UNMET = "hypotheses-unmet"


@dataclass(frozen=True)
class ObservableStats:
    mean: float
    sample_variance: float
    std_error: float
    variance_std_error: float  # standard error of the sample variance
    confidence_radius: float


@dataclass(frozen=True)
class EnsembleStats:
    trials: int
    sigma_mult: float
    observables: dict[str, ObservableStats]

    def __getitem__(self, name: str) -> ObservableStats:
        return self.observables[name]


@dataclass(frozen=True)
class ClaimRecord:
    claim: str
    form: str
    direction: str  # "lower": estimate should exceed bound; "upper": stay below; "equal"
    bound: float | None
    estimate: float
    std_error: float
    margin: float | None  # in std-error units, positive = on the claimed side
    verdict: str


@dataclass
class LemmaReport:
    n: int
    t: Fraction
    k: int
    trials: int
    seed: int
    sigma_mult: float
    c10: float
    triangle_free: bool
    pool_size: int
    delta: float
    nu: float
    stats: EnsembleStats
    claims: list[ClaimRecord] = field(default_factory=list)

    @property
    def violated(self) -> list[ClaimRecord]:
        return [c for c in self.claims if c.verdict == VIOLATED]


def low_degree_pool(g: Graph, factor: float = 10.0) -> list[int]:
    return sorted(g.low_degree_set(Fraction(factor) * g.t))


def exact_expected_edges(g: Graph, candidates, k: int) -> Fraction:
    """E[e(H)] for a uniform ``k``-subset ``H`` of ``candidates``."""
    pool = frozenset(candidates)
    p = len(pool)
    if p < k:
        raise PoolExhausted(f"candidate pool of {p} vertices cannot supply k={k}")
    if k < 2:
        return Fraction(0)
    return Fraction(g.internal_edges(pool) * k * (k - 1), p * (p - 1))


# -- sampling ------------------------------------------------------------------

def _run_trials(task):
    g, pool, k, seed, trials = task
    n, e = g.n, g.e
    out = np.empty((len(trials), 3), dtype=np.int64)
    adj = [g.adj(v) for v in g.vertices()]
    for row, idx in enumerate(trials):
        rng = np.random.default_rng(np.random.SeedSequence([seed, idx]))
        h = [pool[i] for i in rng.choice(len(pool), size=k, replace=False).tolist()]
        hs = frozenset(h)
        e_h = sum(len(adj[v] & hs) for v in h) // 2
        removed = set(h)
        for v in h:
            removed |= adj[v]
        # edges of M = all edges minus those touching the removed set
        touching = sum(len(adj[x]) for x in removed) - sum(len(adj[x] & removed) for x in removed) // 2
        out[row] = (n - len(removed), e - touching, e_h)
    return out


def sample_lemma_observables(g: Graph, k: int, trials: int, seed: int, workers: int = 1) -> np.ndarray:
    """``trials x 3`` integer array of ``(n(M), e(M), e(H))`` in trial order."""
    pool = low_degree_pool(g)
    if len(pool) < k or k < 1:
        raise PoolExhausted(f"low-degree pool of {len(pool)} vertices cannot supply k={k}")
    chunks = chunk_ranges(trials, max(1, workers) * 4 if workers > 1 else 1)
    parts = ordered_map(_run_trials, [(g, pool, k, seed, r) for r in chunks], workers)
    return np.concatenate(parts) if parts else np.empty((0, 3), dtype=np.int64)


def _stats(column: np.ndarray, sigma_mult: float) -> ObservableStats:
    x = column.astype(float).tolist()
    n = len(x)
    mean = math.fsum(x) / n
    dev2 = [(v - mean) ** 2 for v in x]
    var = math.fsum(dev2) / (n - 1)
    m4 = math.fsum(d * d for d in dev2) / n
    se = math.sqrt(var / n)
    var_se = math.sqrt(max(m4 - var * var, 0.0) / n)
    return ObservableStats(mean, var, se, var_se, sigma_mult * se)


def summarize(samples: np.ndarray, sigma_mult: float = 4.0) -> EnsembleStats:
    if len(samples) < 2:
        raise ValueError("need at least two trials")
    return EnsembleStats(
        len(samples), sigma_mult,
        {name: _stats(samples[:, j], sigma_mult) for j, name in enumerate(OBSERVABLES)},
    )


def mc_lemma_stats(g: Graph, k: int, trials: int, seed: int,
                   sigma_mult: float = 4.0, workers: int = 1) -> EnsembleStats:
    return summarize(sample_lemma_observables(g, k, trials, seed, workers), sigma_mult)


# -- bound checks ----------------------------------------------------------------

def _judge(claim, form, direction, bound, estimate, se, sigma, applicable) -> ClaimRecord:
    if bound is not None and not math.isfinite(bound):
        applicable = False
    if direction == "lower":
        diff = estimate - bound if bound is not None else None
    elif direction == "upper":
        diff = bound - estimate if bound is not None else None
    else:
        diff = -abs(estimate - bound)
    if diff is None:
        margin = None
    elif se > 0:
        margin = diff / se
    else:
        margin = math.inf if diff >= 0 else -math.inf
    if not applicable:
        verdict = UNMET
    elif diff < -sigma * se:
        verdict = VIOLATED
    else:
        verdict = CONSISTENT
    return ClaimRecord(claim, form, direction, bound, estimate, se, margin, verdict)


def check_lemma_bounds(g: Graph, k: int, trials: int, seed: int, sigma_mult: float = 4.0,
                       c10: float = 1.0, workers: int = 1) -> LemmaReport:
    """Compare empirical survivor statistics against each bound of the sampling lemma.

    Sharp forms hold for every ``k``; the coarse forms additionally need
    ``k <= n/(100 t)``. Variance claims are judged with the standard error of
    the sample variance. The ratio claim is checked per trial: whenever
    ``e(M) < (1+delta) E[e(M)]`` and ``n(M) > (1-delta) E[n(M)]`` hold, the
    sample must satisfy ``n(M)/t(M) > nu n/t``.
    """
    samples = sample_lemma_observables(g, k, trials, seed, workers)
    stats = summarize(samples, sigma_mult)
    n, t = g.n, g.t
    tf = float(t)
    tri_free = g.is_triangle_free()
    pool = low_degree_pool(g)
    small_k = 100 * k * t <= n
    delta = 800 * math.sqrt(tf / n)
    nu = ratio_factor(n, t, c10)
    report = LemmaReport(n, t, k, trials, seed, sigma_mult, c10, tri_free, len(pool), delta, nu, stats)

    def add(claim, form, direction, bound, obs, applicable=True, variance=False):
        s = stats[obs]
        est, se = (s.sample_variance, s.variance_std_error) if variance else (s.mean, s.std_error)
        report.claims.append(
            _judge(claim, form, direction, bound, est, se, sigma_mult, applicable and tri_free))

    def safe(expr):
        try:
            return float(expr())
        except (ZeroDivisionError, ValueError, OverflowError):
            return None

    b = safe(lambda: n * (1 - k / (n - tf)) ** (tf + 1)) if n - tf > 0 else None
    add("E[n(M)]", "sharp", "lower", b, "n_M", b is not None)
    add("E[n(M)]", "coarse", "lower", 0.9 * n, "n_M", small_k)

    b = safe(lambda: n * tf / 2 * (1 - k / (n - 20 * tf)) ** (20 * tf + 1)) if n - 20 * tf > k else None
    add("E[e(M)]", "sharp", "lower", b, "e_M", b is not None)
    add("E[e(M)]", "coarse", "lower", n * tf / 10, "e_M", small_k)

    exact = float(exact_expected_edges(g, pool, k))
    add("E[e(H)]", "pool-exact", "equal", exact, "e_H")
    add("E[e(H)]", "upper", "upper", tf * k * k / n, "e_H")

    den = n - k - 20 * tf - 2
    b = 2 * n * k * (tf + 1) * (10 * tf + 1) / den if den > 0 else None
    add("Var[n(M)]", "sharp", "upper", b, "n_M", b is not None, variance=True)
    add("Var[n(M)]", "coarse", "upper", n * tf, "n_M", small_k, variance=True)

    add("Var[e(M)]", "sharp", "upper", 2400 * k * tf ** 4, "e_M", variance=True)
    add("Var[e(M)]", "coarse", "upper", 40 * n * tf ** 3, "e_M", small_k, variance=True)

    add("Var[e(H)]", "sharp", "upper", tf * k * k * (10 * k + n) / n ** 2, "e_H", variance=True)

    report.claims.append(_ratio_claim(samples, stats, n, tf, delta, nu, tri_free))
    return report


def _ratio_claim(samples, stats, n, t, delta, nu, tri_free) -> ClaimRecord:
    n_m, e_m = samples[:, 0], samples[:, 1]
    hit = (e_m < (1 + delta) * stats["e_M"].mean) & (n_m > (1 - delta) * stats["n_M"].mean)
    held = 0
    checked = int(hit.sum())
    for nm, em in zip(n_m[hit].tolist(), e_m[hit].tolist()):
        if nm == 0:
            continue
        if em == 0 or t == 0 or nm * nm / (2 * em) > nu * n / t:
            held += 1
    frac = held / checked if checked else 1.0
    if not tri_free:
        verdict = UNMET
    elif held == checked:
        verdict = CONDITIONAL
    else:
        verdict = VIOLATED
    return ClaimRecord("n(M)/t(M) > nu n/t", "conditional", "lower", 1.0, frac, 0.0,
                       None if not checked else (math.inf if held == checked else -math.inf), verdict)


# -- distinct outcomes ---------------------------------------------------------------

def _distinct_chunk(task):
    g, params, seed, runs = task
    seen = set()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisWarning)
        for r in runs:
            out = run_aks(g, replace(params, seed=derive_seed(seed, r)))
            seen.add(out.independent_set)
    return seen


def distinct_sets_experiment(g: Graph, params: AksParams, runs: int, seed: int, workers: int = 1) -> int:
    """Number of distinct independent sets returned over ``runs`` seeded runs."""
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs}")
    chunks = chunk_ranges(runs, max(1, workers) * 4 if workers > 1 else 1)
    seen = set()
    for part in ordered_map(_distinct_chunk, [(g, params, seed, r) for r in chunks], workers):
        seen |= part
    return len(seen)
