"""Closed-form bounds on the number of independent sets, in log2 units."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .counting import BigCount, BudgetExhausted, count_independent_sets, independence_number
from .graph import Graph


def _log2_binom_sum(n: int, upto: int) -> float:
    return math.log2(sum(math.comb(n, i) for i in range(upto + 1)))


def formula_bounds(n: int, t) -> dict[str, float | None]:
    """Bounds that depend only on ``n`` and ``t``.

    ``prop_log2`` and ``main_log2`` need ``t > 0``; they are ``None`` otherwise.
    """
    t = float(t)
    out = {"turan_subset_log2": n / (t + 1), "prop_log2": None, "main_log2": None}
    if t > 0:
        lt = math.log2(t)
        out["prop_log2"] = n / t * lt / 250
        out["main_log2"] = n / (2400 * t) * lt * lt
    return out


@dataclass
class BoundsReport:
    n: int
    t: Fraction
    max_degree: int
    triangle_free: bool
    turan_subset_log2: float
    prop_log2: float | None
    main_log2: float | None
    neighborhood_log2: float
    combined_log2: float
    alpha: int | None = None
    exact: BigCount | None = None
    upper_sum_log2: float | None = None
    upper_simple_log2: float | None = None  # log2(2 C(n, alpha)); valid when alpha <= n/4
    hypotheses: dict[str, bool] = field(default_factory=dict)

    @property
    def exact_log2(self) -> float | None:
        return None if self.exact is None else self.exact.log2


def evaluate_bounds(g: Graph, with_exact: bool = True, budget: int | None = None,
                    workers: int = 1) -> BoundsReport:
    n, t = g.n, g.t
    if n < 1:
        raise ValueError("bounds need at least one vertex")
    f = formula_bounds(n, t)
    delta = g.max_degree()
    tri_free = g.is_triangle_free()
    combined = delta if f["main_log2"] is None else max(delta, f["main_log2"])
    report = BoundsReport(
        n=n, t=t, max_degree=delta, triangle_free=tri_free,
        turan_subset_log2=f["turan_subset_log2"], prop_log2=f["prop_log2"],
        main_log2=f["main_log2"], neighborhood_log2=float(delta), combined_log2=float(combined),
    )
    report.hypotheses = {
        "triangle_free": tri_free,
        "prop_range": 2 <= t <= Fraction(n, 800),
        "main_regime": tri_free and t > 2**100,
        "neighborhood": tri_free,
        "exact_available": False,
    }
    if with_exact:
        try:
            report.exact = count_independent_sets(g, budget, workers)
            report.alpha = independence_number(g, budget, workers)
        except BudgetExhausted:
            report.exact = report.alpha = None
    if report.alpha is not None:
        report.hypotheses["exact_available"] = True
        report.hypotheses["alpha_le_n_over_4"] = 4 * report.alpha <= n
        report.upper_sum_log2 = _log2_binom_sum(n, report.alpha)
        report.upper_simple_log2 = 1 + math.log2(math.comb(n, report.alpha))
    return report


@dataclass
class SandwichVerdict:
    count: BigCount
    alpha: int
    checks: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def verify_sandwich(g: Graph, budget: int | None = None, workers: int = 1) -> SandwichVerdict:
    """Check ``2^(n/(t+1)) <= 2^alpha <= i(G) <= sum_{i<=alpha} C(n, i)`` exactly.

    Triangle-free graphs also get ``i(G) >= 2^Δ`` (the largest neighbourhood is
    independent) and, when ``alpha <= n/4``, the simplified ``i(G) <= 2 C(n, alpha)``.
    Raises :class:`BudgetExhausted` if the exact count is out of reach.
    """
    n, t = g.n, g.t
    count = count_independent_sets(g, budget, workers)
    alpha = independence_number(g, budget, workers)
    i = count.value
    checks = {
        "i >= 2^alpha": i >= 1 << alpha,
        "alpha >= n/(t+1)": alpha * (t + 1) >= n,
        "i <= sum C(n, j), j <= alpha": i <= sum(math.comb(n, j) for j in range(alpha + 1)),
    }
    if 4 * alpha <= n:
        checks["i <= 2 C(n, alpha)"] = i <= 2 * math.comb(n, alpha)
    if g.is_triangle_free() and n:
        hub = max(g.vertices(), key=g.degree)
        checks["max-degree neighbourhood independent"] = g.is_independent(g.adj(hub))
        checks["i >= 2^maxdeg"] = i >= 1 << g.max_degree()
    return SandwichVerdict(count, alpha, checks)
