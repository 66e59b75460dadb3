import math
from collections import Counter
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from iset.aks import (
    AksParams, DegenerateInput, FallbackSignal, HypothesisError, Path, PoolExhausted, extract_isolated,
    lemma_step, ratio_factor, resolve_params, run_aks, sparse_sample_step, turan_greedy, verify_outcome,
)
from iset.generators import gen_bipartite, gen_clique_union, gen_gnp, gen_triangle_free_process
from iset.graph import (
    complete_graph, cycle_graph, disjoint_union, empty_graph, from_edge_list, petersen_graph,
)


def rng(seed=0):
    return np.random.default_rng(seed)


# -- sampling step -------------------------------------------------------------

def test_sample_step_examples():
    h, e_h = sparse_sample_step(empty_graph(10), range(10), 3, rng())
    assert len(h) == 3 and e_h == 0
    k4 = complete_graph(4)
    for s in range(20):
        h, e_h = sparse_sample_step(k4, range(4), 2, rng(s))
        assert len(h) == 2 and e_h == 1


def test_sample_step_pool_exhausted():
    with pytest.raises(PoolExhausted):
        sparse_sample_step(empty_graph(3), [0, 1], 3, rng())


def test_sample_step_c5_edge_probability():
    c5 = cycle_graph(5)
    # exact: 5 of the 10 pairs are edges
    exact = Fraction(sum(c5.has_edge(a, b) for a, b in combinations(range(5), 2)), 10)
    assert exact == Fraction(1, 2)
    r, draws = rng(3), 20_000
    hits = sum(sparse_sample_step(c5, range(5), 2, r)[1] for _ in range(draws))
    sigma = math.sqrt(draws * 0.25)
    assert abs(hits - draws * float(exact)) <= 5 * sigma


def test_sample_step_uniform_over_pairs():
    r, draws = rng(11), 100_000
    g = empty_graph(6)
    freq = Counter(sparse_sample_step(g, range(6), 2, r)[0] for _ in range(draws))
    assert len(freq) == 15
    p = 1 / 15
    radius = 5 * math.sqrt(draws * p * (1 - p))
    assert all(abs(c - draws * p) <= radius for c in freq.values())


def test_sample_step_respects_candidates():
    g = empty_graph(20)
    for s in range(50):
        h, _ = sparse_sample_step(g, {3, 7, 11, 13}, 2, rng(s))
        assert h <= {3, 7, 11, 13}


# -- helpers ---------------------------------------------------------------------

def test_extract_isolated():
    assert extract_isolated(empty_graph(4)) == set(range(4))
    assert extract_isolated(from_edge_list(5, [(0, 1)])) == {2, 3, 4}
    assert extract_isolated(disjoint_union(complete_graph(3), empty_graph(2))) == {3, 4}


def test_turan_greedy_examples():
    cu = gen_clique_union(6, 4)
    s = turan_greedy(cu)
    assert len(s) == 6 and all(len(s & set(range(b, b + 4))) == 1 for b in range(0, 24, 4))
    assert len(turan_greedy(cycle_graph(5))) == 2
    assert turan_greedy(empty_graph(7)) == set(range(7))
    assert turan_greedy(empty_graph(0)) == frozenset()


@pytest.mark.parametrize("seed", range(30))
def test_turan_greedy_bound(seed):
    g = gen_gnp(10 + 5 * seed, 0.05 + 0.02 * (seed % 10), seed)
    s = turan_greedy(g)
    assert g.is_independent(s)
    assert len(s) >= math.ceil(g.n / (g.t + 1))


def test_ratio_factor():
    assert ratio_factor(100, 0, 1.0) == 1.0
    assert ratio_factor(100, 4, 1.0) == pytest.approx(1 - 0.25 - 0.2)
    assert ratio_factor(100, 4, 2.0) == pytest.approx(1 - 0.25 - 0.4)


# -- lemma step --------------------------------------------------------------------

def test_lemma_step_empty_graph():
    g = empty_graph(100)
    h, m, rec = lemma_step(g, AksParams(k=2), rng())
    assert rec.attempts == 1 and rec.accepted and rec.e_h == 0
    assert len(m) == 98 and m.isdisjoint(h)
    assert rec.isolated == rec.h


def test_lemma_step_c5_falls_back():
    c5 = cycle_graph(5)
    # oracle: every pair leaves at most one survivor, never more than n/2
    assert max(len(c5.survivor_set(p)) for p in combinations(range(5), 2)) == 1
    with pytest.raises(FallbackSignal) as info:
        lemma_step(c5, AksParams(k=2), rng())
    assert info.value.reason == "attempts-exhausted" and info.value.attempts == 64


def test_lemma_step_pool_too_small():
    with pytest.raises(FallbackSignal) as info:
        lemma_step(empty_graph(3), AksParams(k=4), rng())
    assert info.value.reason == "pool-exhausted"


def test_lemma_step_draws_only_low_degree():
    g = disjoint_union(complete_graph(2), empty_graph(60))
    g = from_edge_list(80, [(0, i) for i in range(1, 80)])  # star: centre degree 79 > 10 t
    assert 0 not in g.low_degree_set(10 * g.t)
    for s in range(40):
        try:
            h, _, _ = lemma_step(g, AksParams(k=2, max_attempts=1), rng(s))
        except FallbackSignal:
            continue
        assert 0 not in h


def test_lemma_step_bipartite_acceptance_rate():
    g = gen_bipartite(1000, 1000, 0.01, 5)
    assert 9 <= g.t <= 11
    accepted = 0
    for s in range(100):
        try:
            _, _, rec = lemma_step(g, AksParams(k=2), rng(s))
            accepted += rec.accepted
        except FallbackSignal:
            pass
    assert accepted >= 99


# -- full algorithm ----------------------------------------------------------------

def test_run_empty_graph():
    g = empty_graph(64)
    out = run_aks(g, AksParams(k=2, R=3, seed=4))
    assert out.path is Path.SPARSE_UNION
    assert len(out.independent_set) == 6
    assert out.independent_set == frozenset().union(*(r.h for r in out.trace))
    assert out.trace[0].nu is None and out.trace[1].nu == 1.0
    assert verify_outcome(g, out) == []


@pytest.mark.parametrize("seed", range(5))
def test_run_petersen(seed):
    g = petersen_graph()
    out = run_aks(g, AksParams(k=2, R=1, seed=seed))
    if out.path is Path.SPARSE_UNION:
        assert out.trace[0].e_h == 0 and len(out.independent_set) == 2
    else:
        assert len(out.independent_set) >= 3
    assert g.is_independent(out.independent_set)


def test_run_petersen_regression():
    out = run_aks(petersen_graph(), AksParams(k=2, R=1, seed=7))
    # every pair leaves <= 3 of 10 vertices, so the sample is always rejected
    assert out.path is Path.TURAN_FALLBACK and out.fallback_reason == "attempts-exhausted"
    assert out.independent_set == {0, 2, 8, 9}


def test_run_complete_graph_falls_back():
    out = run_aks(complete_graph(10), AksParams(k=2))
    assert out.path is Path.TURAN_FALLBACK and len(out.independent_set) == 1


def test_degenerate_inputs():
    with pytest.raises(DegenerateInput, match="degenerate average degree"):
        run_aks(gen_clique_union(400, 2))
    with pytest.raises(DegenerateInput, match="k underflow"):
        run_aks(gen_clique_union(10, 5))
    with pytest.raises(DegenerateInput):
        run_aks(empty_graph(0), AksParams(k=1, R=1))


def test_params_validation():
    for bad in [dict(k=0), dict(R=0), dict(edge_cap_factor=1), dict(max_attempts=0), dict(seed=-1), dict(c10=0)]:
        with pytest.raises(ValueError):
            AksParams(**bad)


def test_default_params():
    g = gen_bipartite(1000, 1000, 0.01, 3)
    k, R, nu_floor = resolve_params(g, AksParams())
    t = float(g.t)
    assert k == math.floor(2000 / (200 * t)) == 1
    assert R == math.floor(math.log2(t) / 2) == 1
    assert nu_floor == pytest.approx(1 - 1 / math.log2(t))
    # 1 < t < 4 floors R to zero; it is kept at one round
    assert resolve_params(gen_gnp(2000, 3 / 1999, 1), AksParams(k=1))[1] == 1


def test_strict_hypotheses():
    with pytest.raises(HypothesisError):
        run_aks(empty_graph(64), AksParams(k=2, R=3, strict_hypotheses=True))


def test_nu_floor_triggers_fallback():
    g = gen_bipartite(100, 100, 0.05, 2)
    out = run_aks(g, AksParams(k=2, R=3, nu_floor=0.999, seed=1))
    assert out.path is Path.TURAN_FALLBACK and out.fallback_reason == "nu-floor"
    assert out.trace[-1].nu is not None and out.trace[-1].nu <= 0.999
    n_f, t_f = out.fallback_graph
    assert len(out.independent_set) >= math.ceil(n_f / (t_f + 1))
    assert verify_outcome(g, out) == []


def test_multi_round_structure():
    g = gen_bipartite(300, 300, 0.01, 8)
    for seed in range(20):
        out = run_aks(g, AksParams(k=3, R=4, nu_floor=0.0, seed=seed))
        assert verify_outcome(g, out) == []
        accepted = [r for r in out.trace if r.accepted]
        for a, b in combinations(accepted, 2):
            assert not (a.h & b.h)
            assert all(g.adj(v).isdisjoint(b.h) for v in a.h)
        ns = [r.n for r in out.trace]
        assert all(2 * later > earlier for earlier, later in zip(ns, ns[1:]))


def test_determinism():
    g = gen_triangle_free_process(80, 3)
    a = run_aks(g, AksParams(k=2, R=3, seed=99))
    b = run_aks(g, AksParams(k=2, R=3, seed=99))
    assert a == b


@pytest.mark.parametrize("seed", range(40))
def test_output_independent_even_with_triangles(seed):
    g = gen_gnp(40, 0.1 + 0.01 * seed, seed)
    if g.t <= 1:
        return
    out = run_aks(g, AksParams(k=1 + seed % 3, R=1 + seed % 4, seed=seed))
    assert g.is_independent(out.independent_set)
    assert verify_outcome(g, out) == []
