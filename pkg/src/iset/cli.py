"""Command-line front end.

    iset gen SPEC [--seed S] [--out FILE]
    iset count (FILE | --graph SPEC) [--profile] [--budget N]
    iset aks (FILE | --graph SPEC) [--k K] [--R R] [--c10 C] [--seed S]
    iset verify-lemma (FILE | --graph SPEC) --k K [--trials T] [--sigma X]
    iset bounds (FILE | --graph SPEC | --formula N T) [--no-exact]
    iset distinct (FILE | --graph SPEC) [--runs N] [--k K] [--R R]

Exit codes: 0 success, 1 internal error, 2 parse error, 3 budget exhausted,
4 degenerate input, 5 a verification verdict was violated.
"""

from __future__ import annotations

import argparse
import sys
import time
import warnings
from fractions import Fraction

from . import report
from .aks import (AksParams, DegenerateInput, HypothesisError, HypothesisWarning, PoolExhausted,
                  run_aks, verify_outcome)
from .bounds import evaluate_bounds, formula_bounds, verify_sandwich
from .counting import BudgetExhausted, count_independent_sets, default_budget, independence_number, size_profile
from .generators import SpecError, build_from_spec
from .graph import GraphError, format_edge_list, read_edge_list
from .lab import VIOLATED, check_lemma_bounds, distinct_sets_experiment

EXIT_OK, EXIT_INTERNAL, EXIT_PARSE, EXIT_BUDGET, EXIT_DEGENERATE, EXIT_VIOLATED = 0, 1, 2, 3, 4, 5


class UsageError(Exception):
    pass


def _load_graph(args):
    if (args.input is None) == (args.graph is None):
        raise UsageError("give exactly one graph source: an edge-list FILE or --graph SPEC")
    if args.graph is not None:
        return build_from_spec(args.graph, args.seed), f"generator {args.graph} seed={args.seed}"
    try:
        return read_edge_list(args.input), f"file {args.input}"
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None


def _source_config(args) -> dict:
    return {"input": args.input, "graph": args.graph, "seed": args.seed}


def _emit(args, doc: dict) -> None:
    text = report.dumps(doc, args.json)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _timing(start: float, args) -> dict:
    return {"wall_clock_s": round(time.perf_counter() - start, 6), "workers": args.workers}


def _budget(args) -> int:
    return default_budget() if args.budget is None else args.budget


# -- commands ----------------------------------------------------------------

def cmd_gen(args) -> int:
    g = build_from_spec(args.spec, args.seed)
    text = format_edge_list(g, comment=f"iset gen {args.spec} --seed {args.seed}")
    stats = report.graph_stats(g, f"generator {args.spec} seed={args.seed}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        summary = sys.stdout
    else:
        sys.stdout.write(text)
        summary = sys.stderr
    summary.write(f"n={stats['n']} e={stats['e']} t={stats['t']} triangle_free={str(stats['triangle_free']).lower()}\n")
    return EXIT_OK


def cmd_count(args) -> int:
    start = time.perf_counter()
    g, source = _load_graph(args)
    budget = _budget(args)
    count = count_independent_sets(g, budget, args.workers)
    result = {"count": count, "alpha": independence_number(g, budget, args.workers)}
    if args.profile:
        result["size_profile"] = [str(c) for c in size_profile(g, budget, args.workers).coefficients]
    config = {**_source_config(args), "budget": budget, "profile": args.profile}
    _emit(args, report.build("count", config, report.graph_stats(g, source), result,
                             timing=_timing(start, args)))
    return EXIT_OK


def _aks_params(args) -> AksParams:
    return AksParams(k=args.k, R=args.R, c10=args.c10, nu_floor=args.nu_floor,
                     max_attempts=args.max_attempts, seed=args.seed,
                     strict_hypotheses=args.strict)


def cmd_aks(args) -> int:
    start = time.perf_counter()
    g, source = _load_graph(args)
    params = _aks_params(args)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisWarning)
        out = run_aks(g, params)
    trace = [
        {"i": r.index, "n_i": r.n, "t_i": float(r.t), "nu_i": "undefined" if r.nu is None else r.nu,
         "e_H": r.e_h, "attempts": r.attempts, "accepted": r.accepted,
         "isolated_count": r.isolated_count, "H": r.h, "note": r.note}
        for r in out.trace
    ]
    result = {
        "path": out.path,
        "size": len(out.independent_set),
        "independent_set": out.independent_set,
        "completed_iterations": out.completed_iterations,
        "fallback_reason": out.fallback_reason,
        "resolved": {"k": out.k, "R": out.R, "nu_floor": out.nu_floor},
        "unmet_hypotheses": out.unmet_hypotheses,
    }
    problems = verify_outcome(g, out, params.edge_cap_factor)
    verdicts = {"independent": g.is_independent(out.independent_set), "structural_problems": problems}
    config = {**_source_config(args), "k": args.k, "R": args.R, "c10": args.c10,
              "nu_floor": args.nu_floor, "max_attempts": args.max_attempts, "strict": args.strict}
    _emit(args, report.build("aks", config, report.graph_stats(g, source), result, trace, verdicts,
                             _timing(start, args)))
    return EXIT_OK if not problems else EXIT_INTERNAL


def cmd_verify_lemma(args) -> int:
    start = time.perf_counter()
    g, source = _load_graph(args)
    rep = check_lemma_bounds(g, args.k, args.trials, args.seed, args.sigma, args.c10, args.workers)
    result = {
        "pool_size": rep.pool_size, "delta": rep.delta, "nu": rep.nu,
        "stats": {name: s for name, s in rep.stats.observables.items()},
    }
    verdicts = [
        {"claim": c.claim, "form": c.form, "direction": c.direction, "bound": c.bound,
         "estimate": c.estimate, "std_error": c.std_error, "margin_sigma": c.margin, "verdict": c.verdict}
        for c in rep.claims
    ]
    config = {**_source_config(args), "k": args.k, "trials": args.trials, "sigma": args.sigma, "c10": args.c10}
    _emit(args, report.build("verify-lemma", config, report.graph_stats(g, source), result,
                             verdicts=verdicts, timing=_timing(start, args)))
    return EXIT_VIOLATED if any(c.verdict == VIOLATED for c in rep.claims) else EXIT_OK


def cmd_bounds(args) -> int:
    start = time.perf_counter()
    if args.formula is not None:
        if args.input is not None or args.graph is not None:
            raise UsageError("--formula takes no graph source")
        n, t = int(args.formula[0]), Fraction(args.formula[1])
        config = {"formula": {"n": n, "t": str(t)}}
        _emit(args, report.build("bounds", config, None, formula_bounds(n, t), timing=_timing(start, args)))
        return EXIT_OK
    g, source = _load_graph(args)
    budget = _budget(args)
    rep = evaluate_bounds(g, not args.no_exact, budget, args.workers)
    result = report.plain(rep)
    result["exact_log2"] = rep.exact_log2
    verdicts = None
    status = EXIT_OK
    if not args.no_exact and rep.exact is not None:
        sandwich = verify_sandwich(g, budget, args.workers)
        verdicts = sandwich.checks
        status = EXIT_OK if sandwich.passed else EXIT_VIOLATED
    config = {**_source_config(args), "budget": budget, "exact": not args.no_exact}
    _emit(args, report.build("bounds", config, report.graph_stats(g, source), result,
                             verdicts=verdicts, timing=_timing(start, args)))
    return status


def cmd_distinct(args) -> int:
    start = time.perf_counter()
    g, source = _load_graph(args)
    params = _aks_params(args)
    count = distinct_sets_experiment(g, params, args.runs, args.seed, args.workers)
    config = {**_source_config(args), "runs": args.runs, "k": args.k, "R": args.R, "c10": args.c10}
    _emit(args, report.build("distinct", config, report.graph_stats(g, source),
                             {"distinct_sets": count}, timing=_timing(start, args)))
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (echoed in every report)")
    common.add_argument("--workers", type=int, default=1, help="worker processes; never changes results")
    common.add_argument("--json", action="store_true", help="emit JSON instead of YAML")
    common.add_argument("--out", help="write the report here instead of stdout")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("input", nargs="?", help="edge-list file")
    source.add_argument("--graph", help="generator spec, e.g. tfp:n=100 or bipartite:l=50,r=50,p=0.1")

    aks_opts = argparse.ArgumentParser(add_help=False)
    aks_opts.add_argument("--k", type=int, help="sample size (default floor(n/200t))")
    aks_opts.add_argument("--R", type=int, help="rounds (default floor(log2(t)/2), at least 1)")
    aks_opts.add_argument("--c10", type=float, default=1.0)
    aks_opts.add_argument("--nu-floor", type=float, dest="nu_floor")
    aks_opts.add_argument("--max-attempts", type=int, default=64, dest="max_attempts")
    aks_opts.add_argument("--strict", action="store_true", help="unmet hypotheses are errors")

    p = argparse.ArgumentParser(prog="iset", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", parents=[common], help="write a generated graph as an edge list")
    s.add_argument("spec")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("count", parents=[common, source], help="exact count, alpha, size profile")
    s.add_argument("--profile", action="store_true")
    s.add_argument("--budget", type=int)
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("aks", parents=[common, source, aks_opts], help="run the sampling algorithm")
    s.set_defaults(func=cmd_aks)

    s = sub.add_parser("verify-lemma", parents=[common, source], help="Monte-Carlo lemma checks")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--trials", type=int, default=100_000)
    s.add_argument("--sigma", type=float, default=4.0)
    s.add_argument("--c10", type=float, default=1.0)
    s.set_defaults(func=cmd_verify_lemma)

    s = sub.add_parser("bounds", parents=[common, source], help="evaluate closed-form bounds")
    s.add_argument("--no-exact", action="store_true")
    s.add_argument("--budget", type=int)
    s.add_argument("--formula", nargs=2, metavar=("N", "T"), help="formula-only mode for hypothetical n, t")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("distinct", parents=[common, source, aks_opts], help="distinct outcomes over many runs")
    s.add_argument("--runs", type=int, default=1000)
    s.set_defaults(func=cmd_distinct)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, SpecError, GraphError) as exc:
        print(f"iset: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExhausted as exc:
        print(f"iset: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DegenerateInput, PoolExhausted, HypothesisError) as exc:
        print(f"iset: degenerate input: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ValueError as exc:
        print(f"iset: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Exception as exc:  # noqa: BLE001
        print(f"iset: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
