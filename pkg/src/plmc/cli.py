"""Command-line harness: generate, solve, analyze, reduce, bench.

Every command is deterministic given its full flag set (wall-time columns
excepted).  Numeric CSV cells use 10 significant digits.  Exit codes:
0 success, 2 usage or precondition failure, 3 exact-solver size refusal,
4 reduction infeasibility.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import asdict
from pathlib import Path

from . import algorithms as algos
from . import gadgets
from .errors import InfeasibleReductionError, OracleSizeError, PlmcError
from .generator import generate, target_degree_multiset
from .multigraph import Cut, cut_value, degree_histogram, read_graph, write_cut, write_graph
from .plgmath import (
    FunctionalSpec,
    GwBoundInputs,
    PowerLawParams,
    core_strength_bound,
    edge_count_estimate,
    functional_conditions_check,
    functional_x,
    gw_ratio_bound,
    hardness_ratio,
    interval_size_bounds,
    interval_size_exact,
    interval_volume_bounds,
    interval_volume_exact,
    node_count_estimate,
    split_params,
    tau,
    zeta,
)

ALGORITHMS = ("exact", "greedy", "local", "dense-ptas", "split-ptas", "gw", "beta-gt2")

FUNCTIONALS = {
    "sqrt": FunctionalSpec(math.sqrt, "sqrt"),
    "log": FunctionalSpec(math.log, "log"),
}


def fmt(x) -> str:
    """CSV cell formatting: 10 significant digits for floats."""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return f"{x:.10g}"
    return str(x)


def parse_range(text: str) -> list[float]:
    """Parse `start:stop:step`, a comma list, or a single number."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"range needs start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise argparse.ArgumentTypeError("range step must be positive")
        out = []
        x = start
        while x <= stop + 1e-12:
            out.append(round(x, 12))
            x += step
        return out
    return [float(p) for p in text.split(",") if p]


def parse_int_list(text: str) -> list[int]:
    return [int(p) for p in text.split(",") if p]


def _write_csv(path: str | None, header: list[str], rows: list[list]) -> None:
    fh = open(path, "w", newline="", encoding="utf-8") if path else sys.stdout
    try:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(c) for c in row])
    finally:
        if path:
            fh.close()


def _write_json(path: str | None, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path:
        Path(path).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _resolve_alpha(args) -> float:
    if getattr(args, "target_nodes", None):
        if args.beta <= 1.0:
            raise PlmcError("--target-nodes inversion needs beta > 1")
        return math.log(args.target_nodes / zeta(args.beta))
    if args.alpha is None:
        raise PlmcError("either --alpha or --target-nodes is required")
    return args.alpha


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_generate(args) -> int:
    alpha = _resolve_alpha(args)
    p = PowerLawParams(alpha, args.beta)
    g, report = generate(p, args.seed, max_copies=args.max_copies)
    write_graph(g, args.output)
    payload = asdict(report)
    payload.update(alpha=p.alpha, beta=p.beta, seed=args.seed,
                   vertex_count=g.vertex_count,
                   edge_multiplicity_total=g.edge_multiplicity_total)
    report_path = args.report or str(args.output) + ".report.json"
    _write_json(report_path, payload)
    print(f"wrote {args.output} (n={g.vertex_count}, "
          f"edge multiplicity {g.edge_multiplicity_total}) and {report_path}")
    return 0


def cmd_solve(args) -> int:
    g = read_graph(args.graph)
    seed = args.seed
    if args.algo == "exact":
        res = algos.exact_maxcut(g, limit=args.limit)
    elif args.algo == "greedy":
        res = algos.greedy_cut(g)
    elif args.algo == "local":
        res = algos.local_search(g, algos.greedy_cut(g).cut)
    elif args.algo == "dense-ptas":
        res = algos.dense_ptas(g, args.eps, seed)
    elif args.algo == "split-ptas":
        if args.alpha is None or args.beta is None:
            raise PlmcError("split-ptas needs --alpha and --beta")
        res = algos.split_ptas(g, PowerLawParams(args.alpha, args.beta), args.eps, seed)
    elif args.algo == "gw":
        res = algos.gw_sdp(g, seed, restarts=args.restarts)
    elif args.algo == "beta-gt2":
        res = algos.beta_gt2_algorithm(g, seed, restarts=args.restarts)
    else:  # pragma: no cover - argparse choices guard this
        raise PlmcError(f"unknown algorithm {args.algo!r}")

    cut_file = args.cut_file
    if cut_file is None and args.output:
        cut_file = str(args.output) + ".cut"
    if cut_file:
        write_cut(res.cut, cut_file)
    payload = {
        "algorithm": res.algorithm,
        "value": res.value,
        "params": res.params,
        "certified_optimal": res.certified_optimal,
        "cut_file": cut_file,
    }
    if res.upper_bound is not None:
        payload["upper_bound"] = res.upper_bound
    _write_json(args.output, payload)
    return 0


def _analyze_hardness(args):
    rows = [[b, hardness_ratio(b)] for b in parse_range(args.beta)]
    _write_csv(args.output, ["beta", "hardness_ratio"], rows)


def _analyze_gw_bound(args):
    rows = []
    for b in parse_range(args.beta):
        for mu in parse_range(args.mu):
            rows.append([b, mu, gw_ratio_bound(b, GwBoundInputs(mu=mu))])
    _write_csv(args.output, ["beta", "mu", "gw_ratio_bound"], rows)


def _analyze_intervals(args):
    p = PowerLawParams(args.alpha, args.beta)
    d = p.max_degree
    cut_at = max(1, min(d, int(args.x * d)))
    spans = [(1, d), (1, cut_at), (min(d, cut_at + 1), d)]
    rows = []
    for a, b in spans:
        if a > b:
            continue
        se = interval_size_exact(p, a, b)
        sb = interval_size_bounds(p, a, b)
        ve = interval_volume_exact(p, a, b)
        vb = interval_volume_bounds(p, a, b)
        rows.append(["size", a, b, se, sb.lo, sb.hi, se in sb])
        rows.append(["volume", a, b, ve, vb.lo, vb.hi, ve in vb])
    _write_csv(
        args.output,
        ["quantity", "lo_degree", "hi_degree", "exact", "bound_lo", "bound_hi", "within"],
        rows,
    )


def _analyze_estimates(args):
    rows = []
    for b in parse_range(args.beta):
        p = PowerLawParams(args.alpha, b)
        d = p.max_degree
        n_exact = interval_size_exact(p, 1, d)
        m_exact = interval_volume_exact(p, 1, d) // 2
        n_est = node_count_estimate(p)
        m_est = edge_count_estimate(p)
        rows.append([args.alpha, b, n_est, n_exact, n_exact / n_est,
                     m_est, m_exact, m_exact / m_est])
    _write_csv(
        args.output,
        ["alpha", "beta", "n_estimate", "n_exact", "n_ratio",
         "m_estimate", "m_exact", "m_ratio"],
        rows,
    )


def _analyze_core_strength(args):
    rows = [[a, core_strength_bound(a)] for a in parse_range(args.alpha)]
    _write_csv(args.output, ["alpha", "core_strength_bound"], rows)


def _analyze_split_params(args):
    rows = []
    for e in parse_range(args.eps):
        sp = split_params(e, args.beta)
        rows.append([e, args.beta, sp.tau, sp.x, sp.eps_prime])
    _write_csv(args.output, ["eps", "beta", "tau", "x", "eps_prime"], rows)


def _analyze_functional(args):
    f = FUNCTIONALS[args.f]
    rows = []
    for a in parse_range(args.alpha):
        x = functional_x(f, a)
        r1, r2 = functional_conditions_check(f, a, x)
        rows.append([a, f.value(a), f.beta_f(a), x, r1, r2])
    _write_csv(args.output, ["alpha", "f_alpha", "beta_f", "x", "ratio1", "ratio2"], rows)


def cmd_analyze(args) -> int:
    args.analyze_func(args)
    return 0


def cmd_reduce(args) -> int:
    g3 = read_graph(args.graph)
    host, plan, report, certs = gadgets.embed_with_certificates(g3, args.beta, args.min_k)
    write_graph(host, args.output)
    stem = str(args.output)
    plan_path = args.plan or stem + ".plan.json"
    report_path = args.report or stem + ".report.json"
    cert_path = args.cert or stem + ".cert.csv"
    _write_json(plan_path, plan.to_json_dict())
    payload = report.to_json_dict()
    if args.n is not None:
        t = gadgets.decision_thresholds(args.n, args.eps)
        yes, no = gadgets.lift_thresholds(t, report)
        payload["lifted_yes"] = yes
        payload["lifted_no"] = no
        print(f"lifted thresholds: yes>={fmt(yes)} no<={fmt(no)}")
    _write_json(report_path, payload)
    with open(cert_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["gadget_id", "kind", "method", "vertex_count", "edge_total", "opt_value"])
        for c in certs:
            writer.writerow([c.gadget_id, c.kind, c.method, c.vertex_count,
                             c.edge_total, c.opt_value])
    print(f"wrote {args.output} (n={host.vertex_count}), {plan_path}, "
          f"{report_path}, {cert_path}; offset={report.offset}")
    return 0


def cmd_bench(args) -> int:
    header = ["alpha", "beta", "seed", "n", "edge_total", "algorithm",
              "value", "wall_time_s"]
    rows = []
    for alpha in parse_range(args.alpha):
        for beta in parse_range(args.beta):
            p = PowerLawParams(alpha, beta)
            for seed in parse_int_list(args.seeds):
                g, _ = generate(p, seed)
                for name in args.algos.split(","):
                    t0 = time.perf_counter()
                    if name == "exact":
                        res = algos.exact_maxcut(g)
                    elif name == "greedy":
                        res = algos.greedy_cut(g)
                    elif name == "local":
                        res = algos.local_search(g, algos.greedy_cut(g).cut)
                    elif name == "dense-ptas":
                        res = algos.dense_ptas(g, args.eps, seed)
                    elif name == "split-ptas":
                        res = algos.split_ptas(g, p, args.eps, seed)
                    elif name == "gw":
                        res = algos.gw_sdp(g, seed, restarts=args.restarts)
                    elif name == "beta-gt2":
                        res = algos.beta_gt2_algorithm(g, seed, restarts=args.restarts)
                    else:
                        raise PlmcError(f"unknown algorithm {name!r}")
                    dt = time.perf_counter() - t0
                    rows.append([alpha, beta, seed, g.vertex_count,
                                 g.edge_multiplicity_total, name, res.value, dt])
    _write_csv(args.output, header, rows)
    return 0


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------


def _load_config(path: str) -> dict[str, str]:
    out = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise PlmcError(f"config {path} line {lineno}: expected key=value")
        key, value = line.split("=", 1)
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="plmc",
        description="Power-law multigraphs and the MAX-CUT algorithm ladder",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    registry: dict[str, argparse.ArgumentParser] = {}

    def common(p: argparse.ArgumentParser):
        p.add_argument("--config", help="key=value file of defaults; flags win")

    gen = sub.add_parser("generate", help="generate a random power-law multigraph")
    registry["generate"] = gen
    common(gen)
    gen.add_argument("--alpha", type=float)
    gen.add_argument("--target-nodes", type=float,
                     help="invert n ~ zeta(beta) e^alpha for beta > 1")
    gen.add_argument("--beta", type=float, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--max-copies", type=int, default=1 << 24)
    gen.add_argument("--report")
    gen.add_argument("-o", "--output", required=True)
    gen.set_defaults(func=cmd_generate)

    solve = sub.add_parser("solve", help="run one algorithm on a graph file")
    registry["solve"] = solve
    common(solve)
    solve.add_argument("--algo", choices=ALGORITHMS, required=True)
    solve.add_argument("--eps", type=float, default=0.25)
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--restarts", type=int, default=100)
    solve.add_argument("--alpha", type=float)
    solve.add_argument("--beta", type=float)
    solve.add_argument("--limit", type=int, default=None, help="exact-solver vertex cap")
    solve.add_argument("--cut-file")
    solve.add_argument("-o", "--output")
    solve.add_argument("graph")
    solve.set_defaults(func=cmd_solve)

    analyze = sub.add_parser("analyze", help="emit formula sweep tables as CSV")
    asub = analyze.add_subparsers(dest="analysis", required=True)

    a_hard = asub.add_parser("hardness")
    registry["analyze.hardness"] = a_hard
    common(a_hard)
    a_hard.add_argument("--beta", required=True)
    a_hard.add_argument("-o", "--output")
    a_hard.set_defaults(func=cmd_analyze, analyze_func=_analyze_hardness)

    a_gw = asub.add_parser("gw-bound")
    registry["analyze.gw-bound"] = a_gw
    common(a_gw)
    a_gw.add_argument("--beta", required=True)
    a_gw.add_argument("--mu", default="1")
    a_gw.add_argument("-o", "--output")
    a_gw.set_defaults(func=cmd_analyze, analyze_func=_analyze_gw_bound)

    a_iv = asub.add_parser("intervals")
    registry["analyze.intervals"] = a_iv
    common(a_iv)
    a_iv.add_argument("--alpha", type=float, required=True)
    a_iv.add_argument("--beta", type=float, required=True)
    a_iv.add_argument("--x", type=float, default=0.1)
    a_iv.add_argument("-o", "--output")
    a_iv.set_defaults(func=cmd_analyze, analyze_func=_analyze_intervals)

    a_est = asub.add_parser("estimates")
    registry["analyze.estimates"] = a_est
    common(a_est)
    a_est.add_argument("--alpha", type=float, required=True)
    a_est.add_argument("--beta", required=True)
    a_est.add_argument("-o", "--output")
    a_est.set_defaults(func=cmd_analyze, analyze_func=_analyze_estimates)

    a_cs = asub.add_parser("core-strength")
    registry["analyze.core-strength"] = a_cs
    common(a_cs)
    a_cs.add_argument("--alpha", required=True)
    a_cs.add_argument("-o", "--output")
    a_cs.set_defaults(func=cmd_analyze, analyze_func=_analyze_core_strength)

    a_sp = asub.add_parser("split-params")
    registry["analyze.split-params"] = a_sp
    common(a_sp)
    a_sp.add_argument("--eps", required=True)
    a_sp.add_argument("--beta", type=float, required=True)
    a_sp.add_argument("-o", "--output")
    a_sp.set_defaults(func=cmd_analyze, analyze_func=_analyze_split_params)

    a_fn = asub.add_parser("functional")
    registry["analyze.functional"] = a_fn
    common(a_fn)
    a_fn.add_argument("--f", choices=sorted(FUNCTIONALS), default="sqrt")
    a_fn.add_argument("--alpha", required=True)
    a_fn.add_argument("-o", "--output")
    a_fn.set_defaults(func=cmd_analyze, analyze_func=_analyze_functional)

    reduce_p = sub.add_parser("reduce", help="embed a 3-regular graph into a power-law host")
    registry["reduce"] = reduce_p
    common(reduce_p)
    reduce_p.add_argument("--beta", type=float, required=True)
    reduce_p.add_argument("--min-k", type=int, default=None)
    reduce_p.add_argument("--n", type=int, default=None, help="decision parameter (N = 104n)")
    reduce_p.add_argument("--eps", type=float, default=1e-3)
    reduce_p.add_argument("--plan")
    reduce_p.add_argument("--report")
    reduce_p.add_argument("--cert")
    reduce_p.add_argument("-o", "--output", required=True)
    reduce_p.add_argument("graph")
    reduce_p.set_defaults(func=cmd_reduce)

    bench = sub.add_parser("bench", help="run an algorithm grid over generated instances")
    registry["bench"] = bench
    common(bench)
    bench.add_argument("--alpha", required=True)
    bench.add_argument("--beta", required=True)
    bench.add_argument("--seeds", default="0")
    bench.add_argument("--algos", default="greedy,local,gw")
    bench.add_argument("--eps", type=float, default=0.25)
    bench.add_argument("--restarts", type=int, default=100)
    bench.add_argument("-o", "--output")
    bench.set_defaults(func=cmd_bench)

    return parser, registry


def _apply_config(parser, registry, argv) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        key = args.command
        if getattr(args, "analysis", None):
            key = f"{args.command}.{args.analysis}"
        sub = registry[key]
        config = _load_config(args.config)
        defaults = {}
        for action in sub._actions:
            if action.dest in config:
                raw = config[action.dest]
                defaults[action.dest] = action.type(raw) if action.type else raw
        unknown = set(config) - set(defaults)
        if unknown:
            raise PlmcError(f"config keys not recognized: {sorted(unknown)}")
        sub.set_defaults(**defaults)
        args = parser.parse_args(argv)
    return args


def main(argv: list[str] | None = None) -> int:
    parser, registry = build_parser()
    try:
        args = _apply_config(parser, registry, argv)
        return args.func(args) or 0
    except OracleSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InfeasibleReductionError as exc:
        print(f"error: {exc} (hint: use the wheel construction via beta <= 1)", file=sys.stderr)
        return 4
    except (PlmcError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
