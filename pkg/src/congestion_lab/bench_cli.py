"""Command-line harness: one-shot analysis commands and experiment sweeps.

Exit codes: 0 ok, 1 usage, 2 domain error (bad input, size limits),
3 internal invariant violation (an emitted row would contradict one of the
inequalities the record schema promises).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .bounds import (
    congestion_lower,
    congestion_upper,
    congestion_upper_equipartition,
    congestion_upper_hybrid,
    bounds_report,
    normalized_congestion_bounds,
)
from .clustering import balance_epsilon, make_cut
from .contraction import (
    ORACLE_DEFAULT_LIMIT,
    congestion,
    hsc,
    hybrid_sc_equipartition,
    oracle_min_congestion,
    oracle_tree,
    recursive_equipartition,
    serialize_tree,
)
from .generators import RNG_ID, GenSpec, gnp_min_degree
from .graph_core import Graph, parse_edge_list, serialize_edge_list
from .spectra import lambda2, lambda_n, mu2, mu_n

EXPERIMENT_FIELDS = (
    "family",
    "param_d",
    "param_m",
    "param_n",
    "param_p",
    "param_q",
    "param_depth",
    "param_k",
    "param_periodic",
    "seed",
    "trial",
    "n",
    "m",
    "lambda2",
    "lambdan",
    "mu2",
    "mun",
    "eps",
    "lower_thm1",
    "upper_trivial",
    "upper_equi",
    "upper_hybrid",
    "lower_thm2",
    "upper_thm2_hybrid",
    "cng_hsc",
    "cng_hybrid",
    "cng_equi",
    "cng_oracle",
    "hyper_greedy",
    "cotengra_auto",
    "hyper_opt",
    "runtime_ms_spectra",
    "runtime_ms_hsc",
    "runtime_ms_hybrid",
    "runtime_ms_equi",
    "runtime_ms_oracle",
)


class InvariantViolation(Exception):
    """An experiment row contradicts one of the inequalities it must satisfy."""


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _parse_int_list(text: str) -> list[int]:
    """Accept '12', '10,12,14' or '10..24' (inclusive)."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(tok) for tok in text.split(",") if tok]


def _parse_float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _load_graph(path_str: str) -> Graph:
    text = Path(path_str).read_text(encoding="utf-8")
    return parse_edge_list(text)


# -- one-shot commands --------------------------------------------------------


def cmd_spectrum(args) -> int:
    g = _load_graph(args.graph)
    print(f"n      = {g.n}")
    print(f"m      = {g.total_weight:.10g}")
    print(f"maxdeg = {g.max_degree():.10g}")
    if g.n < 2:
        print("lambda2/lambdan undefined: single vertex")
        return 0
    print(f"lambda2 = {lambda2(g):.10g}")
    print(f"lambdan = {lambda_n(g):.10g}")
    if g.min_degree() > 0:
        print(f"mu2     = {mu2(g):.10g}")
        print(f"mun     = {mu_n(g):.10g}")
    else:
        print("mu2/mun undefined: graph has an isolated vertex")
    return 0


def cmd_bounds(args) -> int:
    g = _load_graph(args.graph)
    report = bounds_report(g, seed=args.seed)
    for name, value in vars(report).items():
        print(f"{name} = {value:.10g}" if isinstance(value, float) else f"{name} = {value}")
    return 0


def cmd_contract(args) -> int:
    g = _load_graph(args.graph)
    if args.method == "hsc":
        tree = hsc(g, seed=args.seed, normalized=args.normalized)
    elif args.method == "hybrid":
        tree = hybrid_sc_equipartition(g, normalized=args.normalized)
    elif args.method == "equi":
        tree = recursive_equipartition(g)
    else:
        if g.n > args.oracle_limit:
            raise ValueError(
                f"oracle limited to {args.oracle_limit} vertices, graph has {g.n}"
            )
        tree = oracle_tree(g, limit=args.oracle_limit)
    cert = congestion(g, tree)
    subset = sorted(tree.nodes[cert.argmax_node].subset)
    text = serialize_tree(tree)
    print(f"congestion = {cert.congestion:.10g}")
    print(f"argmax subset = {subset}")
    print(f"tree = {text}")
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    return 0


def cmd_gen(args) -> int:
    spec = _genspec_from_args(args)
    g = spec.build()
    text = serialize_edge_list(g, comments=spec.metadata())
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _genspec_from_args(args) -> GenSpec:
    family = args.family
    params: dict = {}
    if family == "hypercube":
        params["d"] = _require(args.d, "--d")
    elif family in ("path", "cycle"):
        params["n"] = _require(args.n, "--n")
    elif family in ("grid", "lattice"):
        params["m"] = _require(args.m, "--m")
        params["n"] = _require(args.n, "--n")
        params["periodic"] = args.periodic
    elif family in ("random_regular", "rrg"):
        params["n"] = _require(args.n, "--n")
        params["d"] = _require(args.d, "--d")
    elif family == "gnp":
        params["n"] = _require(args.n, "--n")
        params["p"] = _require(args.p, "--p")
    elif family == "rqc":
        params["q"] = _require(args.q, "--q")
        params["depth"] = _require(args.depth, "--depth")
        params["k"] = _require(args.k, "--k")
        params["terminals"] = args.terminals
    elif family == "fig1":
        pass
    else:
        raise ValueError(f"unknown family {family!r}")
    return GenSpec(family=family, params=params, seed=args.seed)


def _require(value, flag: str):
    if value is None:
        raise ValueError(f"family requires {flag}")
    return value


# -- experiment sweeps ----------------------------------------------------------


def _param_points(args) -> tuple[str, list[dict]]:
    """Expand the range flags into a list of parameter points."""
    family = {"lattice": "grid", "rrg": "random_regular"}.get(args.family, args.family)
    points: list[dict] = []
    if family == "hypercube":
        for d in _require(args.d, "--d"):
            points.append({"d": d})
    elif family in ("path", "cycle"):
        for n in _require(args.n, "--n"):
            points.append({"n": n})
    elif family == "grid":
        for m in _require(args.m, "--m"):
            for n in _require(args.n, "--n"):
                points.append({"m": m, "n": n, "periodic": args.periodic})
    elif family == "random_regular":
        for d in _require(args.d, "--d"):
            for n in _require(args.n, "--n"):
                if n * d % 2 == 0 and d < n:
                    points.append({"n": n, "d": d})
    elif family == "gnp":
        for p in _require(args.p, "--p"):
            for n in _require(args.n, "--n"):
                points.append({"n": n, "p": p})
    elif family == "rqc":
        for q in _require(args.q, "--q"):
            for k in _require(args.k, "--k"):
                for depth in _require(args.depth, "--depth"):
                    if k <= q:
                        points.append({"q": q, "depth": depth, "k": k})
    elif family == "fig1":
        points.append({})
    else:
        raise ValueError(f"unknown family {args.family!r}")
    if not points:
        raise ValueError("parameter ranges produced no valid points")
    return family, points


def _build_instance(family: str, params: dict, trial_seed: int) -> Graph:
    if family == "gnp":
        g, _ = gnp_min_degree(params["n"], params["p"], trial_seed)
        return g
    return GenSpec(family=family, params=params, seed=trial_seed).build()


def experiment_row(
    family: str,
    params: dict,
    seed: int,
    trial: int,
    oracle: bool,
    oracle_limit: int,
    normalized: bool,
    timings: bool,
) -> dict:
    """Compute one experiment record; fields that do not apply stay None."""
    trial_seed = seed + trial
    g = _build_instance(family, params, trial_seed)
    row = dict.fromkeys(EXPERIMENT_FIELDS)
    row["family"] = family
    for key, value in params.items():
        if key != "terminals":
            row[f"param_{key}"] = value
    row["seed"] = trial_seed
    row["trial"] = trial
    row["n"] = g.n
    row["m"] = g.total_weight

    t0 = time.perf_counter()
    row["lambda2"] = lambda2(g)
    row["lambdan"] = lambda_n(g)
    row["lower_thm1"] = congestion_lower(g)
    row["upper_trivial"] = congestion_upper(g)
    row["upper_equi"] = congestion_upper_equipartition(g)
    if g.min_degree() > 0:
        row["mu2"] = mu2(g)
        row["mun"] = mu_n(g)
    connected = g.is_connected()
    if connected:
        row["eps"] = balance_epsilon(g)
    spectra_ms = (time.perf_counter() - t0) * 1e3

    t0 = time.perf_counter()
    row["cng_hsc"] = congestion(g, hsc(g, seed=trial_seed, normalized=normalized)).congestion
    hsc_ms = (time.perf_counter() - t0) * 1e3

    hybrid_ms = None
    if connected:
        t0 = time.perf_counter()
        tree = hybrid_sc_equipartition(g, normalized=normalized)
        row["cng_hybrid"] = congestion(g, tree).congestion
        root_subset = tree.nodes[tree.nodes[tree.root].children[0]].subset
        root_cut = make_cut(g, [v in root_subset for v in range(g.n)])
        row["upper_hybrid"] = congestion_upper_hybrid(g, root_cut.balance)
        if g.min_degree() > 0:
            vol = 2.0 * g.total_weight
            vol_s = g.volume(root_cut.vertices)
            vol_balance = min(vol_s, vol - vol_s) / vol
            thm2 = normalized_congestion_bounds(g, vol_balance)
            row["lower_thm2"] = thm2[0]
            row["upper_thm2_hybrid"] = thm2[3]
        hybrid_ms = (time.perf_counter() - t0) * 1e3
    elif g.min_degree() > 0:
        vol = 2.0 * g.total_weight
        row["lower_thm2"] = 2.0 * mu2(g) * vol / 9.0

    t0 = time.perf_counter()
    row["cng_equi"] = congestion(g, recursive_equipartition(g)).congestion
    equi_ms = (time.perf_counter() - t0) * 1e3

    oracle_ms = None
    if oracle and g.n <= oracle_limit:
        t0 = time.perf_counter()
        row["cng_oracle"] = oracle_min_congestion(g, limit=oracle_limit)
        oracle_ms = (time.perf_counter() - t0) * 1e3

    if timings:
        row["runtime_ms_spectra"] = spectra_ms
        row["runtime_ms_hsc"] = hsc_ms
        row["runtime_ms_hybrid"] = hybrid_ms
        row["runtime_ms_equi"] = equi_ms
        row["runtime_ms_oracle"] = oracle_ms
    _check_row(row)
    return row


def _check_row(row: dict) -> None:
    """Re-check the record inequalities before the row is written."""
    lower = row["lower_thm1"]
    for key in ("cng_hsc", "cng_hybrid", "cng_equi", "cng_oracle"):
        value = row[key]
        if value is not None and value < lower - 1e-6:
            raise InvariantViolation(
                f"{key} = {value} violates {key} >= lower_thm1 = {lower}"
            )
    oracle_value = row["cng_oracle"]
    if oracle_value is not None:
        for key in ("cng_hsc", "cng_hybrid", "cng_equi"):
            value = row[key]
            if value is not None and oracle_value > value + 1e-9:
                raise InvariantViolation(
                    f"cng_oracle = {oracle_value} violates cng_oracle <= {key} = {value}"
                )


def cmd_experiment(args) -> int:
    family, points = _param_points(args)
    if args.trials < 1:
        raise ValueError(f"trials must be >= 1, got {args.trials}")
    rows = []
    for params in points:
        for trial in range(args.trials):
            rows.append(
                experiment_row(
                    family,
                    params,
                    seed=args.seed,
                    trial=trial,
                    oracle=args.oracle,
                    oracle_limit=args.oracle_limit,
                    normalized=args.normalized,
                    timings=args.timings,
                )
            )
    preamble = [
        "# congestion-lab experiment",
        f"# rng={RNG_ID}",
        "# flags: family={} trials={} seed={} oracle={} normalized={}".format(
            args.family, args.trials, args.seed, int(args.oracle), int(args.normalized)
        ),
    ]
    lines = preamble + [",".join(EXPERIMENT_FIELDS)]
    for row in rows:
        lines.append(",".join(_fmt(row[field]) for field in EXPERIMENT_FIELDS))
    Path(args.csv).write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(rows)} rows to {args.csv}")
    return 0


# -- entry point ------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="congestion-lab")
    sub = parser.add_subparsers(dest="command", required=True)

    p_spec = sub.add_parser("spectrum", help="print Laplacian spectral summary")
    p_spec.add_argument("--graph", required=True)
    p_spec.set_defaults(func=cmd_spectrum)

    p_bounds = sub.add_parser("bounds", help="print every congestion bound")
    p_bounds.add_argument("--graph", required=True)
    p_bounds.add_argument("--seed", type=int, default=0)
    p_bounds.set_defaults(func=cmd_bounds)

    p_con = sub.add_parser("contract", help="build a contraction tree")
    p_con.add_argument("--graph", required=True)
    p_con.add_argument("--method", required=True, choices=("hsc", "hybrid", "equi", "oracle"))
    p_con.add_argument("--seed", type=int, default=0)
    p_con.add_argument("--normalized", action="store_true")
    p_con.add_argument("--oracle-limit", type=int, default=ORACLE_DEFAULT_LIMIT)
    p_con.add_argument("--out")
    p_con.set_defaults(func=cmd_contract)

    p_gen = sub.add_parser("gen", help="emit a generated graph as an edge list")
    p_gen.add_argument("--family", required=True)
    p_gen.add_argument("--d", type=int)
    p_gen.add_argument("--m", type=int)
    p_gen.add_argument("--n", type=int)
    p_gen.add_argument("--p", type=float)
    p_gen.add_argument("--q", type=int)
    p_gen.add_argument("--depth", type=int)
    p_gen.add_argument("--k", type=int)
    p_gen.add_argument("--periodic", action="store_true")
    p_gen.add_argument("--terminals", choices=("per-qubit", "single"), default="per-qubit")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out")
    p_gen.set_defaults(func=cmd_gen)

    p_exp = sub.add_parser("experiment", help="run a parameter sweep to CSV")
    p_exp.add_argument("--family", required=True)
    p_exp.add_argument("--d", type=_parse_int_list)
    p_exp.add_argument("--m", type=_parse_int_list)
    p_exp.add_argument("--n", type=_parse_int_list)
    p_exp.add_argument("--p", type=_parse_float_list)
    p_exp.add_argument("--q", type=_parse_int_list)
    p_exp.add_argument("--depth", type=_parse_int_list)
    p_exp.add_argument("--k", type=_parse_int_list)
    p_exp.add_argument("--periodic", action="store_true")
    p_exp.add_argument("--trials", type=int, default=1)
    p_exp.add_argument("--seed", type=int, default=0)
    p_exp.add_argument("--csv", required=True)
    p_exp.add_argument("--oracle", action="store_true")
    p_exp.add_argument("--oracle-limit", type=int, default=ORACLE_DEFAULT_LIMIT)
    p_exp.add_argument("--normalized", action="store_true")
    p_exp.add_argument("--timings", action="store_true")
    p_exp.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
