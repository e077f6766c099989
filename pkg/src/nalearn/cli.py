"""Command-line interface.

Subcommands: sample, mask, score, population, learn, compare, experiment.
Exit codes: 0 success, 2 configuration/usage error, 3 check-mode failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import experiments
from .data import read_csv, write_csv
from .errors import NalearnError
from .model import (
    Dag,
    df_complexity,
    load_net,
    load_structure,
    save_structure,
)
from .population import beta_of_collection, check_identifiability
from .sampling import Bernoulli, KPerRecord, apply_mcar, forward_sample
from .scoring import Penalty, power_law, score_decomposable, score_global
from .search import SearchSpace, complexity_profile, learn_structure
from .equivalence import dags_equivalent, edge_precision_recall, edge_f_score


def _penalty_from_args(args, num_vars: int) -> Penalty:
    if args.penalty in ("aic", "bic", "none"):
        return Penalty(args.penalty)
    if args.penalty == "power":
        coef = args.coef if args.coef is not None else 1.0 / num_vars
        return power_law(coef, args.alpha)
    raise SystemExit(2)


def _add_penalty_args(sub):
    sub.add_argument("--penalty", choices=["aic", "bic", "power", "none"], required=True)
    sub.add_argument("--alpha", type=float, default=0.5)
    sub.add_argument("--coef", type=float, default=None)


def cmd_sample(args) -> int:
    net = load_net(args.net)
    data = forward_sample(net, args.n, args.seed)
    write_csv(data, args.out)
    return 0


def cmd_mask(args) -> int:
    variables, _ = _schema_from(args)
    data = read_csv(args.infile, variables)
    if args.mode == "bernoulli":
        probs = [float(x) for x in args.p.split(",")]
        if len(probs) == 1:
            probs = probs * data.num_variables
        model = Bernoulli(probs)
    else:
        model = KPerRecord(args.k)
    write_csv(apply_mcar(data, model, args.seed), args.out)
    return 0


def _schema_from(args):
    if args.net:
        net = load_net(args.net)
        return list(net.variables), net.dag
    variables, dag = load_structure(args.structure)
    return variables, dag


def cmd_score(args) -> int:
    variables, dag = load_structure(args.net_structure)
    data = read_csv(args.data, variables)
    penalty = _penalty_from_args(args, len(variables))
    writer = csv.writer(sys.stdout, lineterminator="\n")
    if args.decomposable:
        total, breakdown = score_decomposable(data, dag, penalty)
        writer.writerow(["node", "parents", "nal", "n_i", "df", "penalized"])
        for b in breakdown:
            writer.writerow(
                [b.node, " ".join(map(str, b.parents)), f"{b.nal:.10g}", b.n_i, b.df,
                 f"{b.penalized:.10g}"]
            )
        writer.writerow(["total", "", "", "", "", f"{total:.10g}"])
    else:
        total = score_global(data, dag, penalty)
        writer.writerow(["total"])
        writer.writerow([f"{total:.10g}"])
    return 0


def _missing_from_spec(spec: str, num_vars: int):
    if spec == "none":
        return None
    kind, _, rest = spec.partition(":")
    if kind == "bernoulli":
        probs = [float(x) for x in rest.split(",")]
        if len(probs) == 1:
            probs = probs * num_vars
        return Bernoulli(probs)
    if kind == "kper":
        return KPerRecord(int(rest))
    raise SystemExit(2)


def cmd_population(args) -> int:
    net = load_net(args.net)
    if args.candidates == "order":
        order = net.dag.topological_order()
        space = SearchSpace(order, args.max_parents)
        from itertools import product

        candidate_lists = [space.candidate_parent_sets(i) for i in range(net.num_nodes)]
        candidates = [Dag(choice) for choice in product(*candidate_lists)]
    else:
        with open(args.candidates, "r", encoding="utf-8") as f:
            candidates = [Dag(p) for p in json.load(f)]
    missing = _missing_from_spec(args.missing, net.num_nodes)
    report = check_identifiability(net, candidates, missing)
    beta = beta_of_collection(candidates, missing, net.num_nodes)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["dag", "df", "population_nal", "is_superset_of_true", "maximizer"])
    for idx, cand in enumerate(report.candidates):
        writer.writerow(
            [
                idx,
                cand.df,
                f"{cand.nal:.12g}",
                int(cand.is_superset_of_true),
                int(cand.is_maximizer),
            ]
        )
    print(f"# beta = {beta:.10g}", file=sys.stdout)
    print(f"# identifiable = {report.identifiable}", file=sys.stdout)
    return 0


def cmd_learn(args) -> int:
    variables, _ = load_structure(args.structure) if args.structure else (None, None)
    if variables is None:
        raise SystemExit(2)
    data = read_csv(args.data, variables)
    names = [v.name for v in variables]
    if args.order:
        order = [names.index(nm) for nm in args.order.split(",")]
    else:
        order = list(range(len(names)))
    space = SearchSpace(order, args.max_parents)
    penalty = _penalty_from_args(args, len(variables))
    learned = learn_structure(data, space, penalty)
    save_structure(learned, variables, args.out)
    if args.profile:
        points = complexity_profile(data, space)
        with open(args.profile, "w", encoding="utf-8", newline="\n") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(["t", "score", "edges"])
            for pt in points:
                edges = ";".join(f"{p}->{i}" for p, i in pt.dag.edges())
                writer.writerow([pt.t, f"{pt.best_score:.10g}", edges])
    return 0


def cmd_compare(args) -> int:
    _, truth = load_structure(args.truth)
    _, estimate = load_structure(args.estimate)
    precision, recall = edge_precision_recall(truth, estimate)
    f = edge_f_score(truth, estimate)
    equivalent = dags_equivalent(truth, estimate)
    print(f"precision {precision:.6g}")
    print(f"recall {recall:.6g}")
    print(f"f_score {f:.6g}")
    print(f"equivalent {'yes' if equivalent else 'no'}")
    return 0


def cmd_experiment(args) -> int:
    config = experiments.load_config(args.config)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    mode = args.mode
    if mode == "two-node":
        rows = experiments.run_two_node(config)
        experiments.write_rows(rows, out_dir / "table1.csv")
        if args.check:
            failures = experiments.check_two_node(rows)
            for msg in failures:
                print(f"CHECK FAIL {msg}", file=sys.stderr)
            if failures:
                return 3
    elif mode == "recovery":
        rows = experiments.run_recovery(config, jobs=args.jobs)
        experiments.write_rows(rows, out_dir / "recovery.csv")
    elif mode == "rates":
        rows = experiments.run_rate_probe(config)
        experiments.write_rows(rows, out_dir / "rates.csv")
    else:
        raise SystemExit(2)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nalearn",
        description="Structure learning of discrete Bayesian networks from "
        "incomplete data via penalized node-average log-likelihood.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("sample", help="forward-sample complete records")
    p.add_argument("--net", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample)

    p = subs.add_parser("mask", help="apply MCAR masking to a CSV dataset")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--mode", choices=["bernoulli", "kper"], required=True)
    p.add_argument("--p", default=None, help="comma list of observation probs")
    p.add_argument("--k", type=int, default=None, help="deletions per record")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--net", default=None, help="network file giving the schema")
    p.add_argument("--structure", default=None, help="structure file giving the schema")
    p.set_defaults(func=cmd_mask)

    p = subs.add_parser("score", help="score a structure against a dataset")
    p.add_argument("--net-structure", dest="net_structure", required=True)
    p.add_argument("--data", required=True)
    _add_penalty_args(p)
    p.add_argument("--decomposable", action="store_true")
    p.set_defaults(func=cmd_score)

    p = subs.add_parser("population", help="population NAL / identifiability report")
    p.add_argument("--net", required=True)
    p.add_argument("--candidates", required=True, help='"order" or a JSON list file')
    p.add_argument("--missing", default="none", help="none | bernoulli:p,... | kper:k")
    p.add_argument("--max-parents", type=int, default=3)
    p.set_defaults(func=cmd_population)

    p = subs.add_parser("learn", help="learn a structure from data")
    p.add_argument("--data", required=True)
    p.add_argument("--structure", required=True, help="structure file giving the schema")
    p.add_argument("--order", default=None, help="comma list of variable names")
    p.add_argument("--max-parents", type=int, default=3)
    _add_penalty_args(p)
    p.add_argument("--out", required=True)
    p.add_argument("--profile", default=None, help="write the complexity profile CSV")
    p.set_defaults(func=cmd_learn)

    p = subs.add_parser("compare", help="compare an estimate against the truth")
    p.add_argument("--truth", required=True)
    p.add_argument("--estimate", required=True)
    p.set_defaults(func=cmd_compare)

    p = subs.add_parser("experiment", help="run a Monte Carlo experiment")
    p.add_argument("--config", required=True)
    p.add_argument("--mode", choices=["two-node", "recovery", "rates"], required=True)
    p.add_argument("--out", default=".")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NalearnError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
