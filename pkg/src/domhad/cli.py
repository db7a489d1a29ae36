"""Command-line interface: graphs in on stdin (or --input), JSON out on stdout."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any

from . import constructive as con
from . import decomposition as dec
from . import exact, experiments, generators
from .graph import Graph, GraphError, components, format_graph, parse_graph
from .models import FLAVOURS, CliqueModel, InvalidCertificate, check_degree_path, verify_model

EXIT = {"ok": 0, "certificate": 0, "exact": 0, "refuted": 1, "unknown": 2, "lower-bound": 2, "error": 3}


@dataclass
class CommandResult:
    status: str
    payload: dict[str, Any] = field(default_factory=dict)
    summary: str = ""

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]

    def to_json(self) -> str:
        return json.dumps({"status": self.status, **self.payload}, sort_keys=True)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 3 instead of argparse's 2
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _read_graph(args) -> Graph:
    if args.input and args.input != "-":
        with open(args.input) as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    return parse_graph(text, args.format)


def _budget(args) -> exact.SearchBudget:
    base = exact.default_budget("domhad")
    return exact.SearchBudget(
        max_vertices=args.max_vertices or base.max_vertices,
        max_nodes=args.budget_nodes or base.max_nodes,
        time_limit=args.budget_seconds or base.time_limit,
    )


def _model_result(model: CliqueModel, g: Graph, extra: dict[str, Any] | None = None) -> CommandResult:
    verdict = verify_model(g, model)
    if not verdict:
        raise InvalidCertificate(verdict.reason)
    payload = {"t": model.t, "certificate": model.to_dict(), **(extra or {})}
    return CommandResult("certificate", payload, f"{model.flavour} K_{model.t}-model, verified")


# --- subcommands -------------------------------------------------------------------


def cmd_verify(args) -> CommandResult:
    g = _read_graph(args)
    with open(args.model) as fh:
        model = CliqueModel.from_json(fh.read())
    if args.flavour:
        model = model.with_flavour(args.flavour)
    verdict = verify_model(g, model)
    if verdict:
        return CommandResult("certificate", {"t": model.t, "flavour": model.flavour},
                             f"valid {model.flavour} K_{model.t}-model")
    return CommandResult("refuted", {"t": model.t, "flavour": model.flavour, **verdict.to_dict()},
                         f"invalid: {verdict.reason}")


def cmd_find(args) -> CommandResult:
    g = _read_graph(args)
    if args.minor:
        if args.t is None:
            raise UsageError("--minor needs --t")
        res = exact.has_clique_minor(g, args.t, _budget(args))
        if res.status == "found":
            return _model_result(res.certificate, g, {"minor": True})
        status = "refuted" if res.status == "absent" else "unknown"
        return CommandResult(status, {"t": args.t, "minor": True}, f"K_{args.t} minor {res.status}")
    if args.t is not None:
        path = check_degree_path(g, args.t)
        if not path:
            return CommandResult("refuted", {"t": args.t, "refutation": path.to_dict()}, path.detail)
        if not args.exact:
            raise UsageError("deciding a fixed t needs --exact")
        res = exact.find_dominating_model(g, args.t, _budget(args))
        if res is None:
            return CommandResult("unknown", {"t": args.t}, "budget exhausted")
        if not res:
            return CommandResult("refuted", {"t": args.t, "refutation": {"method": "exact-search"}},
                                 f"no dominating K_{args.t}-model")
        return _model_result(res.certificate, g)
    if args.exact:
        res = exact.exact_domhad(g, _budget(args))
        return CommandResult(res.status, res.to_dict(), f"domhad {'=' if res.exact else '>='} {res.t}")
    # heuristic: greedy certificate against the degree bound
    model = experiments.greedy_dominating_model(g) if g.n else CliqueModel.of([])
    ub = min(g.n, g.max_degree() + 1)
    status = "exact" if model.t == ub else "lower-bound"
    return CommandResult(status, {"t": model.t, "upper_bound": ub, "certificate": model.to_dict()},
                         f"domhad in [{model.t}, {ub}]")


def _need_seed(args) -> int:
    if args.seed is None:
        raise UsageError(f"method {args.method} is randomized; pass --seed")
    return args.seed


def cmd_construct(args) -> CommandResult:
    g = _read_graph(args)
    method = args.method
    if method == "mindeg3":
        return _model_result(con.construct_k4_min_degree3(g), g)
    if method == "avgdeg":
        if args.t is None:
            raise UsageError("avgdeg needs --t")
        return _model_result(con.construct_avg_degree(g, args.t, args.root), g)
    if method == "dense":
        if args.t is None or args.c is None:
            raise UsageError("dense needs --t and --c")
        return _model_result(con.construct_dense(g, args.t, args.c, _need_seed(args)), g)
    if method == "regular-pseudo":
        if args.t is None:
            raise UsageError("regular-pseudo needs --t")
        try:
            res = con.regular_pseudo_model(g, args.t, _need_seed(args), args.max_attempts, args.near_regular)
        except con.SamplingFailed as exc:
            return CommandResult("unknown", {"t": args.t}, str(exc))
        return _model_result(res.model, g, {"attempts": res.attempts})
    colouring, model = con.min_sum_colouring_pseudo_model(g)
    return _model_result(model, g, {"colouring": colouring.to_dict()})


def cmd_colour(args) -> CommandResult:
    g = _read_graph(args)
    res = con.colour_or_model(g, args.t)
    if res.model is not None:
        verify = verify_model(g, res.model)
        if not verify:
            raise InvalidCertificate(verify.reason)
        return CommandResult("certificate", res.to_dict(), f"dominating K_{args.t}-model")
    return CommandResult("ok", res.to_dict(), f"proper colouring with {res.colouring.palette_size} colours")


def cmd_decompose(args) -> CommandResult:
    g = _read_graph(args)
    out = []
    for comp in components(g):
        h, old = g.induced_subgraph(comp)
        tp = dec.tree_partition(h)
        problems = dec.check_tree_partition(h, tp)
        if problems:
            raise InvalidCertificate("; ".join(problems))
        nodes = tp.to_dict()["nodes"]
        for node in nodes:
            node["part"] = [old[v] for v in node["part"]]
            node["indep"] = [old[v] for v in node["indep"]]
        out.append({"vertices": comp, "height": tp.height(), "nodes": nodes})
    return CommandResult("ok", {"components": out}, f"{len(out)} component(s)")


def cmd_indep_set(args) -> CommandResult:
    g = _read_graph(args)
    target = dec.independence_target(g.n, args.t)
    try:
        ind = dec.independence_bound(g, args.t)
    except dec.DominatingModelFound as found:
        return _model_result(found.model, g, {"target": target})
    return CommandResult("ok", {"independent_set": ind, "size": len(ind), "target": target},
                         f"independent set of size {len(ind)} (target {target})")


def cmd_experiment(args) -> CommandResult:
    with open(args.grid) as fh:
        try:
            grid = experiments.Grid.from_dict(json.load(fh))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    report = experiments.run_sweep(grid, jobs=args.jobs, timings=args.timings)
    text = json.dumps(report, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(experiments.report_csv(report))
    cells = [{k: c[k] for k in ("n", "p", "complete", "aggregate")} for c in report["cells"]]
    complete = all(c["complete"] for c in report["cells"])
    payload = {"cells": cells} if args.out else {"report": report}
    return CommandResult("ok" if complete else "unknown", payload, f"{len(cells)} cell(s)")


def cmd_gen(args) -> str:
    kind, params = args.kind, args.params
    spec = {
        "complete": (1, lambda a: generators.complete(int(a[0]))),
        "cycle": (1, lambda a: generators.cycle(int(a[0]))),
        "subdivided-complete": (2, lambda a: generators.subdivided_complete(int(a[0]), int(a[1]))),
        "gnp": (3, lambda a: experiments.sample_gnp(experiments.GnpSpec(int(a[0]), float(a[1]), int(a[2])))),
        "random-regular": (3, lambda a: generators.random_regular(int(a[0]), int(a[1]), int(a[2]))),
    }
    arity, build = spec[kind]
    if len(params) != arity:
        names = {"complete": "t", "cycle": "n", "subdivided-complete": "n k",
                 "gnp": "n p seed", "random-regular": "n d seed"}[kind]
        raise UsageError(f"gen {kind} takes: {names}")
    try:
        g = build(params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return format_graph(g, args.format)


# --- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="domhad", description="Dominating clique models: search, construction, certificates.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("--input", "-i", help="graph file (default: stdin)")
        p.add_argument("--format", choices=["edge-list", "graph6"], default="edge-list")
        return p

    p = graph_cmd("verify", "check a model against its flavour")
    p.add_argument("--model", required=True, help="model JSON file")
    p.add_argument("--flavour", choices=FLAVOURS, help="override the model's flavour")
    p.set_defaults(func=cmd_verify)

    p = graph_cmd("find", "search for dominating models (or clique minors)")
    p.add_argument("--exact", action="store_true", help="exact search (small graphs)")
    p.add_argument("--t", type=int, help="decide a single order instead of maximising")
    p.add_argument("--minor", action="store_true", help="plain K_t minor instead of dominating model")
    p.add_argument("--budget-nodes", type=int)
    p.add_argument("--budget-seconds", type=float)
    p.add_argument("--max-vertices", type=int)
    p.set_defaults(func=cmd_find)

    p = graph_cmd("construct", "run a degree-forced construction")
    p.add_argument("--method", required=True, choices=["mindeg3", "avgdeg", "dense", "regular-pseudo", "minsum"])
    p.add_argument("--t", type=int)
    p.add_argument("--c", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--root", type=int, help="avgdeg: vertex required in the first part")
    p.add_argument("--max-attempts", type=int, default=100)
    p.add_argument("--near-regular", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = graph_cmd("colour", "proper colouring or dominating K_t-model")
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=cmd_colour)

    p = graph_cmd("decompose", "tree partition per component")
    p.set_defaults(func=cmd_decompose)

    p = graph_cmd("indep-set", "independent set from the tree partition")
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=cmd_indep_set)

    p = sub.add_parser("experiment", help="G(n,p) sweep")
    p.add_argument("--grid", required=True, help="grid JSON: {n, p, trials, epsilon, seed}")
    p.add_argument("--out", help="write the full report here")
    p.add_argument("--csv", help="write per-trial CSV here")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timings", action="store_true", help="record runtime_ms (breaks byte-identical output)")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("gen", help="emit a named graph")
    p.add_argument("kind", choices=["complete", "cycle", "subdivided-complete", "gnp", "random-regular"])
    p.add_argument("params", nargs="*")
    p.add_argument("--format", choices=["edge-list", "graph6"], default="edge-list")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "gen":
            sys.stdout.write(cmd_gen(args))
            return 0
        result = args.func(args)
    except UsageError as exc:
        result = CommandResult("error", {"error": f"usage: {exc}"}, f"usage error: {exc}")
    except (GraphError, con.PreconditionError, ValueError, OSError, exact.BudgetExceeded) as exc:
        result = CommandResult("error", {"error": str(exc)}, f"error: {exc}")
    except InvalidCertificate as exc:
        result = CommandResult("error", {"error": f"internal: {exc}"}, f"internal error: {exc}")
    sys.stdout.write(result.to_json() + "\n")
    if result.summary:
        print(result.summary, file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
