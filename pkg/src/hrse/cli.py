"""Command-line front end: tree building, costing, synthesis, verification,
brute-force optimality checks, and the compare/sweep benchmark reports."""

from __future__ import annotations

import argparse
import sys

from . import asdt, baselines, bench, boolsys, revsim, synth, treeio, viz
from .circuit import depth, emit_text, parse_text, peephole
from .cost import CostModel, evaluate_closed_form, evaluate_postorder, leaf_cost_units
from .tree import metrics


def parse_gamma(spec: str) -> CostModel:
    """--gamma values: unit | linear:a,b | quadratic:a,b,c | measured[:strategy]."""
    kind, _, params = spec.partition(":")
    if kind == "unit":
        return CostModel.unit()
    if kind == "linear":
        a, b = (_num(v) for v in params.split(","))
        return CostModel.linear(a, b)
    if kind == "quadratic":
        a, b, c = (_num(v) for v in params.split(","))
        return CostModel.quadratic(a, b, c)
    if kind == "measured":
        return CostModel.measured(params or "vchain")
    raise argparse.ArgumentTypeError(f"bad gamma spec {spec!r}")


def _num(text: str):
    value = float(text)
    return int(value) if value == int(value) else value


def parse_int_list(spec: str) -> tuple[int, ...]:
    """Comma list or inclusive range: '4,5,6' or '5-10'."""
    if "-" in spec and "," not in spec:
        lo, hi = spec.split("-")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(v) for v in spec.split(","))


def parse_aux_grid(spec: str, var_counts: tuple[int, ...]):
    """Uniform list ('4,5,6') or per-n mapping ('15:4,5,6;20:4,5,6')."""
    if ":" not in spec:
        values = parse_int_list(spec)
        return {n: values for n in var_counts}
    grid = {}
    for part in spec.split(";"):
        head, _, tail = part.partition(":")
        grid[int(head)] = parse_int_list(tail)
    return grid


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def cmd_tree(args) -> int:
    if args.builder == "asdt":
        tree, trace = asdt.build(asdt.BuildSpec(m=args.m, k=args.k, root_bonus=args.root_bonus))
        if args.trace:
            _write(args.trace, trace.as_text())
    else:
        tree = baselines.build_wcycle(
            baselines.WcycleSpec(m=args.m, k=args.k, level=args.level, root_bonus=args.root_bonus)
        )
    _write(args.out, treeio.serialize(tree))
    if args.dot:
        _write(args.dot, treeio.export_dot(tree))
    return 0


def cmd_cost(args) -> int:
    with open(args.tree) as fh:
        tree = treeio.deserialize(fh.read())
    model = args.gamma
    if args.delta != 1:
        model = CostModel(model.gamma_kind, args.delta, model.params, model.strategy)
    expr = evaluate_closed_form(tree, model)
    annotated = evaluate_postorder(tree, model)
    stats = metrics(tree)
    gammas = " + ".join(f"{m}*gamma({k})" for k, m in expr.gamma_terms) or "0"
    print(f"symbolic: {expr.delta_coeff}*delta + {gammas}")
    print(f"numeric total: {expr.numeric_value}")
    print(f"leaf cost: {leaf_cost_units(tree)} delta units")
    print(f"covered functions: {annotated.root_attr.leaves}")
    print(
        f"avg depth: leaves {float(stats.avg_leaf_depth):.4f}, "
        f"non-leaves {float(stats.avg_nonleaf_depth):.4f}, all {float(stats.avg_all_node_depth):.4f}"
    )
    return 0


def cmd_synth(args) -> int:
    with open(args.system) as fh:
        system = boolsys.parse(fh.read())
    m = len(system.equations)
    if args.tree:
        with open(args.tree) as fh:
            tree = treeio.deserialize(fh.read())
    else:
        tree, _ = asdt.build(asdt.BuildSpec(m=m, k=args.k, root_bonus=args.root_bonus))
    if args.lower:
        circuit = synth.synthesize_lowered(
            tree, system, args.mode, strategy=args.decompose, k=args.k, root_bonus=args.root_bonus
        )
    else:
        circuit = synth.synthesize(tree, system, args.mode, k=args.k, root_bonus=args.root_bonus)
    if args.peephole:
        circuit = peephole(circuit)
    if args.layout:
        layout = synth.allocate(tree, system.n, args.k, args.mode)
        sys.stderr.write(layout.describe())
    _write(args.out, emit_text(circuit))
    sys.stderr.write(f"gates: {len(circuit.gates)}, depth: {depth(circuit)}\n")
    return 0


def cmd_verify(args) -> int:
    with open(args.circuit) as fh:
        circuit = parse_text(fh.read())
    with open(args.system) as fh:
        system = boolsys.parse(fh.read())
    coverage = "sample" if args.sample else "full"
    report = revsim.verify_oracle(
        circuit, system, args.mode, coverage=coverage, sample_count=args.sample or 0, seed=args.seed
    )
    sys.stdout.write(report.as_text())
    return 0 if report.ok else 1


def cmd_bruteforce(args) -> int:
    cert = baselines.min_leaf_cost(
        args.m, args.k, root_bonus=args.root_bonus, include_single_child=args.include_single_child
    )
    sys.stdout.write(cert.as_text())
    return 0 if cert.optimal else 1


def cmd_gen(args) -> int:
    if args.no_unique:
        system = boolsys.generate_planted(args.vars, args.eqs, degree=args.degree, seed=args.seed)
    else:
        system = boolsys.generate(args.vars, args.eqs, degree=args.degree, seed=args.seed)
    _write(args.out, boolsys.emit(system))
    return 0


def _bench_config(args) -> bench.BenchConfig:
    var_counts = parse_int_list(args.vars)
    return bench.BenchConfig(
        var_counts=var_counts,
        aux_budgets=parse_aux_grid(args.aux, var_counts),
        levels=parse_int_list(args.levels) if hasattr(args, "levels") else (1,),
        instances=args.instances,
        seed=args.seed,
        strategy=args.decompose,
        root_bonus=args.root_bonus,
        eqs_per_iter={int(k): int(v) for k, v in
                      (pair.split(":") for pair in args.eqs_per_iter.split(";"))}
        if args.eqs_per_iter else None,
    )


def _figure_path(args) -> str | None:
    """Figures render next to the CSV by default; --no-plot suppresses them."""
    if args.no_plot:
        return None
    if args.plot:
        return args.plot
    if args.csv and args.csv != "-":
        root = args.csv[:-4] if args.csv.endswith(".csv") else args.csv
        return root + ".png"
    return None


def cmd_compare(args) -> int:
    rows = bench.run_compare(_bench_config(args))
    _write(args.csv, bench.rows_to_csv(rows))
    figure = _figure_path(args)
    if figure:
        viz.save_compare_figure(rows, figure)
    return 0


def cmd_sweep(args) -> int:
    rows, detail = bench.run_sweep(_bench_config(args))
    _write(args.csv, bench.rows_to_csv(rows))
    for n, k in sorted(detail["plateau"].items()):
        sys.stderr.write(f"plateau: n={n} from k={k}\n")
    figure = _figure_path(args)
    if figure:
        viz.save_sweep_figure(rows, figure)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hrse", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--root-bonus", action="store_true")

    p = sub.add_parser("tree", help="build a tree and emit text/DOT")
    p.add_argument("builder", choices=("asdt", "wcycle"))
    p.add_argument("-m", type=int, required=True, help="function count")
    p.add_argument("-k", type=int, required=True, help="auxiliary qubit budget")
    p.add_argument("--level", type=int, default=1, help="recursion level (wcycle)")
    p.add_argument("-o", "--out", default="-")
    p.add_argument("--dot", default=None)
    p.add_argument("--trace", default=None)
    common(p)
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("cost", help="evaluate a tree under a cost model")
    p.add_argument("--tree", required=True)
    p.add_argument("--delta", type=_num, default=1)
    p.add_argument("--gamma", type=parse_gamma, default=CostModel.unit())
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("synth", help="synthesize an oracle circuit")
    p.add_argument("--system", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--tree", default=None, help="use a prebuilt tree file")
    p.add_argument("--mode", choices=synth.MODES, default="phase")
    p.add_argument("--lower", action="store_true", help="decompose multi-controlled gates")
    p.add_argument("--decompose", choices=("vchain", "noancilla"), default="noancilla")
    p.add_argument("--peephole", action="store_true")
    p.add_argument("--layout", action="store_true", help="dump the qubit layout to stderr")
    p.add_argument("-o", "--out", default="-")
    common(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="check an oracle circuit against its system")
    p.add_argument("--circuit", required=True)
    p.add_argument("--system", required=True)
    p.add_argument("--mode", choices=synth.MODES, default="phase")
    p.add_argument("--sample", type=int, default=None, help="sampled coverage instead of full")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bruteforce", help="exact minimum leaf cost and witness")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--include-single-child", action="store_true")
    common(p)
    p.set_defaults(func=cmd_bruteforce)

    p = sub.add_parser("gen", help="generate a Boolean equation system")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--eqs", type=int, required=True)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--no-unique", action="store_true")
    p.add_argument("-o", "--out", default="-")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    for name, runner, with_levels in (("compare", cmd_compare, True), ("sweep", cmd_sweep, False)):
        p = sub.add_parser(name, help=f"run the {name} benchmark")
        p.add_argument("--vars", required=True, help="variable counts, e.g. 15,20,25 or 9-16")
        p.add_argument("--aux", required=True, help="budgets: '4,5,6' or '15:4,5,6;20:5,6'")
        if with_levels:
            p.add_argument("--levels", default="1,2,3")
        p.add_argument("--instances", type=int, default=15)
        p.add_argument("--eqs-per-iter", default=None, help="override, e.g. '15:5;20:7'")
        p.add_argument("--decompose", choices=("vchain", "noancilla"), default="noancilla")
        p.add_argument("--csv", default="-")
        p.add_argument("--plot", default=None, help="figure path (default: next to the CSV)")
        p.add_argument("--no-plot", action="store_true", help="skip figure rendering")
        common(p)
        p.set_defaults(func=runner)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (
        asdt.CapacityExceeded,
        asdt.InvalidSpec,
        baselines.WcycleInfeasible,
        boolsys.ParseError,
        boolsys.GenerationFailed,
        boolsys.VariableCountTooLarge,
        treeio.ParseError,
        treeio.ValidationFailure,
        synth.SizeMismatch,
        synth.LeafCountMismatch,
        FileNotFoundError,
    ) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
