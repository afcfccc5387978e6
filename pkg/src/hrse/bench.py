"""Benchmark harness: method comparison grids and space-depth sweeps.

Depths use two-tier averaging: the per-iteration circuit depth is measured
for each seeded instance, then those values are averaged across instances.
Every reported depth is recomputed from an emitted circuit file (serialized
and re-parsed), never from cached model numbers, so the cost model and the
circuits keep each other honest. Instance systems depend only on the seed,
the variable count, and the instance index, so every method, budget, and
level sees identical inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping

from . import asdt, baselines, synth
from .boolsys import BooleanSystem, generate_planted
from .circuit import Circuit, depth, emit_text, gate_count, parse_text
from .cost import leaf_cost_units
from .lowering import DecompositionPlan, decompose as decompose_circuit
from .tree import HrseTree, metrics

CSV_COLUMNS = (
    "n,k,level,method,instances,q_depth_mean,iter_depth_mean,gates_total,gates_ccx,"
    "leaf_cost_delta_units,avg_leaf_depth,avg_nonleaf_depth,opt_ratio"
)


def default_eqs_per_iter(n: int) -> int:
    """Functions handled per iteration for a given variable count."""
    return -(-n // 3)


@dataclass(frozen=True)
class BenchConfig:
    var_counts: tuple[int, ...]
    aux_budgets: Mapping[int, tuple[int, ...]]  # keyed by variable count
    levels: tuple[int, ...] = (1, 2, 3)
    instances: int = 15
    seed: int = 0
    strategy: str = "noancilla"
    root_bonus: bool = False
    eqs_per_iter: Mapping[int, int] | None = None
    degree: int = 2

    def eqs_for(self, n: int) -> int:
        if self.eqs_per_iter and n in self.eqs_per_iter:
            return self.eqs_per_iter[n]
        return default_eqs_per_iter(n)

    @staticmethod
    def uniform_aux(var_counts, aux, **kw) -> "BenchConfig":
        budgets = {n: tuple(aux) for n in var_counts}
        return BenchConfig(var_counts=tuple(var_counts), aux_budgets=budgets, **kw)


@dataclass(frozen=True)
class BenchRow:
    n: int
    k: int
    level: int | None
    method: str
    instances: int
    feasible: bool
    q_depth_mean: float | None = None
    iter_depth_mean: float | None = None
    gates_total: float | None = None
    gates_ccx: float | None = None
    leaf_cost_delta_units: int | None = None
    avg_leaf_depth: float | None = None
    avg_nonleaf_depth: float | None = None
    opt_ratio: float | None = None


def instance_systems(cfg: BenchConfig, n: int) -> list[BooleanSystem]:
    eqs = cfg.eqs_for(n)
    return [
        generate_planted(n, eqs, degree=cfg.degree, seed=cfg.seed * 7919 + n * 131 + i)
        for i in range(cfg.instances)
    ]


@dataclass(frozen=True)
class _InstanceStats:
    q_depth: int
    iter_depth: int
    gates_total: int
    gates_ccx: int


def _instance_stats(
    tree: HrseTree, system: BooleanSystem, k: int, root_bonus: bool, strategy: str
) -> _InstanceStats:
    lowered = synth.synthesize_lowered(
        tree, system, "phase", strategy=strategy, k=k, root_bonus=root_bonus
    )
    # Round-trip through the text format: depths come from emitted artifacts.
    lowered = parse_text(emit_text(lowered))
    q_depth = depth(lowered)

    diffuser = synth.grover_diffuser(system.n)
    # The whole pool is clean once the oracle has uncomputed, so the
    # diffuser's phase flip may use it under the vchain strategy.
    pool = tuple(range(system.n, system.n + k))
    clean = {i: pool for i, g in enumerate(diffuser.gates) if g.kind == "mcz"}
    plan = DecompositionPlan(strategy=strategy, clean=clean)
    lowered_diff = decompose_circuit(Circuit(lowered.width, diffuser.gates), plan)
    iteration = lowered + lowered_diff
    return _InstanceStats(
        q_depth=q_depth,
        iter_depth=depth(iteration),
        gates_total=len(lowered.gates),
        gates_ccx=gate_count(lowered, ("ccx",)),
    )


def _mean(values) -> float:
    values = list(values)
    return sum(values) / len(values)


def _method_stats(
    cfg: BenchConfig, tree: HrseTree, systems: list[BooleanSystem], k: int
) -> dict:
    stats = [
        _instance_stats(tree, s, k, cfg.root_bonus, cfg.strategy) for s in systems
    ]
    tree_metrics = metrics(tree)
    return {
        "q_depth_mean": _mean(s.q_depth for s in stats),
        "iter_depth_mean": _mean(s.iter_depth for s in stats),
        "gates_total": _mean(s.gates_total for s in stats),
        "gates_ccx": _mean(s.gates_ccx for s in stats),
        "leaf_cost_delta_units": leaf_cost_units(tree),
        "avg_leaf_depth": float(tree_metrics.avg_leaf_depth),
        "avg_nonleaf_depth": float(tree_metrics.avg_nonleaf_depth),
    }


def opt_ratio(baseline_depth: float, ours_depth: float) -> float:
    return (baseline_depth - ours_depth) / baseline_depth


def run_compare(cfg: BenchConfig) -> list[BenchRow]:
    """One row per (n, k, level, method); infeasible baseline cells stay empty."""
    rows: list[BenchRow] = []
    for n in cfg.var_counts:
        systems = instance_systems(cfg, n)
        m = cfg.eqs_for(n)
        for k in cfg.aux_budgets[n]:
            asdt_tree, _ = asdt.build(asdt.BuildSpec(m=m, k=k, root_bonus=cfg.root_bonus))
            asdt_stats = _method_stats(cfg, asdt_tree, systems, k)
            for level in cfg.levels:
                wrow: BenchRow
                try:
                    wtree = baselines.build_wcycle(
                        baselines.WcycleSpec(m=m, k=k, level=level, root_bonus=cfg.root_bonus)
                    )
                except baselines.WcycleInfeasible:
                    wrow = BenchRow(
                        n=n, k=k, level=level, method="wcycle",
                        instances=cfg.instances, feasible=False,
                    )
                else:
                    wstats = _method_stats(cfg, wtree, systems, k)
                    wrow = BenchRow(
                        n=n, k=k, level=level, method="wcycle",
                        instances=cfg.instances, feasible=True, **wstats,
                    )
                arow = BenchRow(
                    n=n, k=k, level=level, method="asdt",
                    instances=cfg.instances, feasible=True, **asdt_stats,
                )
                if wrow.feasible:
                    arow = replace(
                        arow, opt_ratio=opt_ratio(wrow.q_depth_mean, arow.q_depth_mean)
                    )
                rows.append(arow)
                rows.append(wrow)
    return rows


def run_sweep(cfg: BenchConfig) -> tuple[list[BenchRow], dict]:
    """Depth versus auxiliary budget for each variable count.

    Returns the rows plus a detail dict: per-instance depth series keyed by
    (n, instance index) as a list of (k, depth), and the detected plateau as
    the first budget from which the mean depth never changes again.
    """
    rows: list[BenchRow] = []
    series: dict[tuple[int, int], list[tuple[int, int]]] = {}
    plateaus: dict[int, int] = {}
    for n in cfg.var_counts:
        systems = instance_systems(cfg, n)
        m = cfg.eqs_for(n)
        means: list[tuple[int, float]] = []
        for k in cfg.aux_budgets[n]:
            tree, _ = asdt.build(asdt.BuildSpec(m=m, k=k, root_bonus=cfg.root_bonus))
            per_instance = [
                _instance_stats(tree, s, k, cfg.root_bonus, cfg.strategy) for s in systems
            ]
            for i, st in enumerate(per_instance):
                series.setdefault((n, i), []).append((k, st.q_depth))
            tree_metrics = metrics(tree)
            row = BenchRow(
                n=n, k=k, level=None, method="asdt",
                instances=cfg.instances, feasible=True,
                q_depth_mean=_mean(s.q_depth for s in per_instance),
                iter_depth_mean=_mean(s.iter_depth for s in per_instance),
                gates_total=_mean(s.gates_total for s in per_instance),
                gates_ccx=_mean(s.gates_ccx for s in per_instance),
                leaf_cost_delta_units=leaf_cost_units(tree),
                avg_leaf_depth=float(tree_metrics.avg_leaf_depth),
                avg_nonleaf_depth=float(tree_metrics.avg_nonleaf_depth),
            )
            rows.append(row)
            means.append((k, row.q_depth_mean))
        final = means[-1][1]
        plateau_k = means[-1][0]
        for k, value in reversed(means):
            if value == final:
                plateau_k = k
            else:
                break
        plateaus[n] = plateau_k
    return rows, {"series": series, "plateau": plateaus}


def _cell(value, fmt: str = "{:.4f}") -> str:
    if value is None:
        return "--"
    if isinstance(value, int):
        return str(value)
    return fmt.format(value)


def rows_to_csv(rows: list[BenchRow]) -> str:
    lines = [CSV_COLUMNS]
    for r in rows:
        lines.append(
            ",".join(
                [
                    str(r.n),
                    str(r.k),
                    "--" if r.level is None else str(r.level),
                    r.method,
                    str(r.instances),
                    _cell(r.q_depth_mean),
                    _cell(r.iter_depth_mean),
                    _cell(r.gates_total),
                    _cell(r.gates_ccx),
                    _cell(r.leaf_cost_delta_units),
                    _cell(r.avg_leaf_depth),
                    _cell(r.avg_nonleaf_depth),
                    _cell(r.opt_ratio),
                ]
            )
        )
    return "\n".join(lines) + "\n"
