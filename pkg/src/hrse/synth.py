"""Lowering an oracle tree plus a Boolean system to a circuit.

Qubit convention (documented in docs/formats.md): inputs occupy qubits
0..n-1, the auxiliary pool n..n+k-1, and XOR mode appends one output qubit at
n+k. Phase mode has width n+k. Each tree node owns a contiguous block of
pool qubits: its result qubit first, then workspace shared by its children.
Child i starts one slot further in than child i-1, because child i-1's
result qubit stays live while child i runs; that is exactly why sibling
sizes descend one by one.

A node's circuit is: each child's compute block in descending size order,
one merge gate over the child results, then each child's uncompute block
(the exact gate-reversed inverse of its compute block) in reverse child
order, since overlapping sibling blocks only invert cleanly innermost-first.
The root merge targets the output qubit (XOR mode) or is a phase flip over
the child results (phase mode); in both cases the faithful root's own result
slot stays idle, which the bonus reading reclaims as an extra child slot.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .boolsys import BooleanSystem, encode_indicator
from .circuit import Circuit, Gate, ccx, cx, h, mcx, mcz, x, z
from .lowering import DecompositionPlan, decompose as decompose_circuit
from .tree import HrseTree, validate

MODES = ("xor", "phase")


class SizeMismatch(ValueError):
    pass


class LeafCountMismatch(ValueError):
    pass


@dataclass(frozen=True)
class QubitLayout:
    n: int
    k: int
    mode: str
    root_bonus: bool
    width: int
    input_qubits: tuple[int, ...]
    pool: tuple[int, ...]
    output: int | None
    blocks: Mapping[int, tuple[int, ...]]
    results: Mapping[int, int | None]
    merge_free: Mapping[int, tuple[int, ...]]

    def describe(self) -> str:
        lines = [
            f"mode={self.mode} n={self.n} k={self.k} root_bonus={self.root_bonus} width={self.width}",
            f"inputs: {list(self.input_qubits)}",
            f"pool: {list(self.pool)}",
            f"output: {self.output}",
        ]
        for nid in sorted(self.blocks):
            lines.append(
                f"node {nid}: block={list(self.blocks[nid])} result={self.results.get(nid)}"
                f" free_at_merge={list(self.merge_free.get(nid, ()))}"
            )
        return "\n".join(lines) + "\n"


def allocate(tree: HrseTree, n: int, k: int, mode: str) -> QubitLayout:
    """Deterministic qubit assignment for every node of a valid tree.

    The tree's root size selects the convention: equal to ``k`` is the
    faithful reading, ``k + 1`` the bonus reading. Anything else is a
    :class:`SizeMismatch`.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    report = validate(tree)
    if not report.ok:
        raise SizeMismatch("tree fails validation:\n" + report.as_text())
    root_size = tree.root_attr.size
    if root_size == k + 1:
        root_bonus = True
    elif root_size == k:
        root_bonus = False
    else:
        raise SizeMismatch(f"root size {root_size} matches neither budget {k} nor bonus {k + 1}")

    width = n + k + (1 if mode == "xor" else 0)
    inputs = tuple(range(n))
    pool = tuple(range(n, n + k))
    output = n + k if mode == "xor" else None

    blocks: dict[int, tuple[int, ...]] = {}
    results: dict[int, int | None] = {}
    merge_free: dict[int, tuple[int, ...]] = {}

    def place(nid: int, block: tuple[int, ...], workspace: tuple[int, ...]) -> None:
        # workspace = the slots this node's children draw from; for normal
        # nodes that is block minus the node's own result slot.
        blocks[nid] = block
        kids = tree.children[nid]
        if not kids:
            return
        offset = 0
        for child in kids:
            csize = tree.nodes[child].size
            cblock = workspace[offset : offset + csize]
            if len(cblock) != csize:
                raise SizeMismatch(f"node {child} of size {csize} does not fit its parent's workspace")
            results[child] = cblock[0]
            place(child, cblock, cblock[1:])
            offset += 1
        merge_free[nid] = workspace[len(kids):]

    root = tree.root
    if tree.is_leaf(root):
        blocks[root] = pool
        if mode == "xor":
            results[root] = output
            merge_free[root] = pool
        else:
            if k < 1:
                raise SizeMismatch("phase mode with a single function needs one pool qubit")
            results[root] = pool[0]
            merge_free[root] = pool[1:]
    elif root_bonus:
        # Virtual result slot: all k pool qubits serve as root workspace.
        results[root] = output  # None in phase mode
        place(root, pool, pool)
    else:
        # pool[0] is the root's result slot; the root merge never writes it,
        # so it stays clean and is handed to the merge as a free helper.
        results[root] = output  # None in phase mode
        place(root, pool, pool[1:])
        merge_free[root] = (pool[0],) + merge_free[root]

    return QubitLayout(
        n=n,
        k=k,
        mode=mode,
        root_bonus=root_bonus,
        width=width,
        input_qubits=inputs,
        pool=pool,
        output=output,
        blocks=blocks,
        results=results,
        merge_free=merge_free,
    )


@dataclass(frozen=True)
class LeafAssignment:
    mapping: Mapping[int, int]  # leaf node id -> equation index
    strategy: str


def assign_leaves(tree: HrseTree, system: BooleanSystem, strategy: str = "by_index") -> LeafAssignment:
    """Pair leaves with equations.

    ``by_index`` pairs leaves in build order (ascending node id, the order
    the builders create them) with equations in file order. ``cost_desc``
    sends costlier indicators to shallower leaves, which is the greedy
    optimum for a fixed tree since each leaf's cost is scaled by
    ``2**depth``.
    """
    leaf_ids = sorted(tree.leaf_ids())
    if len(leaf_ids) != len(system.equations):
        raise LeafCountMismatch(
            f"{len(leaf_ids)} leaves vs {len(system.equations)} equations"
        )
    if strategy == "by_index":
        mapping = {leaf: i for i, leaf in enumerate(leaf_ids)}
    elif strategy == "cost_desc":
        by_depth = sorted(leaf_ids, key=lambda nid: (tree.nodes[nid].depth, nid))
        costs = [len(eq.monomials) + 1 for eq in system.equations]
        by_cost = sorted(range(len(costs)), key=lambda i: (-costs[i], i))
        mapping = dict(zip(by_depth, by_cost))
    else:
        raise ValueError(f"unknown assignment strategy {strategy!r}")
    return LeafAssignment(mapping=mapping, strategy=strategy)


def _merge_gate(layout: QubitLayout, tree: HrseTree, nid: int) -> Gate:
    kid_results = [layout.results[c] for c in tree.children[nid]]
    fan_in = len(kid_results)
    target = layout.results[nid]
    if target is None:  # phase-mode root
        if fan_in == 1:
            return z(kid_results[0])
        return mcz(kid_results)
    if fan_in == 1:
        return cx(kid_results[0], target)
    if fan_in == 2:
        return ccx(kid_results[0], kid_results[1], target)
    return mcx(kid_results, target)


def _emit(
    tree: HrseTree, system: BooleanSystem, layout: QubitLayout, assignment: LeafAssignment
) -> tuple[list[Gate], dict[int, tuple[int, ...]]]:
    """Gate list plus, per gate index, the clean qubits free at that gate."""

    def block(nid: int) -> tuple[list[Gate], list[tuple[int, tuple[int, ...]]]]:
        kids = tree.children[nid]
        if not kids:
            eq = system.equations[assignment.mapping[nid]]
            enc = encode_indicator(eq, layout.input_qubits, layout.results[nid], layout.width)
            own = layout.blocks[nid]
            free = tuple(q for q in own if q != layout.results[nid])
            infos = [(i, free) for i, g in enumerate(enc.gates) if g.kind == "mcx"]
            return list(enc.gates), infos

        gates: list[Gate] = []
        infos: list[tuple[int, tuple[int, ...]]] = []
        parts = [block(c) for c in kids]
        for sub_gates, sub_infos in parts:
            off = len(gates)
            gates.extend(sub_gates)
            infos.extend((off + i, free) for i, free in sub_infos)
        merge = _merge_gate(layout, tree, nid)
        if merge.kind in ("mcx", "mcz"):
            infos.append((len(gates), layout.merge_free[nid]))
        gates.append(merge)
        # Sibling blocks overlap (each child reuses the previous one's
        # workspace), so the per-child inverse blocks must run in reverse
        # child order; together they invert the whole compute prefix.
        for sub_gates, sub_infos in reversed(parts):
            off = len(gates)
            last = len(sub_gates) - 1
            gates.extend(reversed(sub_gates))
            infos.extend((off + last - i, free) for i, free in sub_infos)
        return gates, infos

    root = tree.root
    if tree.is_leaf(root):
        eq = system.equations[assignment.mapping[root]]
        enc = encode_indicator(eq, layout.input_qubits, layout.results[root], layout.width)
        free = tuple(q for q in layout.merge_free[root])
        gates = list(enc.gates)
        infos = [(i, free) for i, g in enumerate(gates) if g.kind == "mcx"]
        if layout.mode == "phase":
            # Single function: flip the phase off the computed indicator,
            # then uncompute it.
            base = list(gates)
            gates.append(z(layout.results[root]))
            gates.extend(reversed(base))
            infos.extend((2 * len(base) - i, f) for i, f in list(infos))
        return gates, dict(infos)

    gates, infos = block(root)
    return gates, dict(infos)


def synthesize(
    tree: HrseTree,
    system: BooleanSystem,
    mode: str = "phase",
    k: int | None = None,
    root_bonus: bool = False,
    layout: QubitLayout | None = None,
    assignment: LeafAssignment | None = None,
) -> Circuit:
    """Full oracle circuit over native MCX/MCZ merges.

    XOR mode maps |x>|0...0>|0> to |x>|0...0>|b XOR F(x)>; phase mode
    multiplies each basis state by (-1)**F(x) and restores every pool qubit,
    where F is the AND of all equation indicators.
    """
    if layout is None:
        if k is None:
            k = tree.root_attr.size - (1 if root_bonus else 0)
        layout = allocate(tree, system.n, k, mode)
    if assignment is None:
        assignment = assign_leaves(tree, system)
    gates, _ = _emit(tree, system, layout, assignment)
    return Circuit(layout.width, tuple(gates))


def merge_plan(
    tree: HrseTree,
    system: BooleanSystem,
    mode: str = "phase",
    strategy: str = "noancilla",
    k: int | None = None,
    root_bonus: bool = False,
    layout: QubitLayout | None = None,
    assignment: LeafAssignment | None = None,
) -> DecompositionPlan:
    """Decomposition plan for the synthesized oracle.

    Clean helpers for each multi-controlled gate are the owning node's
    workspace qubits not holding a live child result at that point; they are
    |0> by the uncompute discipline.
    """
    if layout is None:
        if k is None:
            k = tree.root_attr.size - (1 if root_bonus else 0)
        layout = allocate(tree, system.n, k, mode)
    if assignment is None:
        assignment = assign_leaves(tree, system)
    _, clean = _emit(tree, system, layout, assignment)
    return DecompositionPlan(strategy=strategy, clean=clean)


def synthesize_lowered(
    tree: HrseTree,
    system: BooleanSystem,
    mode: str = "phase",
    strategy: str = "noancilla",
    k: int | None = None,
    root_bonus: bool = False,
) -> Circuit:
    """Synthesize and decompose in one step, reusing one emission pass."""
    if k is None:
        k = tree.root_attr.size - (1 if root_bonus else 0)
    layout = allocate(tree, system.n, k, mode)
    assignment = assign_leaves(tree, system)
    gates, clean = _emit(tree, system, layout, assignment)
    circuit = Circuit(layout.width, tuple(gates))
    plan = DecompositionPlan(strategy=strategy, clean=clean)
    return decompose_circuit(circuit, plan)


def measured_leaf_costs(
    tree: HrseTree, system: BooleanSystem, assignment: LeafAssignment | None = None
) -> dict[int, int]:
    """Per-leaf measured delta: the gate count of each leaf's indicator."""
    if assignment is None:
        assignment = assign_leaves(tree, system)
    return {
        leaf: len(system.equations[assignment.mapping[leaf]].monomials) + 1
        for leaf in tree.leaf_ids()
    }


def grover_diffuser(n: int) -> Circuit:
    """Inversion about the uniform superposition over ``n`` input qubits."""
    if n < 1:
        raise ValueError("need at least one qubit")
    gates: list[Gate] = [h(q) for q in range(n)] + [x(q) for q in range(n)]
    gates.append(z(0) if n == 1 else mcz(range(n)))
    gates += [x(q) for q in range(n)] + [h(q) for q in range(n)]
    return Circuit(n, tuple(gates))
