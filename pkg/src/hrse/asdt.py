"""Incremental construction of qubit-budget-optimal oracle trees (ASDT).

The tree starts as a single unit owning the whole auxiliary budget and grows
one function at a time. While some internal node still has room, the next
function is added there as a new child. Once every internal node is full,
one leaf is split into two children. The leaf to split is chosen by smallest
depth first (depth enters the cost exponentially), then by largest size
(larger units absorb more functions per split, so fewer splits are paid
overall), then by lowest node id for determinism.

Splitting a leaf of size ``s`` creates children of sizes ``s - 1`` and
``s - 2``; each later child of the same node takes one auxiliary qubit less,
because each sibling's result qubit stays live while the next sibling runs.
A node is full once it has ``size - 1`` children. The construction therefore
produces sibling sizes that are consecutive and descending, and keeps at
most one partially filled internal node at any moment.
"""

from __future__ import annotations

import enum
import functools
from collections import deque
from dataclasses import dataclass

from .tree import HrseTree, NodeAttr


class InvalidSpec(ValueError):
    pass


class CapacityExceeded(Exception):
    def __init__(self, m: int, k: int, cap: int):
        super().__init__(f"{m} functions do not fit a budget of {k} auxiliary qubits (max {cap})")
        self.m, self.k, self.cap = m, k, cap


@dataclass(frozen=True)
class BuildSpec:
    """Construction request: ``m`` functions under ``k`` auxiliary qubits.

    With ``root_bonus`` the root behaves as one size larger than the budget,
    because its merge needs no pool qubit: in XOR mode it targets the separate
    output qubit, in phase mode it is a plain phase flip. The root's stored
    size is then ``k + 1``.
    """

    m: int
    k: int
    root_bonus: bool = False


class NodeClass(enum.Enum):
    SATURATED_NONLEAF = "saturated"
    UNSATURATED_NONLEAF = "unsaturated"
    CANDIDATE_LEAF = "candidate_leaf"
    FORCED_LEAF = "forced_leaf"


def classify(attr: NodeAttr) -> NodeClass:
    """Total classification from (size, out_degree) alone."""
    if attr.out_degree == 0:
        return NodeClass.FORCED_LEAF if attr.size <= 2 else NodeClass.CANDIDATE_LEAF
    if attr.size > 2 and 0 < attr.out_degree < attr.size - 1:
        return NodeClass.UNSATURATED_NONLEAF
    return NodeClass.SATURATED_NONLEAF


def is_saturated_tree(tree: HrseTree) -> bool:
    """True when no internal node can accept another child."""
    return all(
        classify(tree.nodes[nid]) is not NodeClass.UNSATURATED_NONLEAF for nid in tree.preorder()
    )


@functools.lru_cache(maxsize=None)
def _max_leaves(size: int) -> int:
    if size <= 2:
        return 1
    return sum(_max_leaves(j) for j in range(1, size))


def capacity(k: int, root_bonus: bool = False) -> int:
    """Largest function count a budget of ``k`` auxiliary qubits can host."""
    if k < 1:
        raise InvalidSpec("auxiliary budget must be at least 1")
    return _max_leaves(k + 1 if root_bonus else k)


@dataclass(frozen=True)
class TraceStep:
    action: str  # "split" | "add"
    node: int
    child_sizes: tuple[int, ...]
    child_ids: tuple[int, ...]


@dataclass(frozen=True)
class BuildTrace:
    steps: tuple[TraceStep, ...]

    def as_text(self) -> str:
        return "".join(
            f"{s.action} n{s.node} -> {','.join(map(str, s.child_sizes))}\n" for s in self.steps
        )


def build(spec: BuildSpec) -> tuple[HrseTree, BuildTrace]:
    """Run the construction; returns the tree and its expansion trace.

    Deterministic, one new leaf per step, linear in the function count for a
    fixed budget. Raises :class:`CapacityExceeded` when ``m`` does not fit.
    """
    if spec.m < 1 or spec.k < 1:
        raise InvalidSpec("need at least one function and one auxiliary qubit")
    cap = capacity(spec.k, spec.root_bonus)
    if spec.m > cap:
        raise CapacityExceeded(spec.m, spec.k, cap)

    sizes: dict[int, int] = {0: spec.k + 1 if spec.root_bonus else spec.k}
    depths: dict[int, int] = {0: 0}
    children: dict[int, list[int]] = {0: []}
    next_id = 1
    steps: list[TraceStep] = []
    leaves = 1
    unsaturated: int | None = None

    # Split candidates bucketed by depth then size; ids pop in creation order.
    buckets: dict[int, dict[int, deque[int]]] = {}
    cur_depth = 0

    def push(nid: int) -> None:
        if sizes[nid] > 2:
            buckets.setdefault(depths[nid], {}).setdefault(sizes[nid], deque()).append(nid)

    def pop_candidate() -> int:
        # cur_depth never decreases: new candidates always appear one level
        # below the node currently being expanded.
        nonlocal cur_depth
        while True:
            level = buckets.get(cur_depth)
            if level:
                best_size = max(level)
                dq = level[best_size]
                nid = dq.popleft()
                if not dq:
                    del level[best_size]
                if not level:
                    del buckets[cur_depth]
                return nid
            buckets.pop(cur_depth, None)
            cur_depth += 1

    def new_node(size: int, depth: int) -> int:
        nonlocal next_id
        nid = next_id
        next_id += 1
        sizes[nid] = size
        depths[nid] = depth
        children[nid] = []
        return nid

    push(0)
    while leaves < spec.m:
        if unsaturated is None:
            v = pop_candidate()
            s, d = sizes[v], depths[v]
            a = new_node(s - 1, d + 1)
            b = new_node(s - 2, d + 1)
            children[v] = [a, b]
            push(a)
            push(b)
            steps.append(TraceStep("split", v, (s - 1, s - 2), (a, b)))
            if s - 1 > 2:
                unsaturated = v
        else:
            v = unsaturated
            s = sizes[v]
            csize = s - len(children[v]) - 1
            c = new_node(csize, depths[v] + 1)
            children[v].append(c)
            push(c)
            steps.append(TraceStep("add", v, (csize,), (c,)))
            if len(children[v]) == s - 1:
                unsaturated = None
        leaves += 1

    nodes = {
        nid: NodeAttr(size=sizes[nid], depth=depths[nid], out_degree=len(children[nid]))
        for nid in sizes
    }
    tree = HrseTree(nodes=nodes, children={n: tuple(c) for n, c in children.items()}, root=0)
    return tree, BuildTrace(tuple(steps))


def replay(spec: BuildSpec, trace: BuildTrace) -> HrseTree:
    """Reconstruct the tree from a trace; used to audit the construction."""
    sizes: dict[int, int] = {0: spec.k + 1 if spec.root_bonus else spec.k}
    depths: dict[int, int] = {0: 0}
    children: dict[int, list[int]] = {0: []}
    for step in trace.steps:
        for size, cid in zip(step.child_sizes, step.child_ids):
            sizes[cid] = size
            depths[cid] = depths[step.node] + 1
            children[cid] = []
            children[step.node].append(cid)
    nodes = {
        nid: NodeAttr(size=sizes[nid], depth=depths[nid], out_degree=len(children[nid]))
        for nid in sizes
    }
    return HrseTree(nodes=nodes, children={n: tuple(c) for n, c in children.items()}, root=0)
