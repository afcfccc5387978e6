"""Tree model for qubit-multiplexed oracle structures.

Each node stands for one computation unit of the oracle: a leaf evaluates a
single constraint function into its result qubit, an internal node merges its
children's result qubits with one multi-controlled gate and then uncomputes
the children so their qubits can be reused. A node's size is the number of
auxiliary qubits the unit owns (its result qubit plus workspace).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import TYPE_CHECKING, Iterator, Mapping

if TYPE_CHECKING:
    from .cost import CostExpr


class StructuralError(Exception):
    """Tree is not a single-rooted, connected, acyclic structure."""


@dataclass(frozen=True)
class NodeAttr:
    """Attributes of one computation unit.

    ``size`` counts the auxiliary qubits owned by the unit, ``depth`` is the
    edge distance from the root, ``out_degree`` the number of children.
    ``cost`` and ``leaves`` stay unset until an evaluation pass fills them in.
    """

    size: int
    depth: int
    out_degree: int
    cost: "CostExpr | None" = None
    leaves: int | None = None


@dataclass(frozen=True)
class TreeMetrics:
    leaf_count: int
    avg_leaf_depth: Fraction
    avg_nonleaf_depth: Fraction
    avg_all_node_depth: Fraction
    max_depth: int


@dataclass(frozen=True)
class Violation:
    rule: str
    nodes: tuple[int, ...]
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_text(self) -> str:
        if self.ok:
            return "valid\n"
        return "".join(f"{v.rule}: {v.message}\n" for v in self.violations)


@dataclass(frozen=True)
class HrseTree:
    """Rooted tree with ordered children; treat as immutable after construction.

    ``children`` holds an entry for every node (empty tuple for leaves) so
    equality between trees built by different paths is structural.
    """

    nodes: dict[int, NodeAttr]
    children: dict[int, tuple[int, ...]]
    root: int

    @classmethod
    def from_nested(cls, spec) -> "HrseTree":
        """Build a tree from nested ``(size, [children...])`` tuples.

        A bare int is shorthand for a leaf. Node ids are assigned in preorder
        and depths are derived from nesting.
        """
        nodes: dict[int, NodeAttr] = {}
        children: dict[int, tuple[int, ...]] = {}
        counter = iter(range(1 << 30))

        def grow(item, depth: int) -> int:
            if isinstance(item, int):
                item = (item, ())
            size, kids = item
            nid = next(counter)
            nodes[nid] = NodeAttr(size=int(size), depth=depth, out_degree=len(kids))
            children[nid] = ()
            children[nid] = tuple(grow(kid, depth + 1) for kid in kids)
            return nid

        root = grow(spec, 0)
        return cls(nodes=nodes, children=children, root=root)

    def nested(self, nid: int | None = None):
        """Inverse of :meth:`from_nested`; useful for shape comparison."""
        nid = self.root if nid is None else nid
        return (self.nodes[nid].size, tuple(self.nested(c) for c in self.children[nid]))

    def is_leaf(self, nid: int) -> bool:
        return not self.children[nid]

    def preorder(self) -> Iterator[int]:
        stack = [self.root]
        while stack:
            nid = stack.pop()
            yield nid
            stack.extend(reversed(self.children[nid]))

    def leaf_ids(self) -> list[int]:
        return [nid for nid in self.preorder() if self.is_leaf(nid)]

    def parent_map(self) -> dict[int, int]:
        return {c: p for p, kids in self.children.items() for c in kids}

    def annotate(self, costs: Mapping[int, "CostExpr"], leaves: Mapping[int, int]) -> "HrseTree":
        nodes = {
            nid: replace(attr, cost=costs.get(nid, attr.cost), leaves=leaves.get(nid, attr.leaves))
            for nid, attr in self.nodes.items()
        }
        return HrseTree(nodes=nodes, children=dict(self.children), root=self.root)

    @property
    def root_attr(self) -> NodeAttr:
        return self.nodes[self.root]


def check_structure(tree: HrseTree) -> None:
    """Raise :class:`StructuralError` unless the tree is well formed.

    Well formed means: one root from which every node is reachable, no cycles,
    no node with two parents, and stored depth/out_degree fields consistent
    with the edge structure.
    """
    if tree.root not in tree.nodes:
        raise StructuralError(f"root {tree.root} is not a node")
    seen_child: set[int] = set()
    for nid, kids in tree.children.items():
        if nid not in tree.nodes:
            raise StructuralError(f"children listed for unknown node {nid}")
        for c in kids:
            if c not in tree.nodes:
                raise StructuralError(f"edge to unknown node {c}")
            if c in seen_child:
                raise StructuralError(f"node {c} has two parents")
            if c == tree.root:
                raise StructuralError("root appears as a child")
            seen_child.add(c)

    reached: set[int] = set()
    stack = [tree.root]
    while stack:
        nid = stack.pop()
        if nid in reached:
            raise StructuralError(f"cycle through node {nid}")
        reached.add(nid)
        stack.extend(tree.children.get(nid, ()))
    if reached != set(tree.nodes):
        orphans = sorted(set(tree.nodes) - reached)
        raise StructuralError(f"unreachable nodes (disconnected or extra roots): {orphans}")

    if tree.nodes[tree.root].depth != 0:
        raise StructuralError("root depth must be 0")
    for nid, kids in tree.children.items():
        attr = tree.nodes[nid]
        if attr.out_degree != len(kids):
            raise StructuralError(f"node {nid}: out_degree {attr.out_degree} != {len(kids)} children")
        for c in kids:
            if tree.nodes[c].depth != attr.depth + 1:
                raise StructuralError(f"node {c}: depth must be parent depth + 1")


def validate(tree: HrseTree, allow_equal_size: bool = False) -> ValidationReport:
    """Check the structural constraints that make a tree realizable as a circuit.

    Three rules, checked for every node:

    * size monotonicity: a child's size may not exceed its parent's (with the
      default strict reading, it must be strictly smaller);
    * sibling sizes pairwise distinct;
    * nodes of size 1 or 2 must be leaves.

    Size-0 nodes are rejected outright: they are never produced by the
    builders and have no qubit allocation. ``allow_equal_size`` relaxes the
    strict reading and permits a child as large as its parent.

    Malformed trees (cycles, several roots) raise :class:`StructuralError`
    instead of being reported.
    """
    check_structure(tree)
    violations: list[Violation] = []
    for nid in tree.preorder():
        attr = tree.nodes[nid]
        if attr.size < 1:
            violations.append(
                Violation("positive_size", (nid,), f"node {nid} has size {attr.size}; sizes must be >= 1")
            )
        kids = tree.children[nid]
        if kids and attr.size <= 2:
            violations.append(
                Violation(
                    "small_node_is_leaf",
                    (nid,),
                    f"node {nid} has size {attr.size} but {len(kids)} children; size 1 and 2 units must be leaves",
                )
            )
        sizes_seen: dict[int, int] = {}
        for c in kids:
            csize = tree.nodes[c].size
            too_big = csize > attr.size if allow_equal_size else csize >= attr.size
            if too_big:
                violations.append(
                    Violation(
                        "size_monotonic",
                        (nid, c),
                        f"child {c} (size {csize}) exceeds parent {nid} (size {attr.size})",
                    )
                )
            if csize in sizes_seen:
                violations.append(
                    Violation(
                        "sibling_sizes_distinct",
                        (sizes_seen[csize], c),
                        f"children {sizes_seen[csize]} and {c} of node {nid} share size {csize}",
                    )
                )
            else:
                sizes_seen[csize] = c
    return ValidationReport(tuple(violations))


def metrics(tree: HrseTree) -> TreeMetrics:
    """Exact depth statistics over leaves, internal nodes, and all nodes."""
    check_structure(tree)
    leaf_depths: list[int] = []
    inner_depths: list[int] = []
    for nid in tree.preorder():
        (leaf_depths if tree.is_leaf(nid) else inner_depths).append(tree.nodes[nid].depth)

    def avg(values: list[int]) -> Fraction:
        return Fraction(sum(values), len(values)) if values else Fraction(0)

    all_depths = leaf_depths + inner_depths
    return TreeMetrics(
        leaf_count=len(leaf_depths),
        avg_leaf_depth=avg(leaf_depths),
        avg_nonleaf_depth=avg(inner_depths),
        avg_all_node_depth=avg(all_depths),
        max_depth=max(all_depths),
    )
