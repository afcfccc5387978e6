"""Comparison baselines and independent optimality oracles.

Two pieces live here. ``build_wcycle`` reconstructs the level-parameterized
preset structure used as the comparison baseline: all function evaluations
sit at one fixed depth, groups above the leaf layer split in two near-equal
halves, and qubit sizes follow the same descending allocation rule as the
adaptive builder. The reconstruction is inferred from the baseline's
observable behavior (level-uniform leaf depth, level-driven cost, budget
independence of cost, infeasibility at level 1 under small budgets); it is
not a port of any released implementation.

``min_leaf_cost`` and ``enumerate_valid_trees`` are the independent oracles
used to check optimality claims: a memoized dynamic program over (size, leaf
count) subproblems, and an exhaustive generator of every structurally
distinct valid tree for small instances.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import asdt
from .asdt import BuildSpec, CapacityExceeded, capacity, _max_leaves
from .cost import leaf_cost_units
from .tree import HrseTree


class WcycleInfeasible(Exception):
    """A node would need more child slots than its size permits."""

    def __init__(self, node_size: int, depth: int, needed: int, available: int):
        super().__init__(
            f"node of size {node_size} at depth {depth} needs {needed} child slots, has {available}"
        )
        self.node_size = node_size
        self.depth = depth
        self.needed = needed
        self.available = available


class LimitExceeded(Exception):
    def __init__(self, limit: int):
        super().__init__(f"enumeration exceeded limit of {limit} trees")
        self.limit = limit


@dataclass(frozen=True)
class WcycleSpec:
    m: int
    k: int
    level: int
    root_bonus: bool = False

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("recursion level must be at least 1")
        if self.m < 1 or self.k < 1:
            raise ValueError("need at least one function and one auxiliary qubit")


def build_wcycle(spec: WcycleSpec) -> HrseTree:
    """Build the preset structure, or raise :class:`WcycleInfeasible`.

    Every function becomes a leaf at depth exactly ``level``. Nodes at depth
    ``level - 1`` hold their group's functions as direct leaf children; nodes
    above split their group into two near-equal halves (a group of one is
    carried down as a single-child chain). Children take sizes
    ``s - 1, s - 2, ...`` from their parent's size ``s``; a node of size 1
    or 2 can never be internal.
    """

    def grow(size: int, count: int, depth: int):
        if depth == spec.level:
            return (size, ())
        if size <= 2:
            raise WcycleInfeasible(size, depth, 1, 0)
        if depth == spec.level - 1:
            if count > size - 1:
                raise WcycleInfeasible(size, depth, count, size - 1)
            return (size, tuple((size - 1 - i, ()) for i in range(count)))
        if count == 1:
            return (size, (grow(size - 1, 1, depth + 1),))
        hi, lo = (count + 1) // 2, count // 2
        return (size, (grow(size - 1, hi, depth + 1), grow(size - 2, lo, depth + 1)))

    root_size = spec.k + 1 if spec.root_bonus else spec.k
    return HrseTree.from_nested(grow(root_size, spec.m, 0))


@dataclass(frozen=True)
class OptimalityCertificate:
    """Result of the exact minimization, with a witness achieving it."""

    m: int
    k: int
    root_bonus: bool
    min_leaf_cost: int  # in delta units
    witness: HrseTree
    asdt_leaf_cost: int

    @property
    def optimal(self) -> bool:
        return self.asdt_leaf_cost == self.min_leaf_cost

    def as_text(self) -> str:
        lines = [
            f"instance: m={self.m} k={self.k} root_bonus={self.root_bonus}",
            f"min leaf cost: {self.min_leaf_cost} delta",
            f"adaptive builder leaf cost: {self.asdt_leaf_cost} delta",
            f"optimal: {'yes' if self.optimal else 'NO'}",
            "witness shape: " + repr(self.witness.nested()),
        ]
        return "\n".join(lines) + "\n"


def min_leaf_cost(
    m: int, k: int, root_bonus: bool = False, include_single_child: bool = False
) -> OptimalityCertificate:
    """Exact minimum of the repeated-evaluation cost over all valid trees.

    Subproblem ``best(s, t)``: cheapest leaf cost of a valid tree whose root
    has size ``s`` and covers ``t`` functions. A single function is a leaf at
    cost one delta. Otherwise the root picks a set of distinct child sizes
    below ``s`` and a split of the functions among them; each child's cost is
    paid twice (compute and uncompute). Single-child roots are strictly
    dominated (the child one level up is valid and cheaper) and excluded
    unless ``include_single_child`` asks for the audit variant.

    The witness tree is rebuilt from the recorded choices.
    """
    cap = capacity(k, root_bonus)
    if m > cap:
        raise CapacityExceeded(m, k, cap)
    if m < 1 or k < 1:
        raise asdt.InvalidSpec("need at least one function and one auxiliary qubit")

    min_children = 1 if include_single_child else 2
    memo: dict[tuple[int, int], tuple[int, tuple] | None] = {}

    def solve(s: int, t: int) -> tuple[int, tuple] | None:
        if t == 1:
            return 1, (s, ())
        if s <= 2:
            return None
        key = (s, t)
        if key in memo:
            return memo[key]
        best: tuple[int, tuple] | None = None
        for sizes in _size_subsets(s - 1, min_children):
            if sum(_max_leaves(c) for c in sizes) < t or len(sizes) > t:
                continue
            split = _distribute(sizes, t, solve)
            if split is None:
                continue
            units, kids = split
            if best is None or units < best[0]:
                best = (units, (s, kids))
        memo[key] = best
        return best

    root_size = k + 1 if root_bonus else k
    solved = solve(root_size, m)
    assert solved is not None, "capacity check guarantees feasibility"
    units, nested = solved
    witness = HrseTree.from_nested(nested)
    tree, _ = asdt.build(BuildSpec(m=m, k=k, root_bonus=root_bonus))
    return OptimalityCertificate(
        m=m,
        k=k,
        root_bonus=root_bonus,
        min_leaf_cost=units,
        witness=witness,
        asdt_leaf_cost=leaf_cost_units(tree),
    )


def _size_subsets(max_size: int, min_count: int):
    """Descending-size subsets of {1..max_size} with at least min_count entries."""
    pool = range(max_size, 0, -1)
    for r in range(min_count, max_size + 1):
        yield from itertools.combinations(pool, r)


def _distribute(sizes, total, solve):
    """Cheapest split of ``total`` functions over fixed child sizes (each >= 1)."""
    memo: dict[tuple[int, int], tuple[int, tuple] | None] = {}

    def go(i: int, remaining: int) -> tuple[int, tuple] | None:
        key = (i, remaining)
        if key in memo:
            return memo[key]
        rest_children = len(sizes) - i - 1
        best: tuple[int, tuple] | None = None
        hi = min(remaining - rest_children, _max_leaves(sizes[i]))
        for t_i in range(1, hi + 1):
            sub = solve(sizes[i], t_i)
            if sub is None:
                continue
            if rest_children == 0:
                if t_i != remaining:
                    continue
                cand = (2 * sub[0], (sub[1],))
            else:
                tail = go(i + 1, remaining - t_i)
                if tail is None:
                    continue
                cand = (2 * sub[0] + tail[0], (sub[1],) + tail[1])
            if best is None or cand[0] < best[0]:
                best = cand
        memo[key] = best
        return best

    return go(0, total)


def enumerate_valid_trees(m: int, k: int, limit: int | None = None):
    """Yield every structurally distinct valid tree with ``m`` leaves and root size ``k``.

    Children are canonically ordered by decreasing size; sibling sizes are
    distinct, so no shape is produced twice. Intended for small instances:
    budgets above 5 require an explicit ``limit``. Raises
    :class:`LimitExceeded` when more than ``limit`` trees exist.
    """
    if k > 5 and limit is None:
        raise ValueError("enumeration above budget 5 requires an explicit limit")
    count = 0
    for nested in _shapes(k, m):
        count += 1
        if limit is not None and count > limit:
            raise LimitExceeded(limit)
        yield HrseTree.from_nested(nested)


def _shapes(size: int, count: int):
    if count == 1:
        yield (size, ())
        return
    if size <= 2:
        return
    for sizes in _size_subsets(size - 1, 2):
        if sum(_max_leaves(c) for c in sizes) < count or len(sizes) > count:
            continue
        yield from ((size, kids) for kids in _shape_splits(sizes, count))


def _shape_splits(sizes, total):
    if len(sizes) == 1:
        if total <= _max_leaves(sizes[0]):
            for shape in _shapes(sizes[0], total):
                yield (shape,)
        return
    rest = sizes[1:]
    rest_min = len(rest)
    rest_max = sum(_max_leaves(c) for c in rest)
    lo = max(1, total - rest_max)
    hi = min(_max_leaves(sizes[0]), total - rest_min)
    for t0 in range(lo, hi + 1):
        for head in _shapes(sizes[0], t0):
            for tail in _shape_splits(rest, total - t0):
                yield (head,) + tail
