import pytest

from hrse.asdt import (
    BuildSpec,
    CapacityExceeded,
    InvalidSpec,
    NodeClass,
    build,
    capacity,
    classify,
    is_saturated_tree,
    replay,
)
from hrse.cost import leaf_cost_units
from hrse.tree import NodeAttr, validate


def test_capacity_values():
    assert [capacity(k) for k in range(1, 8)] == [1, 1, 2, 4, 8, 16, 32]
    assert capacity(2) == 1
    assert capacity(5, root_bonus=True) == 16
    with pytest.raises(InvalidSpec):
        capacity(0)


def test_golden_structure_and_trace(seven_leaf_tree):
    tree, trace = build(BuildSpec(m=7, k=5))
    assert tree.nested() == seven_leaf_tree.nested()
    assert [
        (s.action, s.node, s.child_sizes) for s in trace.steps
    ] == [
        ("split", 0, (4, 3)),
        ("add", 0, (2,)),
        ("add", 0, (1,)),
        ("split", 1, (3, 2)),
        ("add", 1, (1,)),
        ("split", 2, (2, 1)),
    ]
    assert trace.as_text().splitlines()[0] == "split n0 -> 4,3"


def test_trace_replay_reproduces_tree():
    spec = BuildSpec(m=13, k=6)
    tree, trace = build(spec)
    assert len(trace.steps) == spec.m - 1
    assert replay(spec, trace) == tree


def test_single_function_tree():
    tree, trace = build(BuildSpec(m=1, k=5))
    assert tree.nested() == (5, ())
    assert trace.steps == ()


def test_four_functions_four_qubits():
    tree, _ = build(BuildSpec(m=4, k=4))
    assert tree.nested() == (4, ((3, ((2, ()), (1, ()))), (2, ()), (1, ())))
    assert leaf_cost_units(tree) == 12


def test_capacity_exceeded():
    with pytest.raises(CapacityExceeded):
        build(BuildSpec(m=5, k=4))
    with pytest.raises(InvalidSpec):
        build(BuildSpec(m=0, k=4))
    with pytest.raises(InvalidSpec):
        build(BuildSpec(m=1, k=0))


def test_root_bonus_shifts_capacity_and_root_size():
    tree, _ = build(BuildSpec(m=5, k=4, root_bonus=True))
    assert tree.root_attr.size == 5
    assert len(tree.leaf_ids()) == 5
    with pytest.raises(CapacityExceeded):
        build(BuildSpec(m=5, k=4))
    flat, _ = build(BuildSpec(m=5, k=5, root_bonus=True))
    assert flat.nested() == (6, ((5, ()), (4, ()), (3, ()), (2, ()), (1, ())))


@pytest.mark.parametrize(
    "size,out_degree,expected",
    [
        (3, 2, NodeClass.SATURATED_NONLEAF),
        (5, 2, NodeClass.UNSATURATED_NONLEAF),
        (2, 0, NodeClass.FORCED_LEAF),
        (1, 0, NodeClass.FORCED_LEAF),
        (5, 0, NodeClass.CANDIDATE_LEAF),
        (5, 4, NodeClass.SATURATED_NONLEAF),
        (2, 1, NodeClass.SATURATED_NONLEAF),
    ],
)
def test_classify(size, out_degree, expected):
    assert classify(NodeAttr(size=size, depth=0, out_degree=out_degree)) is expected


def test_is_saturated_tree(seven_leaf_tree):
    from hrse.tree import HrseTree

    assert is_saturated_tree(HrseTree.from_nested((5, ())))
    assert not is_saturated_tree(HrseTree.from_nested((5, [4, 3])))
    assert is_saturated_tree(seven_leaf_tree)


def test_single_unsaturated_invariant():
    spec = BuildSpec(m=14, k=6)
    tree, trace = build(spec)
    # Replay step by step; after each step at most one internal node has room.
    sizes = {0: 6}
    kids: dict[int, list[int]] = {0: []}
    for step in trace.steps:
        for size, cid in zip(step.child_sizes, step.child_ids):
            sizes[cid] = size
            kids[cid] = []
            kids[step.node].append(cid)
        open_nodes = [
            n
            for n, c in kids.items()
            if c and sizes[n] > 2 and 0 < len(c) < sizes[n] - 1
        ]
        assert len(open_nodes) <= 1


def test_sibling_sizes_consecutive_descending():
    for k in range(3, 8):
        for m in range(1, min(capacity(k), 24) + 1):
            tree, _ = build(BuildSpec(m=m, k=k))
            for nid in tree.preorder():
                kid_sizes = [tree.nodes[c].size for c in tree.children[nid]]
                if kid_sizes:
                    s = tree.nodes[nid].size
                    assert kid_sizes == list(range(s - 1, s - len(kid_sizes) - 1, -1))


def test_every_built_tree_validates():
    for bonus in (False, True):
        for k in range(1, 8):
            for m in range(1, min(capacity(k, bonus), 32) + 1):
                tree, _ = build(BuildSpec(m=m, k=k, root_bonus=bonus))
                assert len(tree.leaf_ids()) == m
                assert validate(tree).ok


def test_determinism():
    a, ta = build(BuildSpec(m=11, k=6))
    b, tb = build(BuildSpec(m=11, k=6))
    assert a == b
    assert ta == tb


def test_leaf_cost_monotone_in_budget():
    for m in range(1, 16):
        prev = None
        for k in range(3, 9):
            if m > capacity(k):
                continue
            units = leaf_cost_units(build(BuildSpec(m=m, k=k))[0])
            if prev is not None:
                assert units <= prev
            prev = units
