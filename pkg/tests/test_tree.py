from fractions import Fraction

import pytest

from hrse.tree import (
    HrseTree,
    NodeAttr,
    StructuralError,
    metrics,
    validate,
)


def test_single_node_is_valid():
    tree = HrseTree.from_nested((5, ()))
    assert validate(tree).ok


def test_equal_sibling_sizes_rejected():
    tree = HrseTree.from_nested((4, [3, 3]))
    report = validate(tree)
    assert not report.ok
    assert any(v.rule == "sibling_sizes_distinct" for v in report.violations)


def test_small_node_with_child_rejected():
    tree = HrseTree.from_nested((2, [1]))
    report = validate(tree)
    assert any(v.rule == "small_node_is_leaf" for v in report.violations)


def test_child_larger_than_parent_rejected():
    tree = HrseTree.from_nested((4, [5, 1]))
    report = validate(tree)
    assert any(v.rule == "size_monotonic" for v in report.violations)


def test_size_zero_rejected():
    tree = HrseTree.from_nested((3, [2, 0]))
    report = validate(tree)
    assert any(v.rule == "positive_size" for v in report.violations)


def test_equal_size_child_needs_lenient_flag():
    tree = HrseTree.from_nested((4, [4, 3]))
    assert not validate(tree).ok
    assert validate(tree, allow_equal_size=True).ok


def test_two_parents_is_structural_error():
    n = {0: NodeAttr(4, 0, 2), 1: NodeAttr(3, 1, 1), 2: NodeAttr(2, 2, 0)}
    c = {0: (1, 2), 1: (2,), 2: ()}
    with pytest.raises(StructuralError):
        validate(HrseTree(nodes=n, children=c, root=0))


def test_cycle_is_structural_error():
    n = {0: NodeAttr(4, 0, 1), 1: NodeAttr(3, 1, 1)}
    c = {0: (1,), 1: (0,)}
    with pytest.raises(StructuralError):
        validate(HrseTree(nodes=n, children=c, root=0))


def test_inconsistent_depth_is_structural_error():
    n = {0: NodeAttr(4, 0, 1), 1: NodeAttr(3, 2, 0)}
    c = {0: (1,), 1: ()}
    with pytest.raises(StructuralError):
        validate(HrseTree(nodes=n, children=c, root=0))


def test_inconsistent_out_degree_is_structural_error():
    n = {0: NodeAttr(4, 0, 2), 1: NodeAttr(3, 1, 0)}
    c = {0: (1,), 1: ()}
    with pytest.raises(StructuralError):
        validate(HrseTree(nodes=n, children=c, root=0))


def test_metrics_single_leaf():
    m = metrics(HrseTree.from_nested((4, ())))
    assert m.leaf_count == 1
    assert m.avg_leaf_depth == 0
    assert m.avg_nonleaf_depth == 0
    assert m.avg_all_node_depth == 0
    assert m.max_depth == 0


def test_metrics_flat_tree():
    m = metrics(HrseTree.from_nested((6, [5, 4, 3, 2, 1])))
    assert m.leaf_count == 5
    assert m.avg_leaf_depth == 1
    assert m.avg_nonleaf_depth == 0
    assert m.max_depth == 1


def test_metrics_seven_leaf_reference(seven_leaf_tree):
    # Independent recount: walk the literal structure by hand.
    depths = {}

    def walk(nid, d):
        depths[nid] = d
        for c in seven_leaf_tree.children[nid]:
            walk(c, d + 1)

    walk(seven_leaf_tree.root, 0)
    leaf_depths = [depths[i] for i in seven_leaf_tree.leaf_ids()]
    inner_depths = [d for i, d in depths.items() if not seven_leaf_tree.is_leaf(i)]
    assert sorted(leaf_depths) == [1, 1, 2, 2, 2, 2, 2]
    assert sorted(inner_depths) == [0, 1, 1]

    m = metrics(seven_leaf_tree)
    assert m.leaf_count == 7
    assert m.avg_leaf_depth == Fraction(12, 7)
    assert m.avg_nonleaf_depth == Fraction(2, 3)
    assert m.avg_all_node_depth == Fraction(sum(depths.values()), 10)
    assert m.max_depth == 2


def test_nested_round_trip(seven_leaf_tree):
    rebuilt = HrseTree.from_nested(seven_leaf_tree.nested())
    assert rebuilt == seven_leaf_tree
