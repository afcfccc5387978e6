import random

import pytest

from hrse.tree import HrseTree


@pytest.fixture
def seven_leaf_tree() -> HrseTree:
    """Hand-built reference structure for 7 functions under 5 auxiliary qubits.

    Root of size 5 with children sized 4, 3, 2, 1; the 4 carries 3, 2, 1 and
    the depth-1 3 carries 2, 1. Tests recompute expectations from this
    literal layout rather than trusting the builder.
    """
    return HrseTree.from_nested(
        (5, [(4, [3, 2, 1]), (3, [2, 1]), 2, 1])
    )


def random_valid_tree(rng: random.Random, max_root: int = 10, max_leaves: int = 64) -> HrseTree:
    """Seeded random generator over the valid-tree family (not builder output)."""

    budget = [max_leaves]

    def grow(size: int):
        if size <= 2 or budget[0] <= 1 or rng.random() < 0.35:
            return (size, ())
        fan = rng.randint(2, size - 1)
        sizes = sorted(rng.sample(range(1, size), fan), reverse=True)
        kids = []
        for s in sizes:
            if budget[0] <= 1:
                kids.append((s, ()))
            else:
                budget[0] -= 1
                kids.append(grow(s))
        return (size, tuple(kids))

    while True:
        budget[0] = max_leaves
        tree = HrseTree.from_nested(grow(rng.randint(1, max_root)))
        if len(tree.leaf_ids()) <= max_leaves:
            return tree
