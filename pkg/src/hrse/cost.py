"""Gate-cost bookkeeping for oracle trees.

Costs are kept symbolic as integer multiples of the per-function encoding
cost (delta) and of the merge-gate decomposition cost at each fan-in
(gamma(controls)), so one evaluation serves every concrete cost model.
Two evaluators are provided: a bottom-up recurrence over the tree and a
closed form over node depths. They must agree exactly on every valid tree.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from numbers import Real
from typing import Mapping

from .tree import HrseTree, check_structure

GAMMA_KINDS = ("unit", "linear", "quadratic", "measured")


@dataclass(frozen=True)
class CostExpr:
    """Linear combination ``delta_coeff * delta + sum mult * gamma(controls)``.

    ``gamma_terms`` is a sorted tuple of ``(controls, multiplier)`` pairs.
    ``numeric_value`` is filled in when a concrete model is applied; it stays
    exact (int) whenever the model parameters are integers.
    """

    delta_coeff: int
    gamma_terms: tuple[tuple[int, int], ...] = ()
    numeric_value: int | float | None = None

    @staticmethod
    def make(delta_coeff: int, gammas: Mapping[int, int], numeric=None) -> "CostExpr":
        terms = tuple(sorted((k, m) for k, m in gammas.items() if m))
        return CostExpr(delta_coeff=delta_coeff, gamma_terms=terms, numeric_value=numeric)

    def gamma_dict(self) -> dict[int, int]:
        return dict(self.gamma_terms)

    def same_symbolic(self, other: "CostExpr") -> bool:
        return self.delta_coeff == other.delta_coeff and self.gamma_terms == other.gamma_terms


class InvalidCostModel(ValueError):
    pass


@dataclass(frozen=True)
class CostModel:
    """Concrete costs: per-function delta and a merge-cost curve gamma.

    ``delta`` is either one positive number (uniform mode, the default used
    throughout the structural results) or a mapping from leaf node id to that
    leaf's measured encoding cost. ``gamma_kind`` selects the merge-cost
    variant:

    * ``unit``: every merge gate counts 1, regardless of fan-in (used for
      model-vs-circuit consistency checks, where merges stay undecomposed);
    * ``linear``: ``a * controls + b``;
    * ``quadratic``: ``a * controls**2 + b * controls + c``;
    * ``measured``: the actual gate count of lowering a multi-controlled X
      with that many controls under ``strategy``.
    """

    gamma_kind: str = "unit"
    delta: int | float | Mapping[int, int | float] = 1
    params: tuple[int | float, ...] = ()
    strategy: str = "vchain"

    def __post_init__(self):
        if self.gamma_kind not in GAMMA_KINDS:
            raise InvalidCostModel(f"unknown gamma kind {self.gamma_kind!r}")
        if isinstance(self.delta, Real):
            if self.delta <= 0:
                raise InvalidCostModel("delta must be positive")
        elif any(v <= 0 for v in self.delta.values()):
            raise InvalidCostModel("all per-leaf deltas must be positive")
        if any(p < 0 for p in self.params):
            raise InvalidCostModel("gamma parameters must be non-negative")
        if self.gamma(2) < 1:
            raise InvalidCostModel("gamma(2) must be at least 1")

    @classmethod
    def unit(cls, delta=1) -> "CostModel":
        return cls("unit", delta)

    @classmethod
    def linear(cls, a, b, delta=1) -> "CostModel":
        return cls("linear", delta, (a, b))

    @classmethod
    def quadratic(cls, a, b, c, delta=1) -> "CostModel":
        return cls("quadratic", delta, (a, b, c))

    @classmethod
    def measured(cls, strategy: str = "vchain", delta=1) -> "CostModel":
        return cls("measured", delta, (), strategy)

    @property
    def uniform(self) -> bool:
        return isinstance(self.delta, Real)

    def delta_for(self, leaf_id: int) -> int | float:
        if self.uniform:
            return self.delta
        try:
            return self.delta[leaf_id]
        except KeyError:
            raise InvalidCostModel(f"no delta recorded for leaf {leaf_id}") from None

    def gamma(self, controls: int) -> int | float:
        if controls < 1:
            raise ValueError("merge gates have at least one control")
        if self.gamma_kind == "unit":
            return 1
        if self.gamma_kind == "linear":
            a, b = self.params
            return a * controls + b
        if self.gamma_kind == "quadratic":
            a, b, c = self.params
            return a * controls * controls + b * controls + c
        return _measured_gamma(controls, self.strategy)


@functools.lru_cache(maxsize=None)
def _measured_gamma(controls: int, strategy: str) -> int:
    from .circuit import Circuit, mcx
    from .lowering import DecompositionPlan, decompose

    if controls == 1:
        return 1
    width = controls + 1 + (controls - 2 if strategy == "vchain" else 1)
    width = max(width, controls + 1)
    gate = mcx(tuple(range(controls)), controls)
    clean = tuple(range(controls + 1, width))
    plan = DecompositionPlan(strategy=strategy, clean={0: clean})
    lowered = decompose(Circuit(width, (gate,)), plan)
    return len(lowered.gates)


def evaluate_postorder(tree: HrseTree, model: CostModel) -> HrseTree:
    """Fill in cost and covered-leaf counts bottom-up.

    A leaf costs one delta and covers one leaf. An internal node pays twice
    each child's cost (compute and uncompute) plus one merge at its fan-in,
    and covers the sum of its children's leaves. The root's values are the
    oracle totals.
    """
    check_structure(tree)
    costs: dict[int, CostExpr] = {}
    leaves: dict[int, int] = {}

    def visit(nid: int) -> None:
        kids = tree.children[nid]
        if not kids:
            costs[nid] = CostExpr.make(1, {}, model.delta_for(nid))
            leaves[nid] = 1
            return
        delta_coeff = 0
        gammas: dict[int, int] = {}
        numeric = 0
        leaf_sum = 0
        for c in kids:
            visit(c)
            sub = costs[c]
            delta_coeff += 2 * sub.delta_coeff
            for k, m in sub.gamma_terms:
                gammas[k] = gammas.get(k, 0) + 2 * m
            numeric += 2 * sub.numeric_value
            leaf_sum += leaves[c]
        fan_in = len(kids)
        gammas[fan_in] = gammas.get(fan_in, 0) + 1
        numeric += model.gamma(fan_in)
        costs[nid] = CostExpr.make(delta_coeff, gammas, numeric)
        leaves[nid] = leaf_sum

    visit(tree.root)
    return tree.annotate(costs, leaves)


def evaluate_closed_form(tree: HrseTree, model: CostModel) -> CostExpr:
    """Total cost from node depths alone.

    Every leaf contributes ``2**depth`` deltas; every internal node
    contributes ``2**depth`` merges at its own fan-in. Equal to the root cost
    of :func:`evaluate_postorder` on every valid tree.
    """
    check_structure(tree)
    delta_coeff = 0
    gammas: dict[int, int] = {}
    numeric = 0
    for nid in tree.preorder():
        attr = tree.nodes[nid]
        weight = 1 << attr.depth
        if tree.is_leaf(nid):
            delta_coeff += weight
            numeric += weight * model.delta_for(nid)
        else:
            gammas[attr.out_degree] = gammas.get(attr.out_degree, 0) + weight
            numeric += weight * model.gamma(attr.out_degree)
    return CostExpr.make(delta_coeff, gammas, numeric)


def leaf_cost_units(tree: HrseTree) -> int:
    """Sum of ``2**depth`` over leaves: the repeated-evaluation count in deltas."""
    return sum(1 << tree.nodes[nid].depth for nid in tree.leaf_ids())
