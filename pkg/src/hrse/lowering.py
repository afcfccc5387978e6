"""Lowering of multi-controlled gates to the {X, H, Z, CX, CCX} set.

Two strategies for MCX:

* ``vchain``: the Toffoli ladder with ``controls - 2`` clean ancillas,
  2*controls - 3 CCX gates. Ancillas must be |0> going in and come back |0>.
* ``noancilla``: no clean workspace needed; borrows one in-width qubit in an
  arbitrary state per recursion level and restores it exactly. Splitting the
  control set in half and alternating the two halves twice flips the target
  by the product of all controls while every borrowed qubit returns to its
  starting value; gate count grows quadratically with the control count.

MCZ lowers to an MCX conjugated by H on its last operand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .circuit import Circuit, Gate, ccx, cx, h


class InsufficientAncilla(Exception):
    def __init__(self, gate_index: int, needed: int, available: int):
        super().__init__(
            f"gate {gate_index}: needs {needed} helper qubits, {available} available"
        )
        self.gate_index = gate_index
        self.needed = needed
        self.available = available


@dataclass(frozen=True)
class DecompositionPlan:
    """Strategy plus, per gate index, the qubits known to be clean |0> there."""

    strategy: str = "noancilla"
    clean: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if self.strategy not in ("vchain", "noancilla"):
            raise ValueError(f"unknown strategy {self.strategy!r}")


def mcx_vchain_gates(controls: Sequence[int], target: int, ancillas: Sequence[int]) -> list[Gate]:
    """Ladder of prefix products into clean ancillas, final CCX, reverse ladder."""
    k = len(controls)
    if k == 1:
        return [cx(controls[0], target)]
    if k == 2:
        return [ccx(controls[0], controls[1], target)]
    need = k - 2
    anc = list(ancillas[:need])
    up = [ccx(controls[0], controls[1], anc[0])]
    for i in range(1, need):
        up.append(ccx(controls[i + 1], anc[i - 1], anc[i]))
    mid = ccx(controls[k - 1], anc[need - 1], target)
    return up + [mid] + up[::-1]


def mcx_borrowed_gates(controls: Sequence[int], target: int, borrows: Sequence[int]) -> list[Gate]:
    """Split recursion using one borrowed (possibly dirty) qubit per level.

    With b the borrowed qubit, x the product of the first half of the
    controls and y of the rest: toggling b by x, the target by b*y, b by x
    again and the target by b*y again flips the target by x*y exactly and
    restores b for any starting value.
    """
    k = len(controls)
    if k == 1:
        return [cx(controls[0], target)]
    if k == 2:
        return [ccx(controls[0], controls[1], target)]
    b = min(borrows)
    half = (k + 1) // 2
    first, second = tuple(controls[:half]), tuple(controls[half:])
    spare = set(borrows) - {b}
    g1 = mcx_borrowed_gates(first, b, sorted(set(second) | {target} | spare))
    g2 = mcx_borrowed_gates(second + (b,), target, sorted(set(first) | spare))
    return g1 + g2 + g1 + g2


def decompose(circuit: Circuit, plan: DecompositionPlan) -> Circuit:
    """Lower every MCX/MCZ; other gates pass through unchanged.

    With the ``vchain`` strategy each lowered gate consumes the clean qubits
    the plan lists for its index; missing ancillas raise
    :class:`InsufficientAncilla`. The ``noancilla`` strategy borrows any
    in-width qubit outside the gate's operands, so it only fails when the
    gate spans the whole register.
    """
    out: list[Gate] = []
    for idx, g in enumerate(circuit.gates):
        if g.kind == "mcz":
            target = g.qubits[-1]
            out.append(h(target))
            out.extend(_lower_mcx(g.qubits[:-1], target, idx, circuit, plan))
            out.append(h(target))
        elif g.kind == "mcx":
            out.extend(_lower_mcx(g.controls, g.target, idx, circuit, plan))
        else:
            out.append(g)
    return Circuit(circuit.width, tuple(out))


def _lower_mcx(
    controls: tuple[int, ...], target: int, idx: int, circuit: Circuit, plan: DecompositionPlan
) -> list[Gate]:
    k = len(controls)
    if k == 1:
        return [cx(controls[0], target)]
    if k == 2:
        return [ccx(controls[0], controls[1], target)]
    if plan.strategy == "vchain":
        clean = plan.clean.get(idx, ())
        usable = [q for q in clean if q != target and q not in controls]
        if len(usable) < k - 2:
            raise InsufficientAncilla(idx, k - 2, len(usable))
        return mcx_vchain_gates(controls, target, usable)
    operands = set(controls) | {target}
    borrows = [q for q in range(circuit.width) if q not in operands]
    if not borrows:
        raise InsufficientAncilla(idx, 1, 0)
    return mcx_borrowed_gates(controls, target, borrows)
