import numpy as np
import pytest

from hrse.circuit import Circuit, ccx, h, mcx, mcz, x
from hrse.lowering import (
    DecompositionPlan,
    InsufficientAncilla,
    decompose,
    mcx_borrowed_gates,
    mcx_vchain_gates,
)
from hrse.revsim import BasisState, apply_basis, apply_statevector

ALLOWED = {"x", "h", "z", "cx", "ccx"}


def native_mcx_bits(bits: int, controls, target: int) -> int:
    if all((bits >> c) & 1 for c in controls):
        bits ^= 1 << target
    return bits


def test_two_controls_is_exactly_ccx():
    c = Circuit(3, (mcx((0, 1), 2),))
    lowered = decompose(c, DecompositionPlan("noancilla"))
    assert lowered.gates == (ccx(0, 1, 2),)


def test_three_controls_one_clean_ancilla_sequence():
    gates = mcx_vchain_gates((0, 1, 2), 3, (4,))
    assert gates == [ccx(0, 1, 4), ccx(2, 4, 3), ccx(0, 1, 4)]
    # Truth table over controls+target with the ancilla clean.
    c = Circuit(5, tuple(gates))
    for bits in range(16):
        out = apply_basis(c, BasisState(5, bits))
        assert out.bits == native_mcx_bits(bits, (0, 1, 2), 3)
        assert out.phase == 1


@pytest.mark.parametrize("controls", range(2, 9))
def test_vchain_exhaustive(controls):
    ctrl = tuple(range(controls))
    target = controls
    ancillas = tuple(range(controls + 1, controls + 1 + max(0, controls - 2)))
    width = controls + 1 + len(ancillas)
    plan = DecompositionPlan("vchain", {0: ancillas})
    lowered = decompose(Circuit(width, (mcx(ctrl, target),)), plan)
    assert {g.kind for g in lowered.gates} <= ALLOWED
    for bits in range(1 << (controls + 1)):
        out = apply_basis(lowered, BasisState(width, bits))
        assert out.bits == native_mcx_bits(bits, ctrl, target)  # ancillas end clean
        assert out.phase == 1


@pytest.mark.parametrize("controls", range(2, 9))
def test_borrowed_exhaustive_any_borrow_state(controls):
    ctrl = tuple(range(controls))
    target = controls
    width = controls + 2  # one borrowable qubit, arbitrary state
    lowered = decompose(Circuit(width, (mcx(ctrl, target),)), DecompositionPlan("noancilla"))
    assert {g.kind for g in lowered.gates} <= ALLOWED
    for bits in range(1 << width):
        out = apply_basis(lowered, BasisState(width, bits))
        assert out.bits == native_mcx_bits(bits, ctrl, target)  # borrow restored
        assert out.phase == 1


@pytest.mark.parametrize("controls", range(2, 9))
def test_strategies_agree(controls):
    ctrl = tuple(range(controls))
    target = controls
    ancillas = tuple(range(controls + 1, controls + 1 + max(0, controls - 2)))
    width = controls + 1 + max(len(ancillas), 1)
    v = decompose(
        Circuit(width, (mcx(ctrl, target),)), DecompositionPlan("vchain", {0: ancillas})
    )
    b = decompose(Circuit(width, (mcx(ctrl, target),)), DecompositionPlan("noancilla"))
    for bits in range(1 << (controls + 1)):
        assert apply_basis(v, BasisState(width, bits)).bits == apply_basis(
            b, BasisState(width, bits)
        ).bits


def test_mcz_two_controls_literal():
    lowered = decompose(Circuit(3, (mcz((0, 1, 2)),)), DecompositionPlan("noancilla"))
    assert lowered.gates == (h(2), ccx(0, 1, 2), h(2))


@pytest.mark.parametrize("qubits", range(2, 7))
def test_mcz_statevector_equivalence(qubits):
    width = qubits if qubits <= 3 else qubits + 1  # room to borrow above 2 controls
    native = Circuit(width, (mcz(tuple(range(qubits))),))
    lowered = decompose(native, DecompositionPlan("noancilla"))
    dim = 1 << width
    for b in range(dim):
        basis = np.zeros(dim, complex)
        basis[b] = 1.0
        got = apply_statevector(lowered, basis)
        want = apply_statevector(native, basis)
        assert np.allclose(got, want, atol=1e-9)


def test_insufficient_clean_ancillas():
    plan = DecompositionPlan("vchain", {0: (5,)})
    with pytest.raises(InsufficientAncilla) as err:
        decompose(Circuit(6, (mcx((0, 1, 2, 3), 4),)), plan)
    assert err.value.needed == 2
    assert err.value.available == 1


def test_no_borrowable_qubit():
    with pytest.raises(InsufficientAncilla):
        decompose(Circuit(4, (mcx((0, 1, 2), 3),)), DecompositionPlan("noancilla"))


def test_passthrough_gates_untouched():
    c = Circuit(3, (x(0), h(1), ccx(0, 1, 2)))
    assert decompose(c, DecompositionPlan("noancilla")) == c


def test_one_control_forms():
    lowered = decompose(Circuit(3, (mcz((0, 1)), mcx((0,), 1))), DecompositionPlan("noancilla"))
    assert [g.kind for g in lowered.gates] == ["h", "cx", "h", "cx"]


def test_borrowed_gate_counts_quadratic():
    counts = {k: len(mcx_borrowed_gates(tuple(range(k)), k, (k + 1,))) for k in range(3, 9)}
    assert counts == {3: 4, 4: 10, 5: 16, 6: 28, 7: 40, 8: 52}
