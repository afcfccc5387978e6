import math
import random

import numpy as np
import pytest

from hrse.asdt import BuildSpec, build
from hrse.boolsys import AnfPoly, BooleanSystem, generate, generate_planted
from hrse.circuit import Circuit, h, mcz, x, z
from hrse.revsim import (
    BasisState,
    UnsupportedGate,
    WidthTooLarge,
    apply_basis,
    apply_basis_batch,
    apply_statevector,
    grover_run,
    verify_oracle,
)
from hrse.synth import synthesize


def test_apply_basis_examples():
    out = apply_basis(Circuit(2, (x(0),)), BasisState(2, 0b00))
    assert (out.bits, out.phase) == (0b01, 1)
    flipped = apply_basis(Circuit(2, (mcz((0, 1)),)), BasisState(2, 0b11))
    assert (flipped.bits, flipped.phase) == (0b11, -1)
    untouched = apply_basis(Circuit(2, (mcz((0, 1)),)), BasisState(2, 0b01))
    assert (untouched.bits, untouched.phase) == (0b01, 1)
    assert apply_basis(Circuit(1, (z(0),)), BasisState(1, 1)).phase == -1


def test_apply_basis_rejects_h():
    with pytest.raises(UnsupportedGate):
        apply_basis(Circuit(1, (h(0),)), BasisState(1, 0))
    with pytest.raises(UnsupportedGate):
        apply_basis_batch(Circuit(1, (h(0),)), np.zeros(1, dtype=np.int64))


def test_batch_agrees_with_single():
    rng = random.Random(3)
    from test_circuit import random_circuit

    for _ in range(20):
        width = rng.randint(2, 8)
        circ = random_circuit(rng, width, 15)
        states = np.arange(1 << width, dtype=np.int64)
        bits, phases = apply_basis_batch(circ, states)
        for s in range(1 << width):
            single = apply_basis(circ, BasisState(width, s))
            assert single.bits == int(bits[s])
            assert single.phase == int(phases[s])


def test_statevector_agrees_with_basis_on_permutation_circuits():
    rng = random.Random(8)
    from test_circuit import random_circuit

    for _ in range(10):
        width = rng.randint(2, 6)
        circ = random_circuit(rng, width, 12)
        for start in range(1 << width):
            e = np.zeros(1 << width, dtype=complex)
            e[start] = 1.0
            vec = apply_statevector(circ, e)
            expect = apply_basis(circ, BasisState(width, start))
            assert abs(vec[expect.bits] - expect.phase) < 1e-9
            assert abs(np.linalg.norm(vec) - 1.0) < 1e-9


def test_statevector_width_guard():
    with pytest.raises(WidthTooLarge):
        apply_statevector(Circuit(23))


def test_verify_planted_system_phase_flips_exactly_one():
    system = generate(4, 4, seed=7)
    tree, _ = build(BuildSpec(m=4, k=4))
    circuit = synthesize(tree, system, "phase", k=4)
    report = verify_oracle(circuit, system, "phase")
    assert report.ok
    bits, phases = apply_basis_batch(circuit, np.arange(16, dtype=np.int64))
    assert int((phases == -1).sum()) == 1


def test_verify_catches_dropped_uncompute_gate():
    system = generate_planted(4, 3, seed=11)
    tree, _ = build(BuildSpec(m=3, k=4))
    circuit = synthesize(tree, system, "phase", k=4)
    # Drop the final gate: one leaf's uncompute loses its closing X.
    corrupted = Circuit(circuit.width, circuit.gates[:-1])
    report = verify_oracle(corrupted, system, "phase")
    assert not report.ok
    assert any(c.kind == "aux" for c in report.counterexamples)


def test_verify_xor_single_equation_matches_eval():
    poly = AnfPoly.from_terms([(0, 1), (2,), ()])
    system = BooleanSystem(3, (poly,))
    tree, _ = build(BuildSpec(m=1, k=2))
    circuit = synthesize(tree, system, "xor", k=2)
    report = verify_oracle(circuit, system, "xor")
    assert report.ok
    assignments = np.arange(8, dtype=np.int64)
    bits, _ = apply_basis_batch(circuit, assignments)
    for a in range(8):
        assert (int(bits[a]) >> (circuit.width - 1)) == (poly.evaluate(a) == 0)


def test_verify_sampled_coverage():
    system = generate_planted(14, 4, seed=2)
    tree, _ = build(BuildSpec(m=4, k=4))
    circuit = synthesize(tree, system, "phase", k=4)
    report = verify_oracle(circuit, system, "phase", coverage="sample", sample_count=200, seed=5)
    assert report.ok
    assert report.total_checked > 100


def test_full_coverage_guard():
    system = generate_planted(13, 3, seed=2)
    tree, _ = build(BuildSpec(m=3, k=4))
    circuit = synthesize(tree, system, "phase", k=4)
    with pytest.raises(ValueError):
        verify_oracle(circuit, system, "phase", coverage="full")


def test_oracle_statevector_action_is_diagonal():
    system = generate_planted(5, 3, seed=6)
    tree, _ = build(BuildSpec(m=3, k=4))
    circuit = synthesize(tree, system, "phase", k=4)
    dim = 1 << circuit.width
    signs = []
    for a in range(1 << 5):
        e = np.zeros(dim, dtype=complex)
        e[a] = 1.0
        out = apply_statevector(circuit, e)
        assert abs(abs(out[a]) - 1.0) < 1e-9  # diagonal on the input block
        signs.append(out[a].real > 0)
    expected = [system.satisfies(a) is False for a in range(1 << 5)]
    assert signs == expected


def test_grover_zero_iterations_is_uniform():
    system = generate(4, 4, seed=7)
    assert abs(grover_run(system, k=4, iterations=0) - 1 / 16) < 1e-12


def test_grover_three_iterations_near_analytic():
    system = generate(4, 4, seed=7)
    success = grover_run(system, k=4, iterations=3)
    analytic = math.sin(7 * math.asin(2 ** -2)) ** 2
    assert abs(success - analytic) < 0.01


def test_inverse_round_trip_property():
    rng = random.Random(17)
    from hrse.circuit import inverse
    from test_circuit import random_circuit

    for _ in range(40):
        width = rng.randint(2, 10)
        circ = random_circuit(rng, width, 30)
        states = np.array([rng.getrandbits(width) for _ in range(25)], dtype=np.int64)
        bits, phases = apply_basis_batch(circ + inverse(circ), states)
        assert np.array_equal(bits, states)
        assert np.all(phases == 1)
