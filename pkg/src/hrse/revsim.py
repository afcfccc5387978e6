"""Classical verification of oracle circuits.

Two simulators. The basis simulator tracks one computational basis state as
an integer bitmask plus a sign: every supported gate except H permutes basis
states, and Z-type gates only flip the sign, so verification sweeps run at
one bit operation per gate (vectorized over numpy arrays of states for
exhaustive sweeps). The dense statevector simulator handles H-containing
circuits and end-to-end amplitude-amplification runs at small widths.

Qubit convention follows the synthesizer: inputs at 0..n-1, pool next, XOR
output last. Index bit i of a basis state is qubit i.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from . import asdt, synth
from .boolsys import BooleanSystem, solutions
from .circuit import Circuit, h

MAX_STATEVECTOR_WIDTH = 22
_NORM_TOL = 1e-9
_SQRT_HALF = 1.0 / math.sqrt(2.0)


class UnsupportedGate(Exception):
    pass


class WidthTooLarge(Exception):
    pass


@dataclass(frozen=True)
class BasisState:
    width: int
    bits: int
    phase: int = 1

    def __post_init__(self):
        if self.phase not in (1, -1):
            raise ValueError("phase must be +1 or -1")
        if not 0 <= self.bits < (1 << self.width):
            raise ValueError("bits outside register width")

    def bit(self, q: int) -> int:
        return (self.bits >> q) & 1


def apply_basis(circuit: Circuit, state: BasisState) -> BasisState:
    """Propagate one basis state through an H-free circuit."""
    if state.width != circuit.width:
        raise ValueError("state width does not match circuit width")
    bits, phase = state.bits, state.phase
    for g in circuit.gates:
        kind = g.kind
        if kind == "x":
            bits ^= 1 << g.qubits[0]
        elif kind == "z":
            if (bits >> g.qubits[0]) & 1:
                phase = -phase
        elif kind == "mcz":
            if all((bits >> q) & 1 for q in g.qubits):
                phase = -phase
        elif kind == "h":
            raise UnsupportedGate("H needs the statevector simulator")
        else:  # cx / ccx / mcx
            if all((bits >> q) & 1 for q in g.controls):
                bits ^= 1 << g.target
    return BasisState(width=state.width, bits=bits, phase=phase)


def apply_basis_batch(
    circuit: Circuit, bits: np.ndarray, phases: np.ndarray | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized basis propagation over many states at once."""
    bits = bits.astype(np.int64, copy=True)
    phases = np.ones_like(bits) if phases is None else phases.astype(np.int64, copy=True)
    for g in circuit.gates:
        kind = g.kind
        if kind == "x":
            bits ^= 1 << g.qubits[0]
        elif kind == "z":
            phases *= 1 - 2 * ((bits >> g.qubits[0]) & 1)
        elif kind == "mcz":
            cond = np.ones_like(bits)
            for q in g.qubits:
                cond &= bits >> q
            phases *= 1 - 2 * (cond & 1)
        elif kind == "h":
            raise UnsupportedGate("H needs the statevector simulator")
        else:
            cond = np.ones_like(bits)
            for q in g.controls:
                cond &= bits >> q
            bits ^= (cond & 1) << g.target
    return bits, phases


@dataclass(frozen=True)
class Counterexample:
    assignment: int
    kind: str  # "output" | "phase" | "aux" | "input"
    detail: str


@dataclass(frozen=True)
class VerificationReport:
    mode: str
    total_checked: int
    counterexamples: tuple[Counterexample, ...]

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def as_text(self) -> str:
        head = f"{self.mode} oracle: {self.total_checked} inputs checked, "
        if self.ok:
            return head + "all good\n"
        lines = [head + f"{len(self.counterexamples)} counterexamples (capped)"]
        lines += [f"  x={c.assignment:#x} {c.kind}: {c.detail}" for c in self.counterexamples]
        return "\n".join(lines) + "\n"

    def as_csv(self) -> str:
        lines = ["assignment,kind,detail"]
        lines += [f"{c.assignment},{c.kind},{c.detail}" for c in self.counterexamples]
        return "\n".join(lines) + "\n"


_COUNTEREXAMPLE_CAP = 32


def verify_oracle(
    circuit: Circuit,
    system: BooleanSystem,
    mode: str,
    coverage: str = "full",
    sample_count: int = 1000,
    seed: int = 0,
) -> VerificationReport:
    """Check output/phase correctness, pool restoration, and input preservation.

    ``coverage="full"`` sweeps all ``2**n`` assignments (guarded at n <= 12);
    ``coverage="sample"`` draws ``sample_count`` seeded assignments. Circuits
    containing H (decomposed oracles) are verified in one statevector pass
    over the uniform input superposition instead, which covers every
    assignment at once.
    """
    if mode not in synth.MODES:
        raise ValueError(f"mode must be one of {synth.MODES}")
    if any(g.kind == "h" for g in circuit.gates):
        return _verify_statevector(circuit, system, mode)
    n = system.n
    if coverage == "full":
        if n > 12:
            raise ValueError("full coverage is guarded at 12 variables; use sampling")
        assignments = np.arange(1 << n, dtype=np.int64)
    elif coverage == "sample":
        rng = random.Random(seed)
        assignments = np.array(
            sorted({rng.getrandbits(n) for _ in range(sample_count)}), dtype=np.int64
        )
    else:
        raise ValueError("coverage must be 'full' or 'sample'")

    bits_out, phases_out = apply_basis_batch(circuit, assignments)
    sat = np.array([1 if system.satisfies(int(a)) else 0 for a in assignments], dtype=np.int64)

    input_mask = (1 << n) - 1
    output_q = circuit.width - 1 if mode == "xor" else None
    aux_mask = 0
    for q in range(n, circuit.width):
        if q != output_q:
            aux_mask |= 1 << q

    bad: list[Counterexample] = []

    def note(mask_bad: np.ndarray, kind: str, detail_fn) -> None:
        for i in np.nonzero(mask_bad)[0]:
            if len(bad) >= _COUNTEREXAMPLE_CAP:
                return
            bad.append(Counterexample(int(assignments[i]), kind, detail_fn(i)))

    note(
        (bits_out & input_mask) != assignments,
        "input",
        lambda i: f"inputs changed to {int(bits_out[i]) & input_mask:#x}",
    )
    note(
        (bits_out & aux_mask) != 0,
        "aux",
        lambda i: f"pool not restored: {int(bits_out[i]) & aux_mask:#x}",
    )
    if mode == "xor":
        got = (bits_out >> output_q) & 1
        note(got != sat, "output", lambda i: f"output {int(got[i])}, expected {int(sat[i])}")
        note(phases_out != 1, "phase", lambda i: f"phase {int(phases_out[i])}, expected +1")
    else:
        expected = 1 - 2 * sat
        note(
            phases_out != expected,
            "phase",
            lambda i: f"phase {int(phases_out[i])}, expected {int(expected[i])}",
        )
    return VerificationReport(mode=mode, total_checked=len(assignments), counterexamples=tuple(bad))


def _verify_statevector(circuit: Circuit, system: BooleanSystem, mode: str) -> VerificationReport:
    """One dense pass: every amplitude either matches the ideal oracle or not."""
    n = system.n
    w = circuit.width
    state = apply_statevector(Circuit(w, tuple(h(q) for q in range(n))))
    state = apply_statevector(circuit, state)

    sat = system.satisfaction_table().astype(np.int64)
    amp = 2.0 ** (-n / 2)
    expected = np.zeros(1 << w, dtype=np.complex128)
    xs = np.arange(1 << n, dtype=np.int64)
    if mode == "phase":
        expected[xs] = amp * (1 - 2 * sat)
    else:
        expected[xs | (sat << (w - 1))] = amp

    input_mask = (1 << n) - 1
    bad: list[Counterexample] = []
    for i in np.nonzero(np.abs(state - expected) > 1e-9)[0]:
        if len(bad) >= _COUNTEREXAMPLE_CAP:
            break
        i = int(i)
        kind = "aux" if (i >> n) and (mode == "phase" or i >> n != 1 << (w - n - 1)) else (
            "phase" if mode == "phase" else "output"
        )
        bad.append(
            Counterexample(
                i & input_mask,
                kind,
                f"amplitude {state[i]:.6f} at basis {i:#x}, expected {expected[i]:.6f}",
            )
        )
    return VerificationReport(mode=mode, total_checked=1 << n, counterexamples=tuple(bad))


def apply_statevector(circuit: Circuit, state: np.ndarray | None = None) -> np.ndarray:
    """Dense simulation; preserves the norm to 1e-9 per gate or raises."""
    w = circuit.width
    if w > MAX_STATEVECTOR_WIDTH:
        raise WidthTooLarge(f"{w} qubits exceeds the {MAX_STATEVECTOR_WIDTH}-qubit guard")
    size = 1 << w
    if state is None:
        state = np.zeros(size, dtype=np.complex128)
        state[0] = 1.0
    else:
        state = np.asarray(state, dtype=np.complex128).copy()
        if state.shape != (size,):
            raise ValueError("state length does not match circuit width")
    idx = np.arange(size, dtype=np.int64)
    for g in circuit.gates:
        kind = g.kind
        if kind == "h":
            q = g.qubits[0]
            view = state.reshape(1 << (w - q - 1), 2, 1 << q)
            a = view[:, 0, :].copy()
            b = view[:, 1, :]
            view[:, 0, :] = (a + b) * _SQRT_HALF
            view[:, 1, :] = (a - b) * _SQRT_HALF
        elif kind in ("z", "mcz"):
            cond = np.ones(size, dtype=np.int64)
            for q in g.qubits:
                cond &= idx >> q
            state = state * (1 - 2 * (cond & 1))
        else:  # x / cx / ccx / mcx
            cond = np.ones(size, dtype=np.int64)
            for q in g.controls:
                cond &= idx >> q
            state = state[idx ^ ((cond & 1) << g.target)]
        norm = np.linalg.norm(state)
        if abs(norm - 1.0) > _NORM_TOL:
            raise ArithmeticError(f"norm drifted to {norm} after a {kind} gate")
    return state


def grover_run(
    system: BooleanSystem, k: int, iterations: int, root_bonus: bool = False
) -> float:
    """Success probability of amplitude amplification with the phase oracle.

    Builds the tree for the system under budget ``k``, prepares the uniform
    superposition over the inputs, applies (oracle, diffuser) ``iterations``
    times, and returns the probability mass on solution assignments.
    """
    n = system.n
    m = len(system.equations)
    width = n + k
    if width > MAX_STATEVECTOR_WIDTH:
        raise WidthTooLarge(f"{width} qubits exceeds the {MAX_STATEVECTOR_WIDTH}-qubit guard")
    tree, _ = asdt.build(asdt.BuildSpec(m=m, k=k, root_bonus=root_bonus))
    oracle = synth.synthesize(tree, system, "phase", k=k, root_bonus=root_bonus)
    diffuser = Circuit(width, synth.grover_diffuser(n).gates)

    prep = Circuit(width, tuple(h(q) for q in range(n)))
    state = apply_statevector(prep)
    for _ in range(iterations):
        state = apply_statevector(oracle, state)
        state = apply_statevector(diffuser, state)

    sols = set(solutions(system))
    probs = np.abs(state) ** 2
    input_mask = (1 << n) - 1
    idx = np.arange(1 << width, dtype=np.int64)
    hit = np.isin(idx & input_mask, np.array(sorted(sols), dtype=np.int64))
    return float(probs[hit].sum())
