"""Gate-level circuit representation with depth and gate-count accounting.

Kinds are the reversible set X, H, Z, CX, CCX plus the multi-controlled
extensions MCX and MCZ. Every kind is self-inverse, so circuit inversion is
gate-list reversal. Depth counts greedy as-soon-as-possible layers: each gate
occupies all of its operand qubits for one layer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple

GATE_KINDS = ("x", "h", "z", "cx", "ccx", "mcx", "mcz")
_ARITY = {"x": 1, "h": 1, "z": 1, "cx": 2, "ccx": 3}


class Gate(NamedTuple):
    kind: str
    qubits: tuple[int, ...]

    @property
    def target(self) -> int:
        return self.qubits[-1]

    @property
    def controls(self) -> tuple[int, ...]:
        return self.qubits[:-1]


def x(q: int) -> Gate:
    return Gate("x", (q,))


def h(q: int) -> Gate:
    return Gate("h", (q,))


def z(q: int) -> Gate:
    return Gate("z", (q,))


def cx(c: int, t: int) -> Gate:
    return Gate("cx", (c, t))


def ccx(c1: int, c2: int, t: int) -> Gate:
    return Gate("ccx", (c1, c2, t))


def mcx(controls: Iterable[int], t: int) -> Gate:
    return Gate("mcx", (*controls, t))


def mcz(qubits: Iterable[int]) -> Gate:
    return Gate("mcz", tuple(qubits))


class GateError(ValueError):
    pass


def _check_gate(gate: Gate, width: int) -> None:
    if gate.kind not in GATE_KINDS:
        raise GateError(f"unknown gate kind {gate.kind!r}")
    qs = gate.qubits
    if len(set(qs)) != len(qs):
        raise GateError(f"{gate.kind} operands must be pairwise distinct: {qs}")
    if any(q < 0 or q >= width for q in qs):
        raise GateError(f"{gate.kind} operand out of range for width {width}: {qs}")
    arity = _ARITY.get(gate.kind)
    if arity is not None and len(qs) != arity:
        raise GateError(f"{gate.kind} takes {arity} operands, got {len(qs)}")
    if gate.kind in ("mcx", "mcz") and len(qs) < 2:
        raise GateError(f"{gate.kind} needs at least one control")


@dataclass(frozen=True)
class Circuit:
    width: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        if self.width < 1:
            raise GateError("circuit width must be at least 1")
        for g in self.gates:
            _check_gate(g, self.width)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.width != self.width:
            raise GateError(f"cannot concatenate widths {self.width} and {other.width}")
        return Circuit(self.width, self.gates + other.gates)

    def __len__(self) -> int:
        return len(self.gates)


def depth(circuit: Circuit) -> int:
    """Layer count under as-soon-as-possible scheduling."""
    frontier = [0] * circuit.width
    total = 0
    for g in circuit.gates:
        layer = 1 + max(frontier[q] for q in g.qubits)
        for q in g.qubits:
            frontier[q] = layer
        if layer > total:
            total = layer
    return total


def gate_count(circuit: Circuit, kinds: Iterable[str] | None = None) -> int:
    if kinds is None:
        return len(circuit.gates)
    wanted = set(kinds)
    return sum(1 for g in circuit.gates if g.kind in wanted)


def inverse(circuit: Circuit) -> Circuit:
    """Reversed gate list; all supported kinds are self-inverse."""
    return Circuit(circuit.width, tuple(reversed(circuit.gates)))


def peephole(circuit: Circuit) -> Circuit:
    """Cancel list-adjacent identical gates (each kind squares to identity)."""
    out: list[Gate] = []
    for g in circuit.gates:
        if out and out[-1] == g:
            out.pop()
        else:
            out.append(g)
    return Circuit(circuit.width, tuple(out))


class ParseError(Exception):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


_QREG_RE = re.compile(r"^qreg q\[(\d+)\];$")
_OPERAND_RE = re.compile(r"^q\[(\d+)\]$")


def emit_text(circuit: Circuit) -> str:
    """Serialize to the OpenQASM-2-compatible subset (LF newlines, bit-exact)."""
    lines = ["OPENQASM 2.0;", f"qreg q[{circuit.width}];"]
    for g in circuit.gates:
        operands = ",".join(f"q[{q}]" for q in g.qubits)
        lines.append(f"{g.kind} {operands};")
    return "\n".join(lines) + "\n"


def parse_text(text: str) -> Circuit:
    width: int | None = None
    gates: list[Gate] = []
    saw_version = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0].strip()
        if not line:
            continue
        if not saw_version:
            if line != "OPENQASM 2.0;":
                raise ParseError(lineno, f"expected 'OPENQASM 2.0;', got {line!r}")
            saw_version = True
            continue
        if width is None:
            m = _QREG_RE.match(line)
            if not m:
                raise ParseError(lineno, f"expected 'qreg q[N];', got {line!r}")
            width = int(m.group(1))
            continue
        if not line.endswith(";"):
            raise ParseError(lineno, "statement must end with ';'")
        body = line[:-1].strip()
        name, _, operand_str = body.partition(" ")
        if name not in GATE_KINDS:
            raise ParseError(lineno, f"unknown gate {name!r}")
        qubits: list[int] = []
        for piece in operand_str.split(","):
            m = _OPERAND_RE.match(piece.strip())
            if not m:
                raise ParseError(lineno, f"bad operand {piece.strip()!r}")
            qubits.append(int(m.group(1)))
        gate = Gate(name, tuple(qubits))
        try:
            _check_gate(gate, width)
        except GateError as exc:
            raise ParseError(lineno, str(exc)) from None
        gates.append(gate)
    if not saw_version:
        raise ParseError(1, "empty document")
    if width is None:
        raise ParseError(1, "missing 'qreg q[N];' declaration")
    return Circuit(width, tuple(gates))
