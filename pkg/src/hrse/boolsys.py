"""Systems of Boolean equations in algebraic normal form.

A polynomial is an XOR of monomials, each monomial an AND of variables (the
empty monomial is the constant 1); the equation is p(x) = 0. The indicator
encoder turns one polynomial into a circuit flipping a target qubit exactly
on satisfying assignments, which is the per-function building block every
oracle synthesis starts from. Variable indices are 0-based in code and
1-based in the text format.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .circuit import Circuit, Gate, ccx, cx, mcx, x

Monomial = frozenset  # of variable indices; frozenset() is the constant 1


class ParseError(Exception):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DuplicateMonomialWarning(UserWarning):
    pass


class VariableCountTooLarge(Exception):
    pass


class GenerationFailed(Exception):
    pass


class QubitCollision(ValueError):
    pass


def _mono_key(mono: Monomial):
    # Canonical order: higher degree first, then lexicographic on indices.
    return (-len(mono), sorted(mono))


@dataclass(frozen=True)
class AnfPoly:
    monomials: frozenset

    @staticmethod
    def from_terms(terms: Iterable[Iterable[int]]) -> "AnfPoly":
        """XOR-fold the terms; duplicated monomials cancel pairwise."""
        acc: set = set()
        for term in terms:
            acc ^= {Monomial(term)}
        return AnfPoly(frozenset(acc))

    def ordered_monomials(self) -> list:
        return sorted(self.monomials, key=_mono_key)

    def degree(self) -> int:
        return max((len(m) for m in self.monomials), default=0)

    def max_var(self) -> int:
        return max((max(m) for m in self.monomials if m), default=-1)

    def evaluate(self, assignment: int) -> int:
        """Value at an assignment packed as an int (bit i = variable i)."""
        result = 0
        for mono in self.monomials:
            term = 1
            for v in mono:
                term &= assignment >> v
            result ^= term & 1
        return result

    def truth_table(self, n: int) -> np.ndarray:
        """Values on all ``2**n`` assignments, index bit i = variable i."""
        idx = np.arange(1 << n, dtype=np.int64)
        out = np.zeros(1 << n, dtype=np.int64)
        for mono in self.monomials:
            term = np.ones(1 << n, dtype=np.int64)
            for v in mono:
                term &= idx >> v
            out ^= term & 1
        return out


@dataclass(frozen=True)
class BooleanSystem:
    n: int
    equations: tuple[AnfPoly, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one variable")
        if not self.equations:
            raise ValueError("need at least one equation")
        for eq in self.equations:
            if eq.max_var() >= self.n:
                raise ValueError(f"equation uses variable beyond the declared {self.n}")

    def satisfies(self, assignment: int) -> bool:
        return all(eq.evaluate(assignment) == 0 for eq in self.equations)

    def satisfaction_table(self) -> np.ndarray:
        """Boolean vector over all assignments; guarded like :func:`solutions`."""
        if self.n > 25:
            raise VariableCountTooLarge(f"{self.n} variables is beyond the exhaustive sweep guard")
        sat = np.ones(1 << self.n, dtype=bool)
        for eq in self.equations:
            sat &= eq.truth_table(self.n) == 0
        return sat


def solutions(system: BooleanSystem, cap: int | None = None) -> list[int]:
    """All satisfying assignments in ascending order, stopping at cap + 1."""
    if system.n > 25:
        raise VariableCountTooLarge(f"{system.n} variables is beyond the exhaustive sweep guard")
    found: list[int] = []
    block = 1 << min(system.n, 20)
    total = 1 << system.n
    for start in range(0, total, block):
        idx = np.arange(start, min(start + block, total), dtype=np.int64)
        sat = np.ones(idx.shape, dtype=bool)
        for eq in system.equations:
            term_val = np.zeros(idx.shape, dtype=np.int64)
            for mono in eq.monomials:
                term = np.ones(idx.shape, dtype=np.int64)
                for v in mono:
                    term &= idx >> v
                term_val ^= term & 1
            sat &= term_val == 0
        found.extend(int(v) for v in idx[sat])
        if cap is not None and len(found) > cap:
            return found[: cap + 1]
    return found


def parse(text: str) -> BooleanSystem:
    """Parse the text format: ``vars n;`` then one equation per line."""
    n: int | None = None
    equations: list[AnfPoly] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.endswith(";"):
            raise ParseError(lineno, "statement must end with ';'")
        body = line[:-1].strip()
        if n is None:
            if not body.startswith("vars"):
                raise ParseError(lineno, "first statement must be 'vars n;'")
            try:
                n = int(body[len("vars"):].strip())
            except ValueError:
                raise ParseError(lineno, "bad variable count") from None
            if n < 1:
                raise ParseError(lineno, "variable count must be positive")
            continue
        equations.append(_parse_poly(body, n, lineno))
    if n is None:
        raise ParseError(1, "missing 'vars n;' header")
    if not equations:
        raise ParseError(1, "no equations")
    return BooleanSystem(n=n, equations=tuple(equations))


def _parse_poly(body: str, n: int, lineno: int) -> AnfPoly:
    if body == "0":
        return AnfPoly(frozenset())
    monomials: set = set()
    for term in body.split("+"):
        term = term.strip()
        if not term:
            raise ParseError(lineno, "empty term")
        if term == "1":
            mono = Monomial()
        else:
            indices = []
            for factor in term.split("*"):
                factor = factor.strip()
                if not factor.startswith("x"):
                    raise ParseError(lineno, f"bad factor {factor!r}")
                try:
                    i = int(factor[1:])
                except ValueError:
                    raise ParseError(lineno, f"bad variable {factor!r}") from None
                if i < 1 or i > n:
                    raise ParseError(lineno, f"variable x{i} outside declared range 1..{n}")
                indices.append(i - 1)
            if len(set(indices)) != len(indices):
                # x*x = x over GF(2); normalize silently.
                indices = sorted(set(indices))
            mono = Monomial(indices)
        if mono in monomials:
            warnings.warn(
                f"line {lineno}: duplicate monomial cancels out", DuplicateMonomialWarning
            )
            monomials.discard(mono)
        else:
            monomials.add(mono)
    return AnfPoly(frozenset(monomials))


def _mono_text(mono: Monomial) -> str:
    if not mono:
        return "1"
    return "*".join(f"x{v + 1}" for v in sorted(mono))


def emit(system: BooleanSystem) -> str:
    """Canonical text form; a fixed point of parse-then-emit."""
    lines = [f"vars {system.n};"]
    for eq in system.equations:
        monos = eq.ordered_monomials()
        lines.append(("0" if not monos else " + ".join(_mono_text(m) for m in monos)) + ";")
    return "\n".join(lines) + "\n"


def _random_poly(n: int, degree: int, rng: random.Random) -> AnfPoly:
    monomials: set = set()
    if degree >= 2:
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.3:
                    monomials.add(Monomial((i, j)))
    for i in range(n):
        if rng.random() < 0.5:
            monomials.add(Monomial((i,)))
    return AnfPoly(frozenset(monomials))


def generate_planted(n: int, eq_count: int, degree: int = 2, seed: int = 0) -> BooleanSystem:
    """Deterministic random system whose equations all vanish at a planted point.

    No uniqueness certification: intended for benchmark instances where only
    the circuit structure matters and the variable count makes exhaustive
    sweeps pointless.
    """
    if eq_count < 1:
        raise ValueError("need at least one equation")
    if degree not in (1, 2):
        raise ValueError("generator supports degree 1 or 2")
    rng = random.Random(f"anf:{seed}:{n}:{eq_count}:{degree}")
    planted = rng.getrandbits(n)
    equations = []
    for _ in range(eq_count):
        poly = _random_poly(n, degree, rng)
        while not any(poly.monomials):
            poly = _random_poly(n, degree, rng)
        if poly.evaluate(planted) == 1:
            poly = AnfPoly(poly.monomials ^ {Monomial()})
        equations.append(poly)
    return BooleanSystem(n=n, equations=tuple(equations))


def generate(
    n: int,
    eq_count: int,
    degree: int = 2,
    seed: int = 0,
    max_attempts: int = 200,
    allow_large: bool = False,
) -> BooleanSystem:
    """Random system with a certified unique solution.

    Resamples until the exhaustive sweep finds exactly the planted point.
    The sweep caps the variable count at 20 unless ``allow_large``.
    """
    if n > 20 and not allow_large:
        raise VariableCountTooLarge(
            f"uniqueness certification sweeps 2**{n} assignments; pass allow_large to force"
        )
    for attempt in range(max_attempts):
        system = generate_planted(n, eq_count, degree, seed=seed * 1_000_003 + attempt)
        sols = solutions(system, cap=1)
        if len(sols) == 1:
            return system
    raise GenerationFailed(
        f"no uniquely solvable system after {max_attempts} attempts (n={n}, eqs={eq_count})"
    )


def encode_indicator(
    poly: AnfPoly, var_qubits: Sequence[int], target: int, width: int | None = None
) -> Circuit:
    """Circuit flipping ``target`` exactly when the equation is satisfied.

    One gate per monomial (controls = the monomial's variables, the constant
    term is a plain X), then a final X so the target reads 1 on p(x) = 0.
    The final X is kept even when it cancels a constant-term X, so the gate
    count is a predictable per-function cost. Inputs are left unchanged;
    the target is assumed |0>.
    """
    if target in var_qubits:
        raise QubitCollision(f"target {target} collides with an input qubit")
    if len(set(var_qubits)) != len(var_qubits):
        raise QubitCollision("input qubits must be pairwise distinct")
    if poly.max_var() >= len(var_qubits):
        raise ValueError("polynomial uses a variable with no assigned qubit")
    if width is None:
        width = max([target, *var_qubits]) + 1
    gates: list[Gate] = []
    for mono in poly.ordered_monomials():
        qs = sorted(var_qubits[v] for v in mono)
        if not qs:
            gates.append(x(target))
        elif len(qs) == 1:
            gates.append(cx(qs[0], target))
        elif len(qs) == 2:
            gates.append(ccx(qs[0], qs[1], target))
        else:
            gates.append(mcx(qs, target))
    gates.append(x(target))
    return Circuit(width, tuple(gates))


def equation_costs(system: BooleanSystem) -> tuple[int, ...]:
    """Gate count of each equation's indicator circuit (its measured delta)."""
    return tuple(len(eq.monomials) + 1 for eq in system.equations)
