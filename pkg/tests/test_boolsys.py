import pytest

from hrse.boolsys import (
    AnfPoly,
    BooleanSystem,
    DuplicateMonomialWarning,
    GenerationFailed,
    ParseError,
    QubitCollision,
    VariableCountTooLarge,
    emit,
    encode_indicator,
    equation_costs,
    generate,
    generate_planted,
    parse,
    solutions,
)
from hrse.circuit import ccx, cx, x
from hrse.revsim import BasisState, apply_basis


def poly(*terms):
    return AnfPoly.from_terms(terms)


def test_eval_examples():
    p = poly((0, 1), (2,), ())  # x1*x2 + x3 + 1
    assert p.evaluate(0b011) == 0  # 1 xor 0 xor 1
    assert poly(()).evaluate(0b101) == 1
    assert AnfPoly(frozenset()).evaluate(0b111) == 0


def test_parse_basic():
    system = parse("vars 3;\nx1*x2 + x3 + 1;\n")
    assert system.n == 3
    assert len(system.equations) == 1
    assert system.equations[0] == poly((0, 1), (2,), ())


def test_parse_duplicate_monomial_cancels_with_warning():
    with pytest.warns(DuplicateMonomialWarning):
        system = parse("vars 2;\nx1 + x1;\n")
    assert system.equations[0] == AnfPoly(frozenset())


def test_parse_undeclared_variable():
    with pytest.raises(ParseError) as err:
        parse("vars 2;\nx3 + 1;\n")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse("x1 + 1;\n")
    with pytest.raises(ParseError):
        parse("vars 2;\nx1 + 1\n")


def test_emit_is_canonical_fixed_point():
    text = "vars 4;\n1 + x2 + x1*x3;\nx4;\n0;\n"
    once = emit(parse(text))
    assert once == "vars 4;\nx1*x3 + x2 + 1;\nx4;\n0;\n"
    assert emit(parse(once)) == once


def test_solutions_examples():
    assert solutions(BooleanSystem(1, (poly((0,)),))) == [0]
    assert solutions(BooleanSystem(2, (poly((0, 1), ()),))) == [0b11]
    with pytest.raises(VariableCountTooLarge):
        solutions(BooleanSystem(26, (poly((0,)),)))


def test_generate_unique_solution():
    system = generate(4, 4, seed=7)
    sols = solutions(system)
    assert len(sols) == 1
    assert system.satisfies(sols[0])


def test_generate_deterministic():
    assert generate(4, 4, seed=7) == generate(4, 4, seed=7)
    assert generate_planted(10, 5, seed=3) == generate_planted(10, 5, seed=3)


def test_generate_rejects_bad_args():
    with pytest.raises(ValueError):
        generate_planted(4, 0)
    with pytest.raises(ValueError):
        generate_planted(4, 2, degree=3)
    with pytest.raises(VariableCountTooLarge):
        generate(21, 4)


def test_generate_planted_always_satisfied():
    for seed in range(6):
        system = generate_planted(12, 6, seed=seed)
        assert solutions(system, cap=4096), "planted point must satisfy the system"


def test_encode_indicator_example_gates():
    p = poly((0, 1), (2,), ())
    circuit = encode_indicator(p, (0, 1, 2), 3)
    assert circuit.gates == (ccx(0, 1, 3), cx(2, 3), x(3), x(3))


def test_encode_constant_polys():
    always = encode_indicator(AnfPoly(frozenset()), (0,), 1)
    assert always.gates == (x(1),)
    never = encode_indicator(poly(()), (0,), 1)
    assert never.gates == (x(1), x(1))
    single = encode_indicator(poly((0,)), (0,), 1)
    assert single.gates == (cx(0, 1), x(1))


def test_encode_collisions():
    with pytest.raises(QubitCollision):
        encode_indicator(poly((0,)), (0, 1), 1)
    with pytest.raises(QubitCollision):
        encode_indicator(poly((0,)), (2, 2), 3)


@pytest.mark.parametrize("seed", range(5))
def test_encode_indicator_truth_table(seed):
    system = generate_planted(6, 3, seed=seed)
    for eq in system.equations:
        circuit = encode_indicator(eq, tuple(range(6)), 6)
        for assignment in range(1 << 6):
            out = apply_basis(circuit, BasisState(7, assignment))
            assert out.bit(6) == (eq.evaluate(assignment) == 0)
            assert out.bits & 0b111111 == assignment
            assert out.phase == 1


def test_high_degree_monomial_uses_mcx():
    p = parse("vars 4;\nx1*x2*x3*x4;\n").equations[0]
    circuit = encode_indicator(p, (0, 1, 2, 3), 4)
    assert circuit.gates[0].kind == "mcx"
    for assignment in range(16):
        out = apply_basis(circuit, BasisState(5, assignment))
        assert out.bit(4) == (p.evaluate(assignment) == 0)


def test_equation_costs_match_encoders():
    system = generate_planted(8, 4, seed=1)
    for eq, cost in zip(system.equations, equation_costs(system)):
        assert cost == len(encode_indicator(eq, tuple(range(8)), 8).gates)


def test_generation_failure_surfaces():
    with pytest.raises(GenerationFailed):
        generate(8, 1, seed=0, max_attempts=3)  # one equation can't pin 8 variables


def test_system_rejects_out_of_range_variable():
    with pytest.raises(ValueError):
        BooleanSystem(2, (poly((5,)),))
    with pytest.raises(ValueError):
        BooleanSystem(2, ())
