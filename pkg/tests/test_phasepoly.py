"""Phase-polynomial extraction, folding, and -P-CZ-C- synthesis."""

import itertools

import pytest

from stabcanon.circuits import Circuit, Gate
from stabcanon.f2 import BitMatrix
from stabcanon.oracle import dense_unitary, theorem0_unitary, unitary_equal
from stabcanon.phasepoly import (
    PhasePolynomial,
    dump_poly,
    evaluate,
    extract,
    fold,
    reexpress,
    synthesize_pczc,
    weight_le2_form,
)
from stabcanon.tableau import circuit_to_tableau, random_clifford_circuit, tableau_equal


def poly(n, *items):
    return PhasePolynomial.from_terms(n, items)


def test_evaluate_empty():
    assert evaluate(PhasePolynomial.zero(3), 0b101) == 0


def test_evaluate_single_term():
    assert evaluate(poly(2, (0b01, 1)), 0b01) == 1


def test_eq1_identity_all_triples():
    """(a+b+c+(a^b)+(a^c)+(b^c)+(a^b^c)) = 0 mod 4 on all 8 Boolean triples."""
    p = poly(
        3,
        (0b001, 1), (0b010, 1), (0b100, 1),
        (0b011, 1), (0b101, 1), (0b110, 1),
        (0b111, 1),
    )
    for x in range(8):
        assert evaluate(p, x) == 0


def test_eq1_rewrite_form():
    """i^(a^b^c) = i^(3a+3b+3c+3(a^b)+3(a^c)+3(b^c)) pointwise."""
    lhs = poly(3, (0b111, 1))
    rhs = poly(3, (0b001, 3), (0b010, 3), (0b100, 3), (0b011, 3), (0b101, 3), (0b110, 3))
    for x in range(8):
        assert evaluate(lhs, x) == evaluate(rhs, x)
    assert evaluate(rhs, 0b111) == 1


def test_extract_cnot_then_p():
    c = Circuit(2, (Gate.cx(0, 1), Gate.p(1)))
    p, g = extract(c)
    assert p.terms == {0b11: 1}
    assert g.rows == (0b01, 0b11)


def test_extract_p_twice():
    p, g = extract(Circuit(1, (Gate.p(0), Gate.p(0))))
    assert p.terms == {1: 2}
    assert g.is_identity()


def test_extract_cz():
    p, g = extract(Circuit(2, (Gate.cz(0, 1),)))
    assert p.terms == {0b01: 1, 0b10: 1, 0b11: 3}
    assert g.is_identity()


def test_extract_rejects_h():
    with pytest.raises(ValueError):
        extract(Circuit(1, (Gate.h(0),)))


def test_extract_matches_theorem0_semantics():
    """Dense unitary equals |x> -> i^p(x) |g(x)> exactly, no phase slack."""
    for seed in range(8):
        c = random_clifford_circuit(4, 30, seed=seed, h_free=True)
        p, g = extract(c)
        assert unitary_equal(dense_unitary(c), theorem0_unitary(p, g), "exact")


def test_fold_already_low_weight_unchanged():
    p = poly(3, (0b011, 2), (0b100, 1))
    assert fold(p).terms == p.terms


def test_fold_paper_step_n_example():
    p = poly(3, (0b111, 1))
    expected = {0b001: 3, 0b010: 3, 0b100: 3, 0b011: 3, 0b101: 3, 0b110: 3}
    assert fold(p).terms == expected


@pytest.mark.parametrize("n", [2, 3, 4])
def test_fold_preserves_evaluation_exhaustively(n):
    import random

    rng = random.Random(n)
    for _ in range(30):
        items = []
        for mask in range(1, 1 << n):
            c = rng.randrange(4)
            if c:
                items.append((mask, c))
        p = poly(n, *items)
        q = fold(p)
        assert q.max_weight() <= 2
        for x in range(1 << n):
            assert evaluate(p, x) == evaluate(q, x)


def test_fold_weight_bound_randomized():
    for seed in range(10):
        c = random_clifford_circuit(8, 60, seed=seed, h_free=True)
        p, _ = extract(c)
        assert fold(p).max_weight() <= 2


def test_fold_rejects_oversized_n():
    with pytest.raises(ValueError):
        fold(PhasePolynomial.zero(17))


def test_weight_le2_form_matches_fold_pointwise():
    for seed in range(10):
        c = random_clifford_circuit(4, 40, seed=seed, h_free=True)
        p, _ = extract(c)
        a, b = fold(p), weight_le2_form(p)
        assert b.max_weight() <= 2
        for x in range(16):
            assert evaluate(a, x) == evaluate(b, x) == evaluate(p, x)


def test_weight_le2_form_rejects_non_clifford_diagonal():
    with pytest.raises(ValueError):
        weight_le2_form(poly(3, (0b111, 2)).add(poly(3, (0b001, 1))))


def test_synthesize_pair_term():
    c = synthesize_pczc(poly(2, (0b11, 1)), BitMatrix.identity(2))
    assert [g.mnemonic() for g in c.gates] == ["P 0", "P 1", "CZ 0 1"]


def test_synthesize_pair_coeff_two():
    c = synthesize_pczc(poly(2, (0b11, 2)), BitMatrix.identity(2))
    assert [g.mnemonic() for g in c.gates] == ["Z 0", "Z 1"]


def test_synthesize_empty():
    c = synthesize_pczc(PhasePolynomial.zero(2), BitMatrix.identity(2))
    assert len(c) == 0


def test_synthesize_rejects_heavy_masks():
    with pytest.raises(ValueError):
        synthesize_pczc(poly(3, (0b111, 1)), BitMatrix.identity(3))


@pytest.mark.parametrize("seed", range(10))
def test_extract_synthesize_round_trip_tableau(seed):
    c = random_clifford_circuit(6, 50, seed=seed, h_free=True)
    p, g = extract(c)
    rebuilt = synthesize_pczc(fold(p), g)
    assert tableau_equal(circuit_to_tableau(rebuilt), circuit_to_tableau(c))
    # The diagonal tail precedes the linear tail: CZs before all CNOTs.
    kinds = [g.kind for g in rebuilt.gates if g.is_two_qubit]
    if "CZ" in kinds and "CX" in kinds:
        assert kinds.index("CX") > max(i for i, k in enumerate(kinds) if k == "CZ")


@pytest.mark.parametrize("seed", range(8))
def test_extract_synthesize_round_trip_statevector_exact(seed):
    c = random_clifford_circuit(5, 40, seed=seed, h_free=True)
    p, g = extract(c)
    rebuilt = synthesize_pczc(fold(p), g)
    assert unitary_equal(dense_unitary(rebuilt), dense_unitary(c), "exact")


def test_reexpress_pczc_matches_synthesize():
    p = poly(3, (0b011, 3), (0b100, 2))
    g = BitMatrix(3, (0b011, 0b010, 0b100))
    assert reexpress(p, g, "pczc").gates == synthesize_pczc(p, g).gates


@pytest.mark.parametrize("order", ["pczc", "cpcz", "czpc", "cczp"])
@pytest.mark.parametrize("seed", range(5))
def test_reexpress_all_orders_tableau_equal(order, seed):
    c = random_clifford_circuit(5, 40, seed=seed, h_free=True)
    p, g = extract(c)
    p2 = weight_le2_form(p)
    got = reexpress(p2, g, order)
    assert tableau_equal(circuit_to_tableau(got), circuit_to_tableau(c))


def test_reexpress_identity_linear_part_all_orders_agree():
    p = poly(3, (0b011, 1), (0b100, 3))
    g = BitMatrix.identity(3)
    tabs = [
        circuit_to_tableau(reexpress(p, g, order))
        for order in ("pczc", "cpcz", "czpc", "cczp")
    ]
    assert all(tableau_equal(tabs[0], t) for t in tabs[1:])


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_theorem1_pc_blocks_fold_to_pczc(m):
    """(-P-C-)^m collapses to -P-CZ-C-, statevector-exact."""
    import random

    rng = random.Random(m)
    n = 4
    gates = []
    for _ in range(m):
        for q in range(n):
            k = rng.randrange(4)
            if k:
                gates.append(Gate.p(q, k))
        for _ in range(6):
            a = rng.randrange(n)
            b = rng.randrange(n - 1)
            b += b >= a
            gates.append(Gate.cx(a, b))
    c = Circuit(n, tuple(gates))
    p, g = extract(c)
    rebuilt = synthesize_pczc(fold(p), g)
    assert unitary_equal(dense_unitary(rebuilt), dense_unitary(c), "exact")


def test_dump_poly_sorted():
    p = poly(2, (0b10, 2), (0b01, 1))
    assert dump_poly(p) == "1 01\n2 10\n"
