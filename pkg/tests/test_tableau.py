"""Tableau semantics against first principles and the dense oracle."""

import numpy as np
import pytest

from stabcanon.circuits import Circuit, Gate
from stabcanon.oracle import dense_unitary, unitary_equal
from stabcanon.tableau import (
    CliffordTableau,
    apply_gate,
    circuit_to_tableau,
    dump_tableau,
    hermiticity_ok,
    random_clifford,
    random_clifford_circuit,
    symplectic_ok,
    symplectic_order,
    tableau_equal,
)


def test_h_swaps_x_and_z():
    t = apply_gate(CliffordTableau.identity(1), Gate.h(0))
    assert t.term(0).x == 0 and t.term(0).z == 1 and t.term(0).phase == 0
    assert t.term(1).x == 1 and t.term(1).z == 0 and t.term(1).phase == 0


def test_p_sends_x_to_y():
    t = apply_gate(CliffordTableau.identity(1), Gate.p(0))
    assert (t.term(0).x, t.term(0).z, t.term(0).phase) == (1, 1, 1)
    assert (t.term(1).x, t.term(1).z, t.term(1).phase) == (0, 1, 0)


def test_cnot_spreads_x_and_z():
    t = apply_gate(CliffordTableau.identity(2), Gate.cx(0, 1))
    assert (t.term(0).x, t.term(0).z) == (0b11, 0)  # X0 -> X0 X1
    assert (t.term(1).x, t.term(1).z) == (0b10, 0)  # X1 unchanged
    assert (t.term(2).x, t.term(2).z) == (0, 0b01)  # Z0 unchanged
    assert (t.term(3).x, t.term(3).z) == (0, 0b11)  # Z1 -> Z0 Z1
    assert all(term.phase == 0 for term in t.images())


def test_empty_circuit_gives_identity():
    assert tableau_equal(circuit_to_tableau(Circuit(3)), CliffordTableau.identity(3))


def test_h_squared_is_identity():
    c = Circuit(1, (Gate.h(0), Gate.h(0)))
    assert tableau_equal(circuit_to_tableau(c), CliffordTableau.identity(1))


def test_cz_equals_h_conjugated_cnot():
    cz = circuit_to_tableau(Circuit(2, (Gate.cz(0, 1),)))
    hch = circuit_to_tableau(Circuit(2, (Gate.h(1), Gate.cx(0, 1), Gate.h(1))))
    assert tableau_equal(cz, hch)


def test_p_squared_equals_z():
    pp = circuit_to_tableau(Circuit(1, (Gate.p(0), Gate.p(0))))
    z = circuit_to_tableau(Circuit(1, (Gate.z(0),)))
    assert tableau_equal(pp, z)
    assert not tableau_equal(
        circuit_to_tableau(Circuit(1, (Gate.p(0),))), z
    )


def test_tableau_equal_rejects_mismatched_n():
    with pytest.raises(ValueError):
        tableau_equal(CliffordTableau.identity(1), CliffordTableau.identity(2))


@pytest.mark.parametrize("seed", range(10))
def test_invariants_hold_along_random_words(seed):
    c = random_clifford_circuit(6, 80, seed=seed)
    t = CliffordTableau.identity(6)
    for g in c.gates:
        t = apply_gate(t, g)
        assert hermiticity_ok(t)
    assert symplectic_ok(t)


def test_random_clifford_deterministic():
    a = random_clifford(4, seed=123)
    b = random_clifford(4, seed=123)
    assert tableau_equal(a, b)


def _symplectic_key(t):
    return tuple(t.symplectic_matrix().rows)


def test_random_clifford_support_n1():
    keys = {_symplectic_key(random_clifford(1, seed=s)) for s in range(200)}
    assert len(keys) == 6  # |Sp(2, F2)|


def test_random_clifford_support_n2():
    keys = {_symplectic_key(random_clifford(2, seed=s)) for s in range(400)}
    assert len(keys) <= 720  # |Sp(4, F2)| / |Paulis| = 720


def test_symplectic_order_values():
    assert symplectic_order(1) == 6
    assert symplectic_order(2) == 720
    assert symplectic_order(3) == 1451520


@pytest.mark.parametrize("seed", range(12))
def test_tableau_equality_matches_dense_oracle(seed):
    n = 3
    c1 = random_clifford_circuit(n, 25, seed=seed)
    c2 = random_clifford_circuit(n, 25, seed=seed + 1000)
    t_same = tableau_equal(circuit_to_tableau(c1), circuit_to_tableau(c2))
    u_same = unitary_equal(
        dense_unitary(c1), dense_unitary(c2), "up_to_global_phase"
    )
    assert t_same == u_same


@pytest.mark.parametrize("seed", range(6))
def test_tableau_tracks_dense_conjugation(seed):
    """U P U^dagger computed densely matches every tableau image."""
    n = 3
    c = random_clifford_circuit(n, 30, seed=seed)
    t = circuit_to_tableau(c)
    u = dense_unitary(c)

    x = np.array([[0, 1], [1, 0]], dtype=complex)
    z = np.array([[1, 0], [0, -1]], dtype=complex)

    def pauli_matrix(xbits, zbits, phase):
        m = np.eye(1, dtype=complex)
        for q in range(n):  # qubit 0 = least significant factor
            factor = np.eye(2, dtype=complex)
            if (xbits >> q) & 1:
                factor = factor @ x
            if (zbits >> q) & 1:
                factor = factor @ z
            m = np.kron(factor, m)
        return (1j**phase) * m

    for j in range(n):
        for base in ("x", "z"):
            row = j if base == "x" else n + j
            term = t.term(row)
            p_in = pauli_matrix(1 << j, 0, 0) if base == "x" else pauli_matrix(0, 1 << j, 0)
            expected = u @ p_in @ u.conj().T
            got = pauli_matrix(term.x, term.z, term.phase)
            assert np.max(np.abs(expected - got)) < 1e-9


def test_dump_format():
    t = circuit_to_tableau(Circuit(2, (Gate.p(0),)))
    lines = dump_tableau(t).splitlines()
    assert lines == ["+YI", "+IX", "+ZI", "+IZ"]
