"""Circuit model: depth metric, layouts, inversion, text format."""

import pytest

from stabcanon.circuits import (
    Circuit,
    CircuitParseError,
    Gate,
    Layout,
    format_circuit,
    invert_circuit,
    parse_circuit,
    two_qubit_depth,
    validate_layout,
)
from stabcanon.tableau import (
    CliffordTableau,
    circuit_to_tableau,
    random_clifford_circuit,
    tableau_equal,
)


def test_depth_empty_circuit():
    assert two_qubit_depth(Circuit(3)) == 0


def test_depth_disjoint_pairs_share_a_layer():
    c = Circuit(4, (Gate.cx(0, 1), Gate.cx(2, 3)))
    assert two_qubit_depth(c) == 1


def test_depth_chain():
    c = Circuit(3, (Gate.cx(0, 1), Gate.cx(1, 2), Gate.cx(0, 1)))
    assert two_qubit_depth(c) == 3


def test_depth_ignores_single_qubit_gates():
    base = Circuit(3, (Gate.cx(0, 1), Gate.cz(1, 2)))
    padded = Circuit(3, (Gate.h(0), Gate.cx(0, 1), Gate.p(1), Gate.cz(1, 2), Gate.z(2)))
    assert two_qubit_depth(base) == two_qubit_depth(padded) == 2


def test_depth_bounded_by_gate_count():
    c = random_clifford_circuit(5, 60, seed=7)
    assert two_qubit_depth(c) <= c.two_qubit_count()


@pytest.mark.parametrize(
    "gate,layout,ok",
    [
        (Gate.cx(0, 1), Layout.LNN, True),
        (Gate.cx(0, 2), Layout.LNN, False),
        (Gate.cx(0, 2), Layout.ALL_TO_ALL, True),
        (Gate.cz(2, 1), Layout.LNN, True),
    ],
)
def test_validate_layout(gate, layout, ok):
    assert validate_layout(Circuit(3, (gate,)), layout) is ok


def test_invert_p_gate():
    c = Circuit(1, (Gate.p(0),))
    assert invert_circuit(c).gates == (Gate.pdg(0),)


def test_invert_reverses_order():
    c = Circuit(2, (Gate.h(0), Gate.cx(0, 1)))
    assert invert_circuit(c).gates == (Gate.cx(0, 1), Gate.h(0))


def test_invert_z_self_inverse():
    c = Circuit(1, (Gate.z(0),))
    assert invert_circuit(c).gates == (Gate.z(0),)


@pytest.mark.parametrize("seed", range(8))
def test_invert_round_trips_to_identity_tableau(seed):
    c = random_clifford_circuit(4, 40, seed=seed)
    both = c.extend(invert_circuit(c).gates)
    assert tableau_equal(circuit_to_tableau(both), CliffordTableau.identity(4))


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate("CX", (1, 1))
    with pytest.raises(ValueError):
        Gate("P", (0,), 4)
    with pytest.raises(ValueError):
        Circuit(2, (Gate.cx(0, 3),))


def test_parse_round_trip():
    text = "QUBITS 3\nH 0\nP 1\nPDG 2\nZ 0\nCX 0 1\nCZ 1 2\n"
    c = parse_circuit(text)
    assert format_circuit(c) == text


def test_parse_case_insensitive_and_comments():
    c = parse_circuit("# header\nqubits 2\n h 0 # trailing\n\ncx 0 1\n")
    assert c.n == 2
    assert [g.mnemonic() for g in c.gates] == ["H 0", "CX 0 1"]


@pytest.mark.parametrize(
    "text,line",
    [
        ("QUBITS 2\nFOO 0\n", 2),
        ("QUBITS 2\nCX 0 2\n", 2),
        ("QUBITS 2\nCX 0\n", 2),
        ("H 0\n", 1),
        ("QUBITS 2\nCZ 1 1\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(CircuitParseError) as exc:
        parse_circuit(text)
    assert exc.value.line_no == line


def test_z_prints_as_z():
    assert Gate.p(0, 2).mnemonic() == "Z 0"
    assert Gate.pdg(1).mnemonic() == "PDG 1"
