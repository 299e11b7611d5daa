"""Gate and circuit model for {H, P^k, Z, CNOT, CZ} computations.

Qubit indices are 0-based everywhere; 1-based wire labels only appear in
rendered text meant for humans.  Z is stored as P^2 and printed back as Z.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Layout(Enum):
    ALL_TO_ALL = "all"
    LNN = "lnn"


class CircuitParseError(ValueError):
    """Raised on malformed circuit text; carries the offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class Gate:
    """A single gate: kind in {"H", "P", "CX", "CZ"}; P carries a power 1..3."""

    kind: str
    qubits: tuple[int, ...]
    power: int = 1

    def __post_init__(self):
        if self.kind in ("H", "P"):
            if len(self.qubits) != 1:
                raise ValueError(f"{self.kind} takes one qubit")
        elif self.kind in ("CX", "CZ"):
            if len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]:
                raise ValueError(f"{self.kind} takes two distinct qubits")
        else:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.kind == "P" and self.power not in (1, 2, 3):
            raise ValueError("P power must be 1, 2 or 3")
        if self.kind != "P" and self.power != 1:
            raise ValueError("only P gates carry a power")

    @staticmethod
    def h(q: int) -> Gate:
        return Gate("H", (q,))

    @staticmethod
    def p(q: int, power: int = 1) -> Gate:
        return Gate("P", (q,), power)

    @staticmethod
    def z(q: int) -> Gate:
        return Gate("P", (q,), 2)

    @staticmethod
    def pdg(q: int) -> Gate:
        return Gate("P", (q,), 3)

    @staticmethod
    def cx(control: int, target: int) -> Gate:
        return Gate("CX", (control, target))

    @staticmethod
    def cz(a: int, b: int) -> Gate:
        return Gate("CZ", (min(a, b), max(a, b)))

    @property
    def is_two_qubit(self) -> bool:
        return self.kind in ("CX", "CZ")

    def inverse(self) -> Gate:
        if self.kind == "P":
            return Gate("P", self.qubits, 4 - self.power)
        return self

    def mnemonic(self) -> str:
        if self.kind == "H":
            return f"H {self.qubits[0]}"
        if self.kind == "P":
            name = {1: "P", 2: "Z", 3: "PDG"}[self.power]
            return f"{name} {self.qubits[0]}"
        if self.kind == "CX":
            return f"CX {self.qubits[0]} {self.qubits[1]}"
        return f"CZ {self.qubits[0]} {self.qubits[1]}"


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list on n qubits."""

    n: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative qubit count")
        for g in self.gates:
            for q in g.qubits:
                if not 0 <= q < self.n:
                    raise ValueError(f"qubit {q} out of range for n={self.n}")

    def __len__(self) -> int:
        return len(self.gates)

    def extend(self, gates) -> Circuit:
        return Circuit(self.n, self.gates + tuple(gates))

    def two_qubit_count(self) -> int:
        return sum(1 for g in self.gates if g.is_two_qubit)

    def gate_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for g in self.gates:
            key = g.mnemonic().split()[0]
            counts[key] = counts.get(key, 0) + 1
        return counts


def two_qubit_depth(circuit: Circuit) -> int:
    """Greedy as-soon-as-possible layering depth over two-qubit gates only."""
    level = [0] * circuit.n
    depth = 0
    for g in circuit.gates:
        if not g.is_two_qubit:
            continue
        a, b = g.qubits
        layer = max(level[a], level[b]) + 1
        level[a] = level[b] = layer
        depth = max(depth, layer)
    return depth


def validate_layout(circuit: Circuit, layout: Layout) -> bool:
    """True iff every two-qubit gate satisfies the layout adjacency rule."""
    if layout is Layout.ALL_TO_ALL:
        return True
    return all(
        abs(g.qubits[0] - g.qubits[1]) == 1
        for g in circuit.gates
        if g.is_two_qubit
    )


def invert_circuit(circuit: Circuit) -> Circuit:
    """Gate-wise inverse in reversed order; P^k maps to P^(4-k)."""
    return Circuit(circuit.n, tuple(g.inverse() for g in reversed(circuit.gates)))


_MNEMONICS = {"H": 1, "P": 1, "PDG": 1, "Z": 1, "CX": 2, "CZ": 2}


def parse_circuit(text: str) -> Circuit:
    """Parse the line-oriented circuit format.

    First significant line is ``QUBITS n``; then one gate per line among
    ``H q``, ``P q``, ``PDG q``, ``Z q``, ``CX c t``, ``CZ a b``.  Mnemonics
    are case-insensitive and ``#`` starts a comment.
    """
    n = None
    gates: list[Gate] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0].upper()
        if n is None:
            if head != "QUBITS" or len(parts) != 2:
                raise CircuitParseError(line_no, "expected 'QUBITS n' header")
            try:
                n = int(parts[1])
            except ValueError:
                raise CircuitParseError(line_no, "qubit count is not an integer")
            if n < 0:
                raise CircuitParseError(line_no, "negative qubit count")
            continue
        if head not in _MNEMONICS:
            raise CircuitParseError(line_no, f"unknown mnemonic {parts[0]!r}")
        arity = _MNEMONICS[head]
        if len(parts) != arity + 1:
            raise CircuitParseError(line_no, f"{head} takes {arity} qubit index(es)")
        try:
            qubits = [int(p) for p in parts[1:]]
        except ValueError:
            raise CircuitParseError(line_no, "qubit index is not an integer")
        for q in qubits:
            if not 0 <= q < n:
                raise CircuitParseError(line_no, f"qubit {q} out of range [0, {n})")
        if arity == 2 and qubits[0] == qubits[1]:
            raise CircuitParseError(line_no, f"{head} needs distinct qubits")
        if head == "H":
            gates.append(Gate.h(qubits[0]))
        elif head == "P":
            gates.append(Gate.p(qubits[0]))
        elif head == "PDG":
            gates.append(Gate.pdg(qubits[0]))
        elif head == "Z":
            gates.append(Gate.z(qubits[0]))
        elif head == "CX":
            gates.append(Gate.cx(qubits[0], qubits[1]))
        else:
            gates.append(Gate.cz(qubits[0], qubits[1]))
    if n is None:
        raise CircuitParseError(1, "missing 'QUBITS n' header")
    return Circuit(n, tuple(gates))


def format_circuit(circuit: Circuit) -> str:
    lines = [f"QUBITS {circuit.n}"]
    lines.extend(g.mnemonic() for g in circuit.gates)
    return "\n".join(lines) + "\n"
