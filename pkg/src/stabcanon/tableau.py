"""Clifford tableau simulation: conjugation images of the 2n Pauli generators.

A Pauli term is stored as i^phase * prod_q X_q^{x_q} Z_q^{z_q} with the X
factor left of the Z factor on each qubit and phase tracked mod 4.  Under
this convention the conjugation rules are

    H(q):   swap x_q/z_q,  phase += 2*x_q*z_q
    P^k(q): z_q ^= (k&1)*x_q,  phase += k*x_q
    CNOT:   x_t ^= x_c, z_c ^= z_t  (no phase change)
    CZ:     z_a ^= x_b, z_b ^= x_a,  phase += 2*x_a*x_b

Rows 0..n-1 are the images of X_0..X_{n-1}, rows n..2n-1 of Z_0..Z_{n-1}.
Internally the tableau is column-major: one 2n-bit integer per qubit for the
x block and one for the z block, so every gate is O(1) word operations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .circuits import Circuit, Gate
from .f2 import BitMatrix, parity


@dataclass(frozen=True)
class PauliTerm:
    """i^phase * X^x Z^z with x, z packed as n-bit ints."""

    n: int
    x: int
    z: int
    phase: int

    def is_hermitian(self) -> bool:
        return (self.phase + (self.x & self.z).bit_count()) % 2 == 0


class CliffordTableau:
    """Images of the 2n Pauli generators under conjugation by a Clifford."""

    __slots__ = ("n", "_xc", "_zc", "_plo", "_phi")

    def __init__(self, n: int, xc: list[int], zc: list[int], plo: int, phi: int):
        self.n = n
        self._xc = xc
        self._zc = zc
        self._plo = plo
        self._phi = phi

    @staticmethod
    def identity(n: int) -> CliffordTableau:
        if n < 1:
            raise ValueError("tableau needs at least one qubit")
        xc = [1 << q for q in range(n)]
        zc = [1 << (n + q) for q in range(n)]
        return CliffordTableau(n, xc, zc, 0, 0)

    def copy(self) -> CliffordTableau:
        return CliffordTableau(
            self.n, list(self._xc), list(self._zc), self._plo, self._phi
        )

    # -- row access -------------------------------------------------------

    def term(self, row: int) -> PauliTerm:
        x = z = 0
        for q in range(self.n):
            x |= ((self._xc[q] >> row) & 1) << q
            z |= ((self._zc[q] >> row) & 1) << q
        phase = ((self._plo >> row) & 1) + 2 * ((self._phi >> row) & 1)
        return PauliTerm(self.n, x, z, phase)

    def images(self) -> list[PauliTerm]:
        return [self.term(r) for r in range(2 * self.n)]

    def symplectic_matrix(self) -> BitMatrix:
        """The 2n x 2n binary matrix with rows (x-bits | z-bits)."""
        n = self.n
        rows = []
        for r in range(2 * n):
            t = self.term(r)
            rows.append(t.x | (t.z << n))
        return BitMatrix(2 * n, tuple(rows))

    # -- mutation (internal only; public API is apply_gate) ----------------

    def _add_phase(self, k: int, v: int) -> None:
        if k & 1:
            carry = self._plo & v
            self._plo ^= v
            self._phi ^= carry
        if k & 2:
            self._phi ^= v

    def _apply(self, g: Gate) -> None:
        if g.kind == "H":
            q = g.qubits[0]
            x, z = self._xc[q], self._zc[q]
            self._phi ^= x & z
            self._xc[q], self._zc[q] = z, x
        elif g.kind == "P":
            q = g.qubits[0]
            x = self._xc[q]
            self._add_phase(g.power, x)
            if g.power & 1:
                self._zc[q] ^= x
        elif g.kind == "CX":
            c, t = g.qubits
            self._xc[t] ^= self._xc[c]
            self._zc[c] ^= self._zc[t]
        else:  # CZ
            a, b = g.qubits
            xa, xb = self._xc[a], self._xc[b]
            self._phi ^= xa & xb
            self._zc[a] ^= xb
            self._zc[b] ^= xa

    def __eq__(self, other) -> bool:
        if not isinstance(other, CliffordTableau):
            return NotImplemented
        return (
            self.n == other.n
            and self._xc == other._xc
            and self._zc == other._zc
            and self._plo == other._plo
            and self._phi == other._phi
        )

    def __hash__(self):
        return hash((self.n, tuple(self._xc), tuple(self._zc), self._plo, self._phi))


def apply_gate(tableau: CliffordTableau, gate: Gate) -> CliffordTableau:
    """Tableau of (gate after the tableau's unitary); input is not mutated."""
    for q in gate.qubits:
        if not 0 <= q < tableau.n:
            raise ValueError(f"qubit {q} out of range")
    out = tableau.copy()
    out._apply(gate)
    return out


def circuit_to_tableau(circuit: Circuit) -> CliffordTableau:
    t = CliffordTableau.identity(max(circuit.n, 1))
    if circuit.n == 0:
        raise ValueError("tableau needs at least one qubit")
    for g in circuit.gates:
        t._apply(g)
    return t


def tableau_equal(a: CliffordTableau, b: CliffordTableau) -> bool:
    """Bitwise equality of all images; certifies equality up to global phase."""
    if a.n != b.n:
        raise ValueError("tableaus have different qubit counts")
    return a == b


def random_clifford(n: int, seed: int) -> CliffordTableau:
    """Deterministic pseudo-random Clifford: a word of ~10*n^2 generators.

    Full support over the Clifford group mod Paulis; no uniformity claim.
    The word length varies with the seed by a few gates: a fixed length
    cannot reach both parities of Sp(2, F2) at n = 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    gens: list[Gate] = []
    for q in range(n):
        gens.append(Gate.h(q))
        gens.append(Gate.p(q))
    for a in range(n):
        for b in range(n):
            if a != b:
                gens.append(Gate.cx(a, b))
            if a < b:
                gens.append(Gate.cz(a, b))
    t = CliffordTableau.identity(n)
    for _ in range(10 * n * n + rng.randrange(4)):
        t._apply(gens[rng.randrange(len(gens))])
    return t


def random_clifford_circuit(n: int, length: int, seed: int, h_free: bool = False) -> Circuit:
    """Seed-determined random circuit over the full gate set (or H-free)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    kinds = ["P", "PDG", "Z", "CX", "CZ"] + ([] if h_free else ["H"])
    gates: list[Gate] = []
    for _ in range(length):
        kind = kinds[rng.randrange(len(kinds))]
        if kind in ("CX", "CZ"):
            a = rng.randrange(n)
            b = rng.randrange(n - 1)
            if b >= a:
                b += 1
            gates.append(Gate.cx(a, b) if kind == "CX" else Gate.cz(a, b))
        else:
            q = rng.randrange(n)
            if kind == "H":
                gates.append(Gate.h(q))
            elif kind == "P":
                gates.append(Gate.p(q))
            elif kind == "PDG":
                gates.append(Gate.pdg(q))
            else:
                gates.append(Gate.z(q))
    return Circuit(n, tuple(gates))


def symplectic_order(n: int) -> int:
    """|Sp(2n, F2)| = 2^(n^2) * prod_{j=1..n} (2^(2j) - 1), exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    order = 1 << (n * n)
    for j in range(1, n + 1):
        order *= (1 << (2 * j)) - 1
    return order


def dump_tableau(t: CliffordTableau) -> str:
    """Golden-test format: one line per image, '+'/'-' then IXYZ characters."""
    lines = []
    for r in range(2 * t.n):
        term = t.term(r)
        ys = (term.x & term.z).bit_count()
        sign_exp = (term.phase - ys) % 4
        if sign_exp not in (0, 2):
            raise AssertionError("non-Hermitian image in tableau")
        sign = "+" if sign_exp == 0 else "-"
        chars = []
        for q in range(t.n):
            xb = (term.x >> q) & 1
            zb = (term.z >> q) & 1
            chars.append("IXZY"[xb + 2 * zb])
        lines.append(sign + "".join(chars))
    return "\n".join(lines) + "\n"


def hermiticity_ok(t: CliffordTableau) -> bool:
    return all(term.is_hermitian() for term in t.images())


def symplectic_ok(t: CliffordTableau) -> bool:
    """Check A^T C = C^T A, B^T D = D^T B, A^T D - C^T B = I."""
    n = t.n
    m = t.symplectic_matrix()
    mask = (1 << n) - 1
    a = BitMatrix(n, tuple(m.rows[i] & mask for i in range(n)))
    b = BitMatrix(n, tuple(m.rows[i] >> n for i in range(n)))
    c = BitMatrix(n, tuple(m.rows[n + i] & mask for i in range(n)))
    d = BitMatrix(n, tuple(m.rows[n + i] >> n for i in range(n)))
    at, bt, ct = a.transpose(), b.transpose(), c.transpose()
    lhs1 = at.mul(c)
    lhs2 = bt.mul(d)
    lhs3 = at.mul(d)
    rhs3 = ct.mul(b)
    third = BitMatrix(n, tuple(lhs3.rows[i] ^ rhs3.rows[i] for i in range(n)))
    return lhs1.is_symmetric() and lhs2.is_symmetric() and third.is_identity()
