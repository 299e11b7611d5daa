"""Synthesis of -C- stages (linear reversible functions) as CNOT circuits.

Two backends: unrestricted Gaussian elimination, and an LNN backend built
from odd-even sweeps of neighbour row operations (sort rows by leading bit,
then absorb below-diagonal junk, climbing rows to their sources by swaps).
The LNN backend tries a small portfolio of symmetry-related schedules and
keeps the shallowest circuit; the exact qubit reversal short-circuits to the
stage-S network, which meets depth 2n + 2.
"""

from __future__ import annotations

from .circuits import Circuit, Gate, invert_circuit, two_qubit_depth
from .f2 import BitMatrix


def compose(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Matrix of applying a then b: b @ a under the row convention."""
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    return b.mul(a)


def circuit_matrix(circuit: Circuit) -> BitMatrix:
    """Linear part of a CNOT-only circuit (wire-mask matrix)."""
    state = [1 << i for i in range(circuit.n)]
    for g in circuit.gates:
        if g.kind != "CX":
            raise ValueError("circuit_matrix expects a CNOT-only circuit")
        c, t = g.qubits
        state[t] ^= state[c]
    return BitMatrix(circuit.n, tuple(state))


def synth_cnot_gauss(g: BitMatrix) -> Circuit:
    """Gaussian-elimination CNOT synthesis; at most n^2 gates.

    Columns are processed lowest index first; each column gets a pivot fix
    (add a lower row upward) and then full clearing of the other rows.
    """
    n = g.n
    rows = list(g.rows)
    ops: list[tuple[int, int]] = []  # row_t ^= row_c, in reduction order

    def op(c: int, t: int) -> None:
        rows[t] ^= rows[c]
        ops.append((c, t))

    for col in range(n):
        if not (rows[col] >> col) & 1:
            src = next(
                (i for i in range(col + 1, n) if (rows[i] >> col) & 1), None
            )
            if src is None:
                raise ValueError("singular matrix")
            op(src, col)
        for i in range(n):
            if i != col and (rows[i] >> col) & 1:
                op(col, i)
    # Ops e_k .. e_1 reduce g to I, so g equals e_1 ... e_k; emitting the
    # recorded ops in reverse realizes g.
    gates = tuple(Gate.cx(c, t) for c, t in reversed(ops))
    return Circuit(n, gates)


# ---------------------------------------------------------------------------
# LNN backend
# ---------------------------------------------------------------------------

_MAX_SWEEPS_FACTOR = 64


def _bubble_reduce(g: BitMatrix) -> list[tuple[int, int]]:
    """Reduce g to the identity with adjacent row operations.

    Returns the op list (c, t) in reduction order; |c - t| = 1 throughout.
    Sweeps alternate box parities.  Box rules on rows (u, v) at (i, i+1):
    equal leading bits combine; an inversion rotates in two ops; a row whose
    remaining junk sits above absorbs from its neighbour when the neighbour
    is the source, else swaps upward to chase it.
    """
    n = g.n
    rows = list(g.rows)
    ops: list[tuple[int, int]] = []

    def op(c: int, t: int) -> None:
        rows[t] ^= rows[c]
        ops.append((c, t))

    def junk_top(i: int) -> int:
        """Highest set bit of row i below its leading bit; -1 when clean."""
        r = rows[i] ^ (1 << (rows[i].bit_length() - 1))
        return r.bit_length() - 1

    done = BitMatrix.identity(n).rows
    parity = 0
    for _ in range(_MAX_SWEEPS_FACTOR * n + 16):
        if tuple(rows) == done:
            return ops
        for i in range(parity, n - 1, 2):
            u, v = rows[i], rows[i + 1]
            tu, tv = u.bit_length(), v.bit_length()
            if tu == tv:
                op(i + 1, i)  # row_i := u ^ v, the smaller leading bit on top
            elif tu > tv:
                if u == 1 << (tu - 1):
                    # Swap a clean unit row down so it stays clean.
                    op(i, i + 1)
                    op(i + 1, i)
                    op(i, i + 1)
                else:
                    op(i, i + 1)  # (u, v) -> (v, u ^ v): sorted leading bits
                    op(i + 1, i)
            else:
                jt = junk_top(i + 1)
                if jt == i and tu == i + 1:
                    op(i, i + 1)  # absorb: the source row sits right above
                elif 0 <= jt < i:
                    # Swap upward to chase the junk's source.
                    op(i, i + 1)
                    op(i + 1, i)
                    op(i, i + 1)
        parity ^= 1
    raise AssertionError("bubble reduction failed to terminate")


def _ops_to_circuit(n: int, ops: list[tuple[int, int]]) -> Circuit:
    return Circuit(n, tuple(Gate.cx(c, t) for c, t in reversed(ops)))


def _mirror(g: BitMatrix) -> BitMatrix:
    r = BitMatrix.reversal(g.n)
    return r.mul(g).mul(r)


def _lnn_candidates(g: BitMatrix):
    n = g.n
    yield _ops_to_circuit(n, _bubble_reduce(g))
    # Mirror the wire labels, synthesize, mirror back.
    mirrored = _ops_to_circuit(n, _bubble_reduce(_mirror(g)))
    yield Circuit(
        n,
        tuple(
            Gate.cx(n - 1 - g_.qubits[0], n - 1 - g_.qubits[1])
            for g_ in mirrored.gates
        ),
    )
    # Synthesize the inverse and invert the circuit.
    yield invert_circuit(_ops_to_circuit(n, _bubble_reduce(g.inverse())))
    yield invert_circuit(
        Circuit(
            n,
            tuple(
                Gate.cx(n - 1 - g_.qubits[0], n - 1 - g_.qubits[1])
                for g_ in _ops_to_circuit(
                    n, _bubble_reduce(_mirror(g.inverse()))
                ).gates
            ),
        )
    )


def synth_cnot_lnn(g: BitMatrix) -> Circuit:
    """LNN-valid CNOT circuit for g with two-qubit depth <= 5n."""
    n = g.n
    if g.rank() != n:
        raise ValueError("singular matrix")
    if g.is_identity():
        return Circuit(n)
    if n >= 2 and g == BitMatrix.reversal(n):
        from .czsynth import reversal_network

        return reversal_network(n)
    best = None
    best_depth = None
    for cand in _lnn_candidates(g):
        if circuit_matrix(cand) != g:
            raise AssertionError("LNN candidate failed verification")
        d = two_qubit_depth(cand)
        if best_depth is None or d < best_depth:
            best, best_depth = cand, d
    return best


# ---------------------------------------------------------------------------
# Matrix text format
# ---------------------------------------------------------------------------


def parse_matrix(text: str) -> BitMatrix:
    """First line n, then n rows of n characters over {0, 1}."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    n = int(lines[0])
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        if len(ln) != n or set(ln) - {"0", "1"}:
            raise ValueError(f"bad matrix row {ln!r}")
        rows.append(int(ln[::-1], 2))  # leftmost character is column 0
    return BitMatrix(n, tuple(rows))


def format_matrix(m: BitMatrix) -> str:
    lines = [str(m.n)]
    for r in m.rows:
        lines.append(format(r, f"0{m.n}b")[::-1])
    return "\n".join(lines) + "\n"
