"""Synthesis of -CZ- stages, plain and optimized, and the LNN reversal-CZ.

The reversal-CZ network is a sequence of depth-4 CNOT blocks (stage S = S1
then S2) on a line of qubits.  Applying S repeatedly sweeps every interval
function x_j ^ ... ^ x_k across the wires exactly once while reversing the
qubit order, so Phase gates inserted where a label surfaces realize any
weight-<=2 phase polynomial over the prefix-XOR basis y_1..y_n.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .circuits import Circuit, Gate, invert_circuit
from .f2 import BitMatrix
from .phasepoly import PhasePolynomial


@dataclass(frozen=True)
class CZLayer:
    """A -CZ- stage: the set of qubit pairs receiving a CZ."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        norm = frozenset((min(a, b), max(a, b)) for a, b in self.edges)
        object.__setattr__(self, "edges", norm)
        for a, b in norm:
            if a == b or not (0 <= a < self.n and 0 <= b < self.n):
                raise ValueError("bad edge")

    @staticmethod
    def complete(n: int) -> CZLayer:
        return CZLayer(n, frozenset((a, b) for a in range(n) for b in range(a + 1, n)))


@dataclass(frozen=True, order=True)
class IntervalLabel:
    """The linear function x_j ^ x_{j+1} ^ ... ^ x_k, 1-based, j <= k."""

    j: int
    k: int

    def __post_init__(self):
        if not 1 <= self.j <= self.k:
            raise ValueError("interval needs 1 <= j <= k")

    def mask(self) -> int:
        """0-based bitmask of the variables in the interval."""
        return ((1 << self.k) - 1) ^ ((1 << (self.j - 1)) - 1)


def _mask_to_interval(mask: int) -> IntervalLabel:
    lo = (mask & -mask).bit_length()
    hi = mask.bit_length()
    if mask != ((1 << hi) - 1) ^ ((1 << (lo - 1)) - 1):
        raise ValueError(f"mask {mask:b} is not an interval")
    return IntervalLabel(lo, hi)


def synth_cz_plain(layer: CZLayer) -> Circuit:
    """One CZ per edge in lexicographic order."""
    return Circuit(layer.n, tuple(Gate.cz(a, b) for a, b in sorted(layer.edges)))


def synth_cz_optimized(layer: CZLayer) -> Circuit:
    """Rewrite a CZ layer over {P, CZ, CNOT} using the double-star identity.

    Two centers a, b with a common neighborhood L (|L| + [ab in E] >= 3) are
    served by CNOT(a,b) [star of b over L, plus whatever else avoids b]
    CNOT(a,b), with P(a) P(b) ... Pdg(b) absorbing the (a, b) edge.  Applied
    greedily and recursively; never uses more two-qubit gates than one CZ
    per edge.
    """
    gates = _rewrite_edges(layer.n, set(layer.edges))
    return Circuit(layer.n, tuple(gates))


def _rewrite_edges(n: int, edges: set[tuple[int, int]]) -> list[Gate]:
    if not edges:
        return []
    adj: dict[int, set[int]] = {q: set() for q in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    best = None
    for a in range(n):
        for b in range(a + 1, n):
            common = adj[a] & adj[b] - {a, b}
            score = len(common) + (1 if (a, b) in edges else 0)
            if score > 2 and (best is None or score > best[0]):
                best = (score, a, b, sorted(common))
    if best is None:
        return [Gate.cz(a, b) for a, b in sorted(edges)]
    _, a, b, common = best
    has_edge = (a, b) in edges
    covered = {(min(a, c), max(a, c)) for c in common}
    covered |= {(min(b, c), max(b, c)) for c in common}
    if has_edge:
        covered.add((a, b))
    rest = edges - covered
    inner = {e for e in rest if b not in e}
    inner |= {(min(b, c), max(b, c)) for c in common}
    outer = {e for e in rest if b in e}
    gates: list[Gate] = []
    if has_edge:
        gates.append(Gate.p(a))
        gates.append(Gate.p(b))
    gates.append(Gate.cx(a, b))
    if has_edge:
        gates.append(Gate.pdg(b))
    gates.extend(_rewrite_edges(n, inner))
    gates.append(Gate.cx(a, b))
    gates.extend(_rewrite_edges(n, outer))
    return gates


# ---------------------------------------------------------------------------
# Stage S and the reversal network
# ---------------------------------------------------------------------------


def stage_s_gates(n: int) -> list[Gate]:
    """The depth-4 CNOT block S = S1 . S2 (0-based translation of the paper)."""
    return _s1_gates(n) + _s2_gates(n)


def _s1_gates(n: int) -> list[Gate]:
    gates = []
    if n % 2:
        gates += [Gate.cx(c, c + 1) for c in range(0, n - 2, 2)]
        gates += [Gate.cx(c, c - 1) for c in range(2, n, 2)]
    else:
        gates += [Gate.cx(c, c + 1) for c in range(0, n - 1, 2)]
        gates += [Gate.cx(c, c - 1) for c in range(2, n - 1, 2)]
    return gates


def _s2_gates(n: int) -> list[Gate]:
    gates = []
    if n % 2:
        gates += [Gate.cx(c, c - 1) for c in range(1, n - 1, 2)]
        gates += [Gate.cx(c, c + 1) for c in range(1, n - 1, 2)]
    else:
        gates += [Gate.cx(c, c - 1) for c in range(1, n, 2)]
        gates += [Gate.cx(c, c + 1) for c in range(1, n - 2, 2)]
    return gates


def _apply_block(state: list[int], gates: list[Gate]) -> None:
    for g in gates:
        c, t = g.qubits
        state[t] ^= state[c]


def stage_s_matrix(n: int) -> BitMatrix:
    state = [1 << i for i in range(n)]
    _apply_block(state, stage_s_gates(n))
    return BitMatrix(n, tuple(state))


def _hat_blocks(n: int) -> list[list[Gate]]:
    """Block list of the reversal network: S repeated, plus S1 for even n."""
    if n % 2:
        return [stage_s_gates(n) for _ in range((n - 1) // 2 + 1)]
    return [stage_s_gates(n) for _ in range(n // 2)] + [_s1_gates(n)]


def reversal_network(n: int) -> Circuit:
    """The phase-free qubit-reversal circuit, two-qubit depth <= 2n + 2."""
    gates: list[Gate] = []
    for block in _hat_blocks(n):
        gates.extend(block)
    return Circuit(n, tuple(gates))


def interval_schedule(n: int, t: int) -> list[IntervalLabel]:
    """Wire labels after t applications of stage S (t = 0: [i, i] per wire)."""
    if n < 2:
        raise ValueError("schedule needs n >= 2")
    if not 0 <= t <= (n + 1) // 2:
        raise ValueError(f"t out of range 0..{(n + 1) // 2}")
    state = [1 << i for i in range(n)]
    s = stage_s_gates(n)
    for _ in range(t):
        _apply_block(state, s)
    return [_mask_to_interval(m) for m in state]


def schedule_coverage(n: int):
    """Yield (slot, wire, label) with every interval surfacing exactly once.

    Slots are the boundaries of the full reversal network at which labels
    are read off; repeat appearances of a label (the even-n singles at the
    last S boundary, and the reversed singles at the very end) are skipped.
    """
    seen: set[IntervalLabel] = set()
    for slot, state in enumerate(_network_states(n, _hat_blocks(n), None)):
        for wire, mask in enumerate(state.rows):
            label = _mask_to_interval(mask)
            if label not in seen:
                seen.add(label)
                yield slot, wire, label


def _network_states(n: int, blocks: list[list[Gate]], pre: BitMatrix | None):
    """Wire-mask matrices at every boundary of the block network."""
    state = list((pre or BitMatrix.identity(n)).rows)
    out = [BitMatrix(n, tuple(state))]
    for block in blocks:
        _apply_block(state, block)
        out.append(BitMatrix(n, tuple(state)))
    return out


@dataclass(frozen=True)
class CzHatResult:
    """A reversal-CZ circuit plus the linear deficits of omitted boundaries.

    The contract is  pre . circuit . post  ==  reversal o diagonal, where
    pre/post are CNOT-stage matrices to be merged into the neighbouring -C-
    stages (identity when the corresponding boundary S was not omitted).
    """

    circuit: Circuit
    pre_matrix: BitMatrix
    post_matrix: BitMatrix


def y_basis_poly(poly_x: PhasePolynomial) -> PhasePolynomial:
    """Rewrite an x-basis polynomial over the prefix basis y_j = x_1^..^x_j."""
    return PhasePolynomial.from_terms(
        poly_x.n, ((m ^ (m >> 1), c) for m, c in poly_x.terms.items())
    )


def _y_term_to_interval(mask: int) -> IntervalLabel:
    if mask.bit_count() == 1:
        return IntervalLabel(1, mask.bit_length())
    lo = (mask & -mask).bit_length()
    hi = mask.bit_length()
    return IntervalLabel(lo + 1, hi)


def _reverse_interval_poly(n: int, terms: dict[IntervalLabel, int]) -> dict[IntervalLabel, int]:
    """Interval terms of p'(x) = -p(x_n .. x_1), used by the inversion trick."""
    return {
        IntervalLabel(n + 1 - lab.k, n + 1 - lab.j): (4 - u) % 4
        for lab, u in terms.items()
    }


def synth_czhat_lnn(
    poly_y: PhasePolynomial,
    omit_first_s: bool = False,
    omit_last_s: bool = False,
) -> CzHatResult:
    """LNN circuit for qubit reversal composed with a diagonal phase.

    ``poly_y`` is the diagonal's phase polynomial over the y basis, every
    mask of weight <= 2.  Phase gates are inserted at the earliest boundary
    where each term's interval label surfaces.  Omitting the first (last) S
    drops 4 two-qubit layers and reports the dropped block's matrix in
    ``pre_matrix`` (``post_matrix``) for merging into the adjacent -C- stage.
    """
    n = poly_y.n
    if n < 2:
        raise ValueError("reversal-CZ needs n >= 2")
    if poly_y.max_weight() > 2:
        raise ValueError("polynomial has a term of weight > 2 in the y basis")
    terms = {_y_term_to_interval(m): c for m, c in poly_y.terms.items()}
    return _synth_hat_intervals(n, terms, omit_first_s, omit_last_s)


def _synth_hat_intervals(
    n: int,
    terms: dict[IntervalLabel, int],
    omit_first_s: bool,
    omit_last_s: bool,
) -> CzHatResult:
    if omit_last_s and n % 2 == 0:
        if omit_first_s:
            raise ValueError("cannot omit both boundary S blocks for even n")
        # Build the inverse unitary with its first S omitted, then invert the
        # circuit; the dropped S resurfaces as a trailing S^-1 block.
        rev = _synth_hat_intervals(
            n, _reverse_interval_poly(n, terms), omit_first_s=True, omit_last_s=False
        )
        return CzHatResult(
            invert_circuit(rev.circuit),
            BitMatrix.identity(n),
            stage_s_matrix(n).inverse(),
        )
    blocks = _hat_blocks(n)
    pre = post = BitMatrix.identity(n)
    if omit_first_s:
        blocks = blocks[1:]
        pre = stage_s_matrix(n)
    if omit_last_s:
        blocks = blocks[:-1]
        post = stage_s_matrix(n)
    states = _network_states(n, blocks, pre if omit_first_s else None)
    first_slot: dict[IntervalLabel, tuple[int, int]] = {}
    for slot, state in enumerate(states):
        for wire, mask in enumerate(state.rows):
            label = _mask_to_interval(mask)
            first_slot.setdefault(label, (slot, wire))
    insertions: dict[int, list[Gate]] = {}
    for label, coeff in sorted(terms.items()):
        if label not in first_slot:
            raise ValueError(
                f"interval {label} has no surviving boundary in the trimmed network"
            )
        slot, wire = first_slot[label]
        insertions.setdefault(slot, []).append(Gate.p(wire, coeff))
    gates: list[Gate] = []
    for slot in range(len(blocks) + 1):
        gates.extend(sorted(insertions.get(slot, []), key=lambda g: g.qubits))
        if slot < len(blocks):
            gates.extend(blocks[slot])
    return CzHatResult(Circuit(n, tuple(gates)), pre, post)
