"""Ground-truth engines: dense unitaries and exhaustive BFS over gate groups.

Basis convention for dense matrices: index bit q of a computational basis
state is qubit q (qubit 0 is the least significant bit).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .circuits import Circuit, Gate
from .f2 import BitMatrix, parity
from .phasepoly import PhasePolynomial, cz_pair_poly, evaluate
from .tableau import CliffordTableau

_SQRT2 = np.sqrt(2.0)

MAX_DENSE_QUBITS = 10


def dense_unitary(circuit: Circuit) -> np.ndarray:
    """Product of the gate matrices in circuit order (2^n x 2^n, complex)."""
    n = circuit.n
    if n > MAX_DENSE_QUBITS:
        raise ValueError(f"dense unitary limited to n <= {MAX_DENSE_QUBITS}")
    dim = 1 << n
    u = np.eye(dim, dtype=np.complex128)
    idx = np.arange(dim)
    for g in circuit.gates:
        if g.kind == "H":
            q = g.qubits[0]
            lo = idx[(idx >> q) & 1 == 0]
            hi = lo | (1 << q)
            a, b = u[lo].copy(), u[hi]
            u[lo] = (a + b) / _SQRT2
            u[hi] = (a - b) / _SQRT2
        elif g.kind == "P":
            q = g.qubits[0]
            hi = idx[(idx >> q) & 1 == 1]
            u[hi] *= 1j ** g.power
        elif g.kind == "CX":
            c, t = g.qubits
            sel = idx[((idx >> c) & 1 == 1) & ((idx >> t) & 1 == 0)]
            flip = sel | (1 << t)
            u[[*sel, *flip]] = u[[*flip, *sel]]
        else:  # CZ
            a, b = g.qubits
            sel = idx[((idx >> a) & 1 == 1) & ((idx >> b) & 1 == 1)]
            u[sel] *= -1.0
    return u


def unitary_equal(u: np.ndarray, v: np.ndarray, mode: str = "exact") -> bool:
    """Compare unitaries entrywise; modes 'exact' and 'up_to_global_phase'."""
    if u.shape != v.shape:
        raise ValueError("dimension mismatch")
    if mode == "exact":
        return bool(np.max(np.abs(u - v)) < 1e-6)
    if mode == "up_to_global_phase":
        return unitary_equal(_phase_normalized(u), _phase_normalized(v), "exact")
    raise ValueError(f"unknown mode {mode!r}")


def _phase_normalized(u: np.ndarray) -> np.ndarray:
    flat = u.ravel()
    nz = np.flatnonzero(np.abs(flat) > 1e-8)
    if len(nz) == 0:
        return u
    pivot = flat[nz[0]]
    return u * (abs(pivot) / pivot)


def theorem0_unitary(poly: PhasePolynomial, g: BitMatrix) -> np.ndarray:
    """The permutation-with-phases matrix |x> -> i^p(x) |g(x)>."""
    n = g.n
    dim = 1 << n
    u = np.zeros((dim, dim), dtype=np.complex128)
    for x in range(dim):
        u[g.mat_vec(x), x] = 1j ** evaluate(poly, x)
    return u


# ---------------------------------------------------------------------------
# Exhaustive BFS oracles
# ---------------------------------------------------------------------------


@dataclass
class BfsResult:
    """Exact optimal two-qubit gate counts for a gate-generated group.

    ``dist`` maps the packed canonical key of every reachable element to its
    optimal cost (a numpy array indexed by key).
    """

    label: str
    n: int
    worst_case: int
    histogram: dict[int, int]
    dist: np.ndarray = field(repr=False, default=None)

    @property
    def size(self) -> int:
        return sum(self.histogram.values())

    def cost_of_key(self, key: int) -> int:
        cost = int(self.dist[key])
        if cost == 255:
            raise KeyError(f"element {key:#x} not in the generated group")
        return cost


def pack_matrix(m: BitMatrix) -> int:
    key = 0
    for i, r in enumerate(m.rows):
        key |= r << (i * m.n)
    return key


def bfs_cz_layers(n: int) -> BfsResult:
    """BFS over CZ-layer unitaries; generators are single CZ gates (cost 1)."""
    if not 2 <= n <= 7:
        raise ValueError("CZ-layer BFS supported for 2 <= n <= 7")
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    nbits = len(pairs)
    dist = np.full(1 << nbits, 255, dtype=np.uint8)
    dist[0] = 0
    frontier = np.array([0], dtype=np.int64)
    d = 0
    while frontier.size:
        d += 1
        nxt = (frontier[:, None] ^ (1 << np.arange(nbits, dtype=np.int64))).ravel()
        nxt = np.unique(nxt)
        nxt = nxt[dist[nxt] == 255]
        dist[nxt] = d
        frontier = nxt
    counts = np.bincount(dist)
    hist = {d: int(c) for d, c in enumerate(counts) if c and d != 255}
    return BfsResult("cz", n, max(hist), hist, dist)


def bfs_linear(n: int) -> BfsResult:
    """BFS over GL(n, 2) with CNOT generators (cost 1 each), vectorized."""
    if not 2 <= n <= 5:
        raise ValueError("CNOT BFS supported for 2 <= n <= 5")
    nn = n * n
    ident = pack_matrix(BitMatrix.identity(n))
    dist = np.full(1 << nn, 255, dtype=np.uint8)
    dist[ident] = 0
    frontier = np.array([ident], dtype=np.int64)
    row_mask = (1 << n) - 1
    d = 0
    while frontier.size:
        d += 1
        batches = []
        for c in range(n):
            rows_c = (frontier >> (n * c)) & row_mask
            for t in range(n):
                if t == c:
                    continue
                batches.append(frontier ^ (rows_c << (n * t)))
        nxt = np.unique(np.concatenate(batches))
        nxt = nxt[dist[nxt] == 255]
        dist[nxt] = d
        frontier = nxt
    counts = np.bincount(dist[dist != 255])
    hist = {d: int(c) for d, c in enumerate(counts) if c}
    return BfsResult("cnot", n, max(hist), hist, dist)


def _poly_points(n: int) -> list[int]:
    return list(range(1, 1 << n))


def bfs_mixed(n: int) -> "MixedBfs":
    """Exhaustive BFS over the {P, CZ, CNOT} group (exact states).

    States are pairs (linear matrix, phase polynomial as an evaluation table
    mod 4); P gates are zero-cost edges, two-qubit gates cost 1 (0-1 BFS).
    """
    if not 2 <= n <= 3:
        raise ValueError("mixed BFS supported for 2 <= n <= 3")
    points = _poly_points(n)
    npts = len(points)
    gbits = n * n
    row_mask = (1 << n) - 1

    def rows_of(gkey: int) -> list[int]:
        return [(gkey >> (n * i)) & row_mask for i in range(n)]

    # Evaluation-table deltas for every (g, gate) pair are cheap to compute on
    # the fly for n <= 3; tables are packed 2 bits per point.
    def parity_table(mask: int) -> list[int]:
        return [parity(mask & pt) for pt in points]

    def add_tables(packed: int, delta: list[int], mult: int) -> int:
        out = 0
        for idx in range(npts):
            val = ((packed >> (2 * idx)) & 3) + mult * delta[idx]
            out |= (val & 3) << (2 * idx)
        return out

    ident = pack_matrix(BitMatrix.identity(n))
    start = (ident, 0)
    dist: dict[tuple[int, int], int] = {start: 0}
    dq: deque[tuple[int, int]] = deque([start])
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    while dq:
        state = dq.popleft()
        gkey, ptab = state
        d = dist[state]
        rows = rows_of(gkey)
        # Zero-cost P^k appends.
        for q in range(n):
            delta = parity_table(rows[q])
            for k in (1, 2, 3):
                nstate = (gkey, add_tables(ptab, delta, k))
                if nstate not in dist:
                    dist[nstate] = d
                    dq.appendleft(nstate)
        # Cost-1 CNOT appends.
        for c in range(n):
            for t in range(n):
                if c == t:
                    continue
                ng = gkey ^ (rows[c] << (n * t))
                nstate = (ng, ptab)
                if nstate not in dist:
                    dist[nstate] = d + 1
                    dq.append(nstate)
        # Cost-1 CZ appends.
        for a, b in pairs:
            delta = [
                (parity(rows[a] & pt) + parity(rows[b] & pt)
                 + 3 * parity((rows[a] ^ rows[b]) & pt)) % 4
                for pt in points
            ]
            nstate = (gkey, add_tables(ptab, delta, 1))
            if nstate not in dist:
                dist[nstate] = d + 1
                dq.append(nstate)
    return MixedBfs(n, dist)


@dataclass
class MixedBfs:
    """Distance map of the exact {P, CZ, CNOT} BFS."""

    n: int
    dist: dict[tuple[int, int], int]

    def poly_table(self, poly: PhasePolynomial) -> int:
        packed = 0
        for idx, pt in enumerate(_poly_points(self.n)):
            packed |= (evaluate(poly, pt) & 3) << (2 * idx)
        return packed

    def cost_of(self, g: BitMatrix, poly: PhasePolynomial) -> int:
        return self.dist[(pack_matrix(g), self.poly_table(poly))]

    def cost_of_cz_layer(self, edges: list[tuple[int, int]]) -> int:
        poly = PhasePolynomial.zero(self.n)
        for a, b in edges:
            poly = poly.add(cz_pair_poly(self.n, a, b))
        return self.cost_of(BitMatrix.identity(self.n), poly)

    def worst_cz_layer(self) -> int:
        pairs = [(a, b) for a in range(self.n) for b in range(a + 1, self.n)]
        worst = 0
        for mask in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if (mask >> i) & 1]
            worst = max(worst, self.cost_of_cz_layer(edges))
        return worst

    def linear_costs(self) -> dict[int, int]:
        """Cost of every pure -C- element (identity phase polynomial)."""
        out = {}
        for (gkey, ptab), d in self.dist.items():
            if ptab == 0:
                out[gkey] = d
        return out


def symplectic_closure_size(n: int) -> int:
    """BFS closure of symplectic parts from the identity tableau."""
    from .tableau import apply_gate

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
    start = CliffordTableau.identity(n)

    def key(t: CliffordTableau) -> tuple:
        return (tuple(t._xc), tuple(t._zc))

    seen = {key(start)}
    frontier = [start]
    while frontier:
        nxt = []
        for t in frontier:
            for g in gens:
                t2 = apply_gate(t, g)
                k = key(t2)
                if k not in seen:
                    seen.add(k)
                    nxt.append(t2)
        frontier = nxt
    return len(seen)
