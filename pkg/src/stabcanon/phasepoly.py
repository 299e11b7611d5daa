"""Phase polynomials over Z4 and the folding of (-P-C-)^m computations.

A polynomial maps nonzero n-bit masks to coefficients in Z4; mask m stands
for the Boolean linear function XOR of the variables in m.  Together with a
linear reversible matrix g it describes any {P, Z, CNOT, CZ} circuit exactly:
C|x> = i^p(x) |g(x)>.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .circuits import Circuit, Gate
from .f2 import BitMatrix, parity, vec_mat

FOLD_MAX_QUBITS = 16


@dataclass(frozen=True)
class PhasePolynomial:
    """Map from nonzero masks to Z4 coefficients; zero coefficients dropped."""

    n: int
    terms: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        for mask, coeff in self.terms.items():
            if mask <= 0 or mask >> self.n:
                raise ValueError(f"mask {mask:#x} out of range for n={self.n}")
            if coeff % 4 == 0:
                raise ValueError("zero coefficient stored")

    @staticmethod
    def zero(n: int) -> PhasePolynomial:
        return PhasePolynomial(n, {})

    @staticmethod
    def from_terms(n: int, items) -> PhasePolynomial:
        acc: dict[int, int] = {}
        for mask, coeff in items:
            c = (acc.get(mask, 0) + coeff) % 4
            if c:
                acc[mask] = c
            else:
                acc.pop(mask, None)
        return PhasePolynomial(n, acc)

    def add(self, other: PhasePolynomial) -> PhasePolynomial:
        if self.n != other.n:
            raise ValueError("mixed qubit counts")
        return PhasePolynomial.from_terms(
            self.n, list(self.terms.items()) + list(other.terms.items())
        )

    def max_weight(self) -> int:
        return max((m.bit_count() for m in self.terms), default=0)

    def substitute(self, basis_change: BitMatrix) -> PhasePolynomial:
        """Replace each mask m by m @ basis_change (row-vector convention)."""
        return PhasePolynomial.from_terms(
            basis_change.n,
            ((vec_mat(m, basis_change), c) for m, c in self.terms.items()),
        )

    def __iter__(self):
        return iter(sorted(self.terms.items()))


def evaluate(poly: PhasePolynomial, assignment: int) -> int:
    """Sum of coeff * parity(mask & assignment) mod 4."""
    total = 0
    for mask, coeff in poly.terms.items():
        total += coeff * parity(mask & assignment)
    return total % 4


def cz_pair_poly(n: int, a: int, b: int) -> PhasePolynomial:
    """The CZ(a, b) phase polynomial x_a + x_b + 3 (x_a xor x_b)."""
    ma, mb = 1 << a, 1 << b
    return PhasePolynomial.from_terms(n, [(ma, 1), (mb, 1), (ma ^ mb, 3)])


def extract(circuit: Circuit) -> tuple[PhasePolynomial, BitMatrix]:
    """Phase polynomial and linear part of an H-free circuit.

    Sweeps left to right keeping the mask carried by each wire; P^k adds
    k * mask(w), CZ adds the pair polynomial over the current masks, CNOT
    updates the target mask.
    """
    n = circuit.n
    masks = [1 << i for i in range(n)]
    acc: dict[int, int] = {}

    def bump(mask: int, coeff: int) -> None:
        c = (acc.get(mask, 0) + coeff) % 4
        if c:
            acc[mask] = c
        else:
            acc.pop(mask, None)

    for g in circuit.gates:
        if g.kind == "H":
            raise ValueError("extract requires an H-free circuit")
        if g.kind == "P":
            bump(masks[g.qubits[0]], g.power)
        elif g.kind == "CX":
            c, t = g.qubits
            masks[t] ^= masks[c]
        else:  # CZ
            a, b = g.qubits
            bump(masks[a], 1)
            bump(masks[b], 1)
            bump(masks[a] ^ masks[b], 3)
    return PhasePolynomial(n, acc), BitMatrix(n, tuple(masks))


def fold(poly: PhasePolynomial) -> PhasePolynomial:
    """Reduce every mask to weight <= 2 by the cascade of 6-term rewrites.

    Step s (s = n down to 3) replaces each weight-s term u*(a xor b xor c)
    by 3u*(a + b + c + (a xor b) + (a xor c) + (b xor c)) where a and b are
    the two lowest-index literals and c the rest, consolidating after each
    rewrite.  Exponential in the worst case; capped at n <= 16.
    """
    if poly.n > FOLD_MAX_QUBITS:
        raise ValueError(f"fold is capped at n <= {FOLD_MAX_QUBITS}")
    acc = dict(poly.terms)

    def bump(mask: int, coeff: int) -> None:
        c = (acc.get(mask, 0) + coeff) % 4
        if c:
            acc[mask] = c
        else:
            acc.pop(mask, None)

    for s in range(poly.n, 2, -1):
        for mask in sorted(m for m in acc if m.bit_count() == s):
            coeff = acc.get(mask, 0)
            if not coeff:
                continue
            del acc[mask]
            a = mask & -mask
            rest = mask ^ a
            b = rest & -rest
            c = rest ^ b
            u = (3 * coeff) % 4
            for part in (a, b, c, a ^ b, a ^ c, b ^ c):
                bump(part, u)
    return PhasePolynomial(poly.n, acc)


def weight_le2_form(poly: PhasePolynomial) -> PhasePolynomial:
    """Closed-form weight-<=2 representative, pointwise equal to the input.

    Valid whenever the input describes the diagonal of a Clifford unitary
    (always true for polynomials extracted from {P, Z, CNOT, CZ} circuits);
    raises ValueError when the weight-<=2 reconstruction is inconsistent.
    Coefficients are canonical: pair terms carry coefficient 1 or 3 (a pair
    coefficient of 2 is pushed into the two singles).
    """
    n = poly.n
    singles = [evaluate(poly, 1 << j) for j in range(n)]
    pair_coeff: dict[int, int] = {}
    pair_at: list[list[int]] = [[0] * n for _ in range(n)]
    for j in range(n):
        for k in range(j + 1, n):
            val = evaluate(poly, (1 << j) | (1 << k))
            r = (singles[j] + singles[k] - val) % 4
            if r & 1:
                raise ValueError("polynomial has no weight-<=2 form")
            u = r >> 1  # coefficient mod 2 of the pair term
            if u:
                pair_coeff[(1 << j) | (1 << k)] = 1
            pair_at[j][k] = pair_at[k][j] = u
    items: list[tuple[int, int]] = []
    for j in range(n):
        borrow = sum(pair_at[j]) % 4
        c = (singles[j] - borrow) % 4
        if c:
            items.append((1 << j, c))
    items.extend(pair_coeff.items())
    return PhasePolynomial.from_terms(n, items)


def diagonal_gates(poly: PhasePolynomial, wires: list[int] | None = None) -> list[Gate]:
    """Gates realizing a weight-<=2 polynomial over the given wires.

    Weight-1 term u*x_j becomes P^u; a pair term with u = 2 becomes Z Z and
    with odd u becomes P^u P^u CZ.
    """
    n = poly.n
    if wires is None:
        wires = list(range(n))
    gates: list[Gate] = []
    for mask, coeff in sorted(poly.terms.items(), key=lambda t: (t[0].bit_count(), t[0])):
        w = mask.bit_count()
        if w == 1:
            q = wires[mask.bit_length() - 1]
            gates.append(Gate.p(q, coeff))
        elif w == 2:
            j = (mask & -mask).bit_length() - 1
            k = mask.bit_length() - 1
            a, b = wires[j], wires[k]
            if coeff == 2:
                gates.append(Gate.z(a))
                gates.append(Gate.z(b))
            else:
                gates.append(Gate.p(a, coeff))
                gates.append(Gate.p(b, coeff))
                gates.append(Gate.cz(a, b))
        else:
            raise ValueError("polynomial has a term of weight > 2")
    return gates


def synthesize_pczc(
    poly: PhasePolynomial, g: BitMatrix, linear_backend=None
) -> Circuit:
    """Emit the -P-CZ-C- circuit of a weight-<=2 polynomial and linear part."""
    return reexpress(poly, g, "pczc", linear_backend)


_ORDERS = ("pczc", "cpcz", "czpc", "cczp")


def reexpress(
    poly: PhasePolynomial, g: BitMatrix, order: str, linear_backend=None
) -> Circuit:
    """Write (poly, g) as a circuit in one of the four stage orders.

    Orders with the linear stage last ("pczc", "czpc") use poly as given;
    orders with the linear stage first rewrite the polynomial over the output
    wire functions by substituting masks through g^-1 and re-reducing.
    """
    if order not in _ORDERS:
        raise ValueError(f"order must be one of {_ORDERS}")
    if linear_backend is None:
        from .linear import synth_cnot_gauss

        linear_backend = synth_cnot_gauss
    n = g.n
    c_first = order in ("cpcz", "cczp")
    diag = poly
    if c_first:
        diag = weight_le2_form(poly.substitute(g.inverse()))
    if diag.max_weight() > 2:
        raise ValueError("polynomial has a term of weight > 2")
    p_gates = [gt for gt in diagonal_gates(diag) if gt.kind == "P"]
    cz_gates = [gt for gt in diagonal_gates(diag) if gt.kind == "CZ"]
    # A pair term's P gates belong with its CZ; regroup without reordering
    # effects (all diagonal gates commute).
    linear = linear_backend(g).gates
    blocks = {
        "pczc": (p_gates, cz_gates, linear),
        "czpc": (cz_gates, p_gates, linear),
        "cpcz": (linear, p_gates, cz_gates),
        "cczp": (linear, cz_gates, p_gates),
    }[order]
    gates: list[Gate] = []
    for block in blocks:
        gates.extend(block)
    return Circuit(n, tuple(gates))


def dump_poly(poly: PhasePolynomial) -> str:
    """Golden-test format: 'coeff mask-as-binary' lines sorted by mask."""
    lines = [
        f"{coeff} {mask:0{poly.n}b}" for mask, coeff in sorted(poly.terms.items())
    ]
    return "\n".join(lines) + ("\n" if lines else "")
