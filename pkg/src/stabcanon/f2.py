"""Linear algebra over F2 with rows packed into python ints.

Bit j of a row int is column j.  All matrices are square unless noted.
The row convention throughout the package: row i of a wire matrix is the
Boolean linear function carried by wire i.
"""

from __future__ import annotations

from dataclasses import dataclass


def parity(x: int) -> int:
    return x.bit_count() & 1


@dataclass(frozen=True)
class BitMatrix:
    """An n x m binary matrix; rows[i] holds row i, bit j = entry (i, j)."""

    n: int  # number of columns
    rows: tuple[int, ...]

    def __post_init__(self):
        mask = (1 << self.n) - 1
        for r in self.rows:
            if r & ~mask:
                raise ValueError("row wider than declared column count")

    @staticmethod
    def identity(n: int) -> BitMatrix:
        return BitMatrix(n, tuple(1 << i for i in range(n)))

    @staticmethod
    def zero(n: int, m: int | None = None) -> BitMatrix:
        return BitMatrix(n, (0,) * (m if m is not None else n))

    @staticmethod
    def reversal(n: int) -> BitMatrix:
        return BitMatrix(n, tuple(1 << (n - 1 - i) for i in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def mul(self, other: BitMatrix) -> BitMatrix:
        """Matrix product self @ other."""
        if self.n != other.nrows:
            raise ValueError("dimension mismatch")
        out = []
        for r in self.rows:
            acc = 0
            j = 0
            while r:
                if r & 1:
                    acc ^= other.rows[j]
                r >>= 1
                j += 1
            out.append(acc)
        return BitMatrix(other.n, tuple(out))

    def transpose(self) -> BitMatrix:
        cols = [0] * self.n
        for i, r in enumerate(self.rows):
            while r:
                j = (r & -r).bit_length() - 1
                cols[j] |= 1 << i
                r &= r - 1
        return BitMatrix(self.nrows, tuple(cols))

    def rank(self) -> int:
        basis: list[int] = []
        for r in self.rows:
            for b in basis:
                r = min(r, r ^ b)
            if r:
                basis.append(r)
                basis.sort(reverse=True)
        return len(basis)

    def is_identity(self) -> bool:
        return self.nrows == self.n and all(
            r == (1 << i) for i, r in enumerate(self.rows)
        )

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.rows)

    def diagonal(self) -> int:
        return sum(((r >> i) & 1) << i for i, r in enumerate(self.rows))

    def inverse(self) -> BitMatrix:
        """Gauss-Jordan inverse; raises ValueError on singular input."""
        if self.nrows != self.n:
            raise ValueError("inverse of non-square matrix")
        n = self.n
        rows = list(self.rows)
        aug = list(BitMatrix.identity(n).rows)
        for col in range(n):
            piv = next(
                (i for i in range(col, n) if (rows[i] >> col) & 1), None
            )
            if piv is None:
                raise ValueError("singular matrix")
            rows[col], rows[piv] = rows[piv], rows[col]
            aug[col], aug[piv] = aug[piv], aug[col]
            for i in range(n):
                if i != col and (rows[i] >> col) & 1:
                    rows[i] ^= rows[col]
                    aug[i] ^= aug[col]
        return BitMatrix(n, tuple(aug))

    def mat_vec(self, v: int) -> int:
        """Column-vector product: bit i of result = parity(row_i & v)."""
        out = 0
        for i, r in enumerate(self.rows):
            out |= parity(r & v) << i
        return out

    def solve(self, b: int) -> int:
        """Solve self @ x = b for the column vector x (self invertible)."""
        return self.inverse().mat_vec(b)


def vec_mat(v: int, m: BitMatrix) -> int:
    """Row-vector product v @ m: XOR of the rows of m selected by v."""
    acc = 0
    i = 0
    while v:
        if v & 1:
            acc ^= m.rows[i]
        v >>= 1
        i += 1
    return acc


def complete_basis(rows: list[int], n: int) -> BitMatrix:
    """Extend independent rows to an invertible n x n matrix.

    The given rows are kept verbatim (in order) as the leading rows; unit
    vectors fill the remaining rows, lowest index first.
    """
    basis: list[int] = []

    def reduce(r: int) -> int:
        for b in basis:
            r = min(r, r ^ b)
        return r

    out = list(rows)
    for r in rows:
        red = reduce(r)
        if red == 0:
            raise ValueError("rows are dependent")
        basis.append(red)
        basis.sort(reverse=True)
    for j in range(n):
        if len(out) == n:
            break
        red = reduce(1 << j)
        if red:
            out.append(1 << j)
            basis.append(red)
            basis.sort(reverse=True)
    if len(out) != n:
        raise ValueError("could not complete basis")
    return BitMatrix(n, tuple(out))


def gram_split(w: BitMatrix) -> tuple[int, list[int]]:
    """Split a symmetric matrix as W = D + V^T V over F2.

    D is returned as a diagonal bitmask, V as a list of independent rows.
    Greedy pivoting: while W is nonzero pick the lowest-index nonzero row,
    flip its diagonal entry into D if needed to make it a pivot, then clear
    the pivot row and column with a rank-one update.
    """
    if not w.is_symmetric():
        raise ValueError("gram_split needs a symmetric matrix")
    n = w.n
    rows = list(w.rows)
    d = 0
    vees: list[int] = []
    while True:
        q = next((i for i in range(n) if rows[i]), None)
        if q is None:
            break
        if not (rows[q] >> q) & 1:
            d |= 1 << q
            rows[q] ^= 1 << q
            if rows[q] == 0:
                continue
        v = rows[q]
        vees.append(v)
        for i in range(n):
            if (v >> i) & 1:
                rows[i] ^= v
    return d, vees


def select_mixed_basis(x: BitMatrix, y: BitMatrix) -> int:
    """Pick J so that taking column j from y (j in J) else from x is invertible.

    Requires [x | y] to have full row rank n and x @ y^T symmetric; both hold
    for the A/C blocks of a symplectic matrix, which is the only caller.
    Returns J as a bitmask of column indices.
    """
    n = x.n
    # Row-reduce x, applying the same operations to y.
    xr = list(x.rows)
    yr = list(y.rows)
    k = 0
    for col in range(n):
        piv = next((i for i in range(k, n) if (xr[i] >> col) & 1), None)
        if piv is None:
            continue
        xr[k], xr[piv] = xr[piv], xr[k]
        yr[k], yr[piv] = yr[piv], yr[k]
        for i in range(n):
            if i != k and (xr[i] >> col) & 1:
                xr[i] ^= xr[k]
                yr[i] ^= yr[k]
        k += 1
    # Rows k..n-1 of the reduced x vanish; the matching y rows have full rank
    # n - k.  Any pivot set of those rows works thanks to code duality.
    j_mask = 0
    basis: list[int] = []
    for i in range(k, n):
        r = yr[i]
        for b in basis:
            r = min(r, r ^ b)
        if r == 0:
            raise ValueError("inputs violate the rank precondition")
        basis.append(r)
        basis.sort(reverse=True)
        j_mask |= 1 << (r.bit_length() - 1)
    # Sanity: the mixed selection must be invertible.
    cols_x = x.transpose()
    cols_y = y.transpose()
    chosen = [
        cols_y.rows[j] if (j_mask >> j) & 1 else cols_x.rows[j]
        for j in range(n)
    ]
    if BitMatrix(x.nrows, tuple(chosen)).rank() != n:
        raise AssertionError("mixed basis selection failed")
    return j_mask
