"""Exact linear algebra over the integers.

Everything runs on Python's arbitrary-precision ints; intermediate entries
of a Smith reduction may blow up well past machine words and that is fine.
The Smith normal form is the single engine behind integer solving, kernel
computation, and cokernel presentations used by the rest of the library.

Pivoting is deterministic: the smallest nonzero absolute value wins, ties
broken by lowest (row, col) index, so decompositions are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import ValidationError


@dataclass(frozen=True)
class IntMatrix:
    """Immutable rectangular integer matrix (row-major tuple of tuples).

    The shape is stored explicitly so that 0xN and Nx0 matrices keep
    track of the ambient dimension.
    """

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        ent = tuple(tuple(int(x) for x in row) for row in self.entries)
        if len(ent) != self.rows or any(len(r) != self.cols for r in ent):
            raise ValidationError("matrix entries do not match declared shape")
        object.__setattr__(self, "entries", ent)

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [tuple(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValidationError("cols is required for a 0-row matrix")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, m, n):
        return cls(m, n, tuple(tuple(0 for _ in range(n)) for _ in range(m)))

    @classmethod
    def diagonal(cls, diag, m=None, n=None):
        m = len(diag) if m is None else m
        n = len(diag) if n is None else n
        return cls(m, n, tuple(tuple(diag[i] if (i == j and i < len(diag)) else 0
                                     for j in range(n)) for i in range(m)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def col(self, j):
        return tuple(r[j] for r in self.entries)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValidationError("matrix product shape mismatch")
        ot = other.transpose().entries
        ent = tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in ot)
                    for r in self.entries)
        return IntMatrix(self.rows, other.cols, ent)

    def apply(self, vec):
        """Matrix-vector product (column-vector convention)."""
        if len(vec) != self.cols:
            raise ValidationError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self.entries)

    def transpose(self):
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.entries[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def det(self):
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValidationError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(r) for r in self.entries]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self):
        return self.rows == self.cols and self.det() in (1, -1)


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ A @ V == D with U, V unimodular and D diagonal nonnegative,
    each diagonal entry dividing the next."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    original_shape: tuple

    @property
    def diagonal(self):
        m, n = self.original_shape
        return tuple(self.D[i, i] for i in range(min(m, n)))

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self):
        return tuple(d for d in self.diagonal if d != 0)


def smith_normal_form(A: IntMatrix, want_u: bool = True) -> SmithDecomposition:
    """Smith normal form with transformation matrices.

    ``want_u=False`` skips the bookkeeping for U (it is returned as the
    identity); useful when only V and the diagonal are needed on a matrix
    with many rows.
    """
    m, n = A.rows, A.cols
    D = [list(r) for r in A.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if want_u else None
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def submul_row(i, j, q):
        # row_i -= q * row_j
        Di, Dj = D[i], D[j]
        for k in range(n):
            Di[k] -= q * Dj[k]
        if U is not None:
            Ui, Uj = U[i], U[j]
            for k in range(m):
                Ui[k] -= q * Uj[k]

    def submul_col(i, j, q):
        # col_i -= q * col_j
        for row in D:
            row[i] -= q * row[j]
        for row in V:
            row[i] -= q * row[j]

    def negate_row(i):
        D[i] = [-x for x in D[i]]
        if U is not None:
            U[i] = [-x for x in U[i]]

    def clear(t):
        """Diagonalize position t; returns False when the remaining
        submatrix is zero."""
        while True:
            piv = None
            for i in range(t, m):
                for j in range(t, n):
                    v = D[i][j]
                    if v and (piv is None or abs(v) < abs(D[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                return False
            if piv[0] != t:
                swap_rows(t, piv[0])
            if piv[1] != t:
                swap_cols(t, piv[1])
            p = D[t][t]
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    submul_row(i, t, D[i][t] // p)
                    if D[i][t]:
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    submul_col(j, t, D[t][j] // p)
                    if D[t][j]:
                        done = False
            if done:
                if D[t][t] < 0:
                    negate_row(t)
                return True

    r = 0
    while r < min(m, n) and clear(r):
        r += 1

    # Enforce the divisibility chain d_1 | d_2 | ...
    changed = True
    while changed:
        changed = False
        for i in range(r - 1):
            a, b = D[i][i], D[i + 1][i + 1]
            if a and b % a:
                submul_col(i, i + 1, -1)
                clear(i)
                clear(i + 1)
                changed = True

    if U is None:
        U = [[int(i == j) for j in range(m)] for i in range(m)]
    return SmithDecomposition(
        U=IntMatrix(m, m, tuple(map(tuple, U))),
        D=IntMatrix(m, n, tuple(map(tuple, D))),
        V=IntMatrix(n, n, tuple(map(tuple, V))),
        original_shape=(m, n),
    )


def inverse_unimodular(M: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix (via its Smith form, which
    is the identity, so M^-1 = V @ U)."""
    snf = smith_normal_form(M)
    if snf.diagonal != tuple([1] * M.rows):
        raise ValidationError("matrix is not unimodular")
    return snf.V @ snf.U


def solve_integer(A: IntMatrix, b):
    """One integer solution x of A @ x = b, or None when none exists."""
    if len(b) != A.rows:
        raise ValidationError("right-hand side length does not match row count")
    snf = smith_normal_form(A)
    c = snf.U.apply(b)
    diag = snf.diagonal
    y = [0] * A.cols
    for i in range(A.rows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return snf.V.apply(y)


def kernel_basis(A: IntMatrix):
    """Basis (list of integer vectors) of the lattice {x : A @ x = 0}."""
    snf = smith_normal_form(A, want_u=False)
    diag = snf.diagonal
    basis = []
    for j in range(A.cols):
        d = diag[j] if j < len(diag) else 0
        if d == 0:
            basis.append(snf.V.col(j))
    return basis


def congruence_kernel_basis(A: IntMatrix, q: int):
    """Basis of the full-rank lattice {x in Z^n : A @ x = 0 (mod q)}, q >= 1.

    Columns of V scaled by q / gcd(d_i, q) form a basis: in the Smith
    coordinates the congruence is d_i * y_i = 0 (mod q).
    """
    if q < 1:
        raise ValidationError("modulus must be >= 1")
    snf = smith_normal_form(A, want_u=False)
    diag = snf.diagonal
    n = A.cols
    cols = []
    for j in range(n):
        d = diag[j] if j < len(diag) else 0
        scale = q // gcd(d, q) if d else 1
        cols.append(tuple(x * scale for x in snf.V.col(j)))
    return IntMatrix(n, n, tuple(tuple(cols[j][i] for j in range(n))
                                 for i in range(n)))


@dataclass(frozen=True)
class CokernelPresentation:
    """coker(relations on Z^cols) ~= Z^free_rank (+) sum_i Z/f_i.

    ``to_presented`` maps standard coordinates to presented coordinates
    (``from_presented`` is its inverse); ``moduli`` gives one modulus per
    presented coordinate: d_i for torsion (possibly 1 = trivial), 0 for
    free.  ``invariant_factors`` lists only the moduli > 1.
    """

    free_rank: int
    invariant_factors: tuple
    to_presented: IntMatrix
    from_presented: IntMatrix
    moduli: tuple


def cokernel_presentation(A: IntMatrix) -> CokernelPresentation:
    """Present Z^cols modulo the lattice spanned by the rows of A."""
    At = A.transpose()            # map Z^rows -> Z^cols, image = row lattice
    snf = smith_normal_form(At)
    n = A.cols
    diag = snf.diagonal
    moduli = tuple((diag[i] if i < len(diag) else 0) for i in range(n))
    factors = tuple(d for d in moduli if d > 1)
    free = sum(1 for d in moduli if d == 0)
    return CokernelPresentation(
        free_rank=free,
        invariant_factors=factors,
        to_presented=snf.U,
        from_presented=inverse_unimodular(snf.U),
        moduli=moduli,
    )


def column_lattice_basis(A: IntMatrix):
    """Basis vectors of the lattice spanned by the columns of A."""
    snf = smith_normal_form(A)
    uinv = inverse_unimodular(snf.U)
    return [tuple(d * x for x in uinv.col(i))
            for i, d in enumerate(snf.diagonal) if d != 0]
