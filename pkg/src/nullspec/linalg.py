"""Exact linear algebra over the prime field F_p.

Matrices are immutable, entries are plain ints reduced mod p, and every
canonical form (RREF) is computed exactly.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .errors import EnumerationCapExceeded

DEFAULT_SUBSPACE_CAP = 2 ** 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Matrix:
    """A rows x cols matrix over F_p, entries row-major in [0, p)."""

    rows: int
    cols: int
    entries: tuple[int, ...]
    p: int

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        if any(not (0 <= e < self.p) for e in self.entries):
            raise ValueError("entries must be reduced mod p")

    @classmethod
    def from_rows(cls, rows: list[list[int]] | tuple, p: int, cols: int | None = None) -> "Matrix":
        nrows = len(rows)
        if nrows == 0:
            if cols is None:
                raise ValueError("cols required for an empty row list")
            return cls(0, cols, (), p)
        ncols = len(rows[0])
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(x % p for x in r)
        return cls(nrows, ncols, tuple(flat), p)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "Matrix":
        return cls(rows, cols, (0,) * (rows * cols), p)

    @classmethod
    def identity(cls, n: int, p: int) -> "Matrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)), p)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_list(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def add(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        p = self.p
        return Matrix(self.rows, self.cols, tuple((a + b) % p for a, b in zip(self.entries, other.entries)), p)

    def sub(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        p = self.p
        return Matrix(self.rows, self.cols, tuple((a - b) % p for a, b in zip(self.entries, other.entries)), p)

    def scale(self, c: int) -> "Matrix":
        p = self.p
        c %= p
        return Matrix(self.rows, self.cols, tuple((c * a) % p for a in self.entries), p)

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows or self.p != other.p:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        p = self.p
        n, m, k = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = [0] * (n * k)
        for i in range(n):
            arow = a[i * m : (i + 1) * m]
            orow = out
            base = i * k
            for t in range(m):
                c = arow[t]
                if c:
                    brow = b[t * k : (t + 1) * k]
                    for j in range(k):
                        orow[base + j] = (orow[base + j] + c * brow[j]) % p
        return Matrix(n, k, tuple(out), p)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)), self.p)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols or self.p != other.p:
            raise ValueError("column count mismatch in vstack")
        return Matrix(self.rows + other.rows, self.cols, self.entries + other.entries, self.p)

    def apply_row(self, vec: tuple[int, ...]) -> tuple[int, ...]:
        """Row vector times matrix: vec (len rows) -> result (len cols)."""
        if len(vec) != self.rows:
            raise ValueError("vector length mismatch")
        p = self.p
        out = [0] * self.cols
        for i, c in enumerate(vec):
            if c:
                r = self.row(i)
                for j in range(self.cols):
                    out[j] = (out[j] + c * r[j]) % p
        return tuple(out)

    def _check_same_shape(self, other: "Matrix"):
        if (self.rows, self.cols, self.p) != (other.rows, other.cols, other.p):
            raise ValueError("shape/modulus mismatch")


def rref(m: Matrix) -> Matrix:
    """Unique reduced row-echelon form of m over F_p; row space is preserved."""
    p = m.p
    work = [list(m.row(i)) for i in range(m.rows)]
    nrows, ncols = m.rows, m.cols
    pivot_row = 0
    for col in range(ncols):
        pivot = next((r for r in range(pivot_row, nrows) if work[r][col]), None)
        if pivot is None:
            continue
        work[pivot_row], work[pivot] = work[pivot], work[pivot_row]
        inv = pow(work[pivot_row][col], -1, p)
        work[pivot_row] = [(inv * x) % p for x in work[pivot_row]]
        for r in range(nrows):
            if r != pivot_row and work[r][col]:
                c = work[r][col]
                work[r] = [(x - c * y) % p for x, y in zip(work[r], work[pivot_row])]
        pivot_row += 1
        if pivot_row == nrows:
            break
    flat = tuple(x for row in work for x in row)
    return Matrix(nrows, ncols, flat, p)


def rank(m: Matrix) -> int:
    r = rref(m)
    return sum(1 for i in range(r.rows) if any(r.row(i)))


def inverse(m: Matrix) -> Matrix:
    """Inverse of a square invertible matrix, via RREF of [m | I]."""
    if m.rows != m.cols:
        raise ValueError("not square")
    n, p = m.rows, m.p
    aug = Matrix(n, 2 * n, tuple(
        x for i in range(n) for x in m.row(i) + tuple(1 if j == i else 0 for j in range(n))), p)
    r = rref(aug)
    left = [[r[i, j] for j in range(n)] for i in range(n)]
    if left != Matrix.identity(n, p).row_list():
        raise ValueError("matrix is not invertible")
    return Matrix(n, n, tuple(r[i, j] for i in range(n) for j in range(n, 2 * n)), p)


def _pivot_cols(rref_m: Matrix) -> list[int]:
    pivots = []
    for i in range(rref_m.rows):
        row = rref_m.row(i)
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is not None:
            pivots.append(lead)
    return pivots


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^ambient_dim, held as an RREF basis with no zero rows.

    The RREF basis is the canonical representative: two Subspace values are
    equal exactly when the subspaces are equal.
    """

    ambient_dim: int
    basis: Matrix

    def __post_init__(self):
        if self.basis.cols != self.ambient_dim:
            raise ValueError("basis column count must equal ambient dimension")
        if rref(self.basis) != self.basis or any(not any(self.basis.row(i)) for i in range(self.basis.rows)):
            raise ValueError("basis must be an RREF matrix without zero rows")

    @classmethod
    def from_matrix(cls, m: Matrix) -> "Subspace":
        """Row space of m as a canonical Subspace."""
        r = rref(m)
        rows = [list(r.row(i)) for i in range(r.rows) if any(r.row(i))]
        return cls(m.cols, Matrix.from_rows(rows, m.p, cols=m.cols))

    @classmethod
    def zero(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls(ambient_dim, Matrix(0, ambient_dim, (), p))

    @classmethod
    def full(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ambient_dim, p))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def p(self) -> int:
        return self.basis.p

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    def pivots(self) -> list[int]:
        return _pivot_cols(self.basis)

    def reduce(self, vec: tuple[int, ...]) -> tuple[int, ...]:
        """Eliminate the pivot coordinates of vec; result is 0 iff vec lies here."""
        p = self.p
        v = [x % p for x in vec]
        for i, col in enumerate(self.pivots()):
            c = v[col]
            if c:
                row = self.basis.row(i)
                v = [(x - c * y) % p for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, vec: tuple[int, ...]) -> bool:
        return not any(self.reduce(vec))

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(other.basis.row(i)) for i in range(other.dim))

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient mismatch")
        return Subspace.from_matrix(self.basis.vstack(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection, via the row kernel of vstack(B_self, -B_other)."""
        if self.ambient_dim != other.ambient_dim or self.p != other.p:
            raise ValueError("ambient mismatch")
        p = self.p
        d1, d2 = self.dim, other.dim
        if d1 == 0 or d2 == 0:
            return Subspace.zero(self.ambient_dim, p)
        stacked = self.basis.vstack(other.basis.scale(p - 1))
        ker = row_kernel(stacked)
        rows = []
        for i in range(ker.dim):
            coeff = ker.basis.row(i)[:d1]
            rows.append(list(self.basis.apply_row(coeff)))
        if not rows:
            return Subspace.zero(self.ambient_dim, p)
        return Subspace.from_matrix(Matrix.from_rows(rows, p, cols=self.ambient_dim))

    def vectors(self):
        """All elements of the subspace (p^dim tuples)."""
        p = self.p
        for coeffs in product(range(p), repeat=self.dim):
            yield self.basis.apply_row(coeffs) if self.dim else (0,) * self.ambient_dim


def kernel_basis(m: Matrix) -> Subspace:
    """Null space {x in F_p^cols : m*x^T = 0} of m acting on column vectors.

    dim(kernel) + rank(m) = cols(m).
    """
    p = m.p
    r = rref(m)
    pivots = _pivot_cols(r)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    rows = []
    for f in free:
        v = [0] * m.cols
        v[f] = 1
        for i, col in enumerate(pivots):
            v[col] = (-r[i, f]) % p
        rows.append(v)
    if not rows:
        return Subspace.zero(m.cols, p)
    return Subspace.from_matrix(Matrix.from_rows(rows, p, cols=m.cols))


def row_kernel(m: Matrix) -> Subspace:
    """{v in F_p^rows : v*m = 0}, i.e. the kernel of right multiplication."""
    return kernel_basis(m.transpose())


def solve_commutant(constraints: list[tuple[Matrix, Matrix]], shape: tuple[int, int], p: int) -> list[Matrix]:
    """Basis of {X : A*X = X*B for every (A, B) in constraints}.

    X has the given shape (a, b); each A must be a x a and each B must be
    b x b.  The basis is returned in a deterministic (RREF-derived) order.
    """
    a, b = shape
    for A, B in constraints:
        if A.rows != a or A.cols != a or B.rows != b or B.cols != b:
            raise ValueError("constraint shape mismatch")
        if A.p != p or B.p != p:
            raise ValueError("modulus mismatch")
    n_unknowns = a * b
    if n_unknowns == 0:
        return []
    eq_rows = []
    for A, B in constraints:
        for r in range(a):
            for c in range(b):
                row = [0] * n_unknowns
                for k in range(a):
                    row[k * b + c] = (row[k * b + c] + A[r, k]) % p
                for k in range(b):
                    row[r * b + k] = (row[r * b + k] - B[k, c]) % p
                eq_rows.append(row)
    if not eq_rows:
        sol = Subspace.full(n_unknowns, p)
    else:
        sol = kernel_basis(Matrix.from_rows(eq_rows, p))
    out = []
    for i in range(sol.dim):
        out.append(Matrix(a, b, sol.basis.row(i), p))
    return out


def gaussian_binomial(n: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of F_p^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (k - i) - 1
    return num // den


def subspace_count(n: int, p: int) -> int:
    return sum(gaussian_binomial(n, k, p) for k in range(n + 1))


def enumerate_subspaces(ambient_dim: int, p: int, cap: int = DEFAULT_SUBSPACE_CAP) -> list[Subspace]:
    """All subspaces of F_p^ambient_dim, each as a canonical RREF basis.

    Every RREF shape (pivot column set + free entries) is produced exactly
    once, so the list is duplicate-free by construction.  Sorted by
    (dimension, lexicographic basis entries).
    """
    if p ** ambient_dim > cap:
        raise EnumerationCapExceeded(
            f"subspace enumeration: p^d = {p}^{ambient_dim} exceeds cap {cap}")
    out = []
    for k in range(ambient_dim + 1):
        for pivots in combinations(range(ambient_dim), k):
            pivot_set = set(pivots)
            free_positions = [
                (i, j)
                for i, pc in enumerate(pivots)
                for j in range(pc + 1, ambient_dim)
                if j not in pivot_set
            ]
            for values in product(range(p), repeat=len(free_positions)):
                rows = [[0] * ambient_dim for _ in range(k)]
                for i, pc in enumerate(pivots):
                    rows[i][pc] = 1
                for (i, j), v in zip(free_positions, values):
                    rows[i][j] = v
                basis = Matrix.from_rows(rows, p, cols=ambient_dim)
                out.append(Subspace(ambient_dim, basis))
    out.sort(key=lambda s: (s.dim, s.basis.entries))
    return out
