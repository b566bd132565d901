"""Exact integer and rational linear algebra.

Everything here works on Python ints and :class:`fractions.Fraction`, so
there is no overflow at any magnitude. The central routine is
:func:`smith_normal_form`; cokernels, saturated kernels and linear
Diophantine systems are all read off from it.

>>> snf = smith_normal_form(IntMatrix([[2, 0], [0, 3]]))
>>> snf.diagonal
(1, 6)
>>> cokernel(IntMatrix([[2]])).normal_form
FgAbGroup(free_rank=0, torsion=(2,))
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class IntMatrix:
    """Immutable integer matrix with row-major storage.

    Zero-row and zero-column matrices are legal; pass ``ncols`` when there
    are no rows to read it from.
    """

    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, rows: Iterable[Iterable[int]] = (), ncols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError(f"ncols={ncols} does not match row length {width}")
        else:
            width = ncols or 0
        self._rows = data
        self.rows = len(data)
        self.cols = width

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(([int(i == j) for j in range(n)] for i in range(n)), ncols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(([0] * cols for _ in range(rows)), ncols=cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int | None = None) -> IntMatrix:
        if not columns:
            return cls.zeros(nrows or 0, 0)
        return cls(zip(*columns), ncols=len(columns)) if len(columns[0]) else cls.zeros(0, len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self._rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self._rows]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(zip(*self._rows), ncols=self.rows) if self.rows else IntMatrix.zeros(self.cols, 0)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.columns()
        return IntMatrix(
            ([sum(a * b for a, b in zip(row, col)) for col in ocols] for row in self._rows),
            ncols=other.cols,
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self._rows)

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        if self.rows == 0:
            return IntMatrix.zeros(0, self.cols + other.cols)
        return IntMatrix((a + b for a, b in zip(self._rows, other._rows)), ncols=self.cols + other.cols)

    def vstack(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return IntMatrix(self._rows + other._rows, ncols=self.cols)

    def submatrix(self, rows: Sequence[int] | range, cols: Sequence[int] | range) -> IntMatrix:
        return IntMatrix(([self._rows[i][j] for j in cols] for i in rows), ncols=len(cols))

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        m = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def rank(self) -> int:
        return rank_q(self._rows)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._rows for x in row)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        if not self.rows:
            return f"IntMatrix([], ncols={self.cols})"
        return f"IntMatrix({self.tolist()})"


# ---------------------------------------------------------------------------
# rational helpers


def _rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    m = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank_q(rows: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-field Gaussian elimination."""
    return len(_rref(rows)[1])


def solve_q(rows: Sequence[Sequence], rhs: Sequence) -> tuple[Fraction, ...] | None:
    """Unique rational solution of ``rows @ x = rhs``, or None.

    None covers both inconsistent and underdetermined systems.
    """
    if not rows:
        return None
    n = len(rows[0])
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    m, pivots = _rref(aug)
    if n in pivots or len(pivots) != n:
        return None
    return tuple(m[i][n] for i in range(n))


def nullspace_q(rows: Sequence[Sequence], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of the rational null space of a matrix with ``ncols`` columns."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    m, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfDecomposition:
    """``U @ A @ V == D`` with U, V unimodular and D in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(A: IntMatrix) -> SnfDecomposition:
    """Smith normal form with transforms, ``U @ A @ V == D``.

    Pivots are chosen by minimal absolute value. The diagonal is made
    nonnegative (signs go into U) and satisfies ``d[i] | d[i+1]``.
    """
    m, n = A.shape
    D = A.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for M in (D, U):
            M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for M in (D, V):
            for row in M:
                row[dst] += q * row[src]

    for k in range(min(m, n)):
        while True:
            nonzero = [(abs(D[i][j]), i, j) for i in range(k, m) for j in range(k, n) if D[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            swap_rows(k, pi)
            swap_cols(k, pj)
            p = D[k][k]
            dirty = False
            for i in range(k + 1, m):
                if D[i][k]:
                    q = D[i][k] // p
                    add_row(i, k, -q)
                    dirty = dirty or D[i][k] != 0
            for j in range(k + 1, n):
                if D[k][j]:
                    q = D[k][j] // p
                    add_col(j, k, -q)
                    dirty = dirty or D[k][j] != 0
            if dirty:
                continue
            # row and column cleared; enforce divisibility on the remainder
            bad = next(
                (i for i in range(k + 1, m) for j in range(k + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(k, bad, 1)
        if k < m and k < n and D[k][k] < 0:
            D[k] = [-x for x in D[k]]
            U[k] = [-x for x in U[k]]

    return SnfDecomposition(IntMatrix(U, ncols=m), IntMatrix(D, ncols=n), IntMatrix(V, ncols=n))


def hermite_normal_form(A: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form ``H = W @ A`` with W unimodular.

    H is in row echelon form, pivots positive, entries above each pivot
    reduced into ``[0, pivot)``; zero rows sit at the bottom.
    """
    m, n = A.shape
    H = A.tolist()
    W = IntMatrix.identity(m).tolist()
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            rows = [i for i in range(r, m) if H[i][c]]
            if not rows:
                break
            p = min(rows, key=lambda i: abs(H[i][c]))
            H[r], H[p] = H[p], H[r]
            W[r], W[p] = W[p], W[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    W[i] = [a - q * b for a, b in zip(W[i], W[r])]
                    done = done and H[i][c] == 0
            if done:
                break
        if r < m and H[r][c]:
            if H[r][c] < 0:
                H[r] = [-x for x in H[r]]
                W[r] = [-x for x in W[r]]
            for i in range(r):
                q = H[i][c] // H[r][c]
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    W[i] = [a - q * b for a, b in zip(W[i], W[r])]
            r += 1
    return IntMatrix(H, ncols=n), IntMatrix(W, ncols=m)


def lattice_basis(generators: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Canonical basis (HNF rows) of the lattice spanned by ``generators``."""
    if not generators:
        return []
    H, _ = hermite_normal_form(IntMatrix(generators, ncols=dim))
    return [H.row(i) for i in range(H.rows) if any(H.row(i))]


# ---------------------------------------------------------------------------
# abelian groups, cokernels, kernels


@dataclass(frozen=True)
class FgAbGroup:
    """``Z^free_rank + Z/t_1 + ... + Z/t_k`` with ``t_i | t_{i+1}``, all ``t_i >= 2``."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for i, t in enumerate(self.torsion):
            if t < 2:
                raise ValueError(f"invariant factor {t} must be >= 2")
            if i and t % self.torsion[i - 1]:
                raise ValueError(f"invariant factors {self.torsion} not in divisibility order")

    @classmethod
    def from_invariants(cls, free_rank: int, factors: Iterable[int]) -> FgAbGroup:
        """Build from any list of invariant factors, dropping units."""
        return cls(free_rank, tuple(abs(f) for f in factors if abs(f) != 1))

    @property
    def is_free(self) -> bool:
        return not self.torsion

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.free_rank

    def reduce(self, element: Sequence[int]) -> tuple[int, ...]:
        """Normalise an element given as torsion coordinates then free ones."""
        k = len(self.torsion)
        return tuple(x % t for x, t in zip(element[:k], self.torsion)) + tuple(element[k:])

    def __str__(self) -> str:
        parts = ["Z"] * min(self.free_rank, 1)
        if self.free_rank > 1:
            parts = [f"Z^{self.free_rank}"]
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class PresentedQuotient:
    """Cokernel ``Z^ambient_rank / im(relations)`` with its normal form.

    ``projection`` maps ambient coordinates onto normal-form coordinates
    (torsion coordinates first, reduced modulo their factor, then free).
    """

    ambient_rank: int
    relations: IntMatrix
    normal_form: FgAbGroup
    projection: IntMatrix

    def project(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.normal_form.reduce(self.projection.apply(x))

    def with_free_change(self, W: IntMatrix) -> PresentedQuotient:
        """Change basis of the free part by the unimodular matrix ``W``."""
        k = len(self.normal_form.torsion)
        P = self.projection
        free = W @ P.submatrix(range(k, P.rows), range(P.cols))
        return PresentedQuotient(
            self.ambient_rank,
            self.relations,
            self.normal_form,
            P.submatrix(range(k), range(P.cols)).vstack(free),
        )


def cokernel(A: IntMatrix) -> PresentedQuotient:
    snf = smith_normal_form(A)
    diag = snf.diagonal
    m = A.rows
    tors = [i for i, d in enumerate(diag) if d > 1]
    free = list(range(snf.rank, m))
    rows = [[u % diag[i] for u in snf.U.row(i)] for i in tors] + [list(snf.U.row(i)) for i in free]
    group = FgAbGroup(len(free), tuple(diag[i] for i in tors))
    return PresentedQuotient(m, A, group, IntMatrix(rows, ncols=m))


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Saturated basis of ``{x in Z^n : A x = 0}`` as matrix columns (HNF-reduced)."""
    snf = smith_normal_form(A)
    gens = [tuple(snf.V[i, j] for i in range(A.cols)) for j in range(snf.rank, A.cols)]
    basis = lattice_basis(gens, A.cols)
    return IntMatrix.from_columns(basis, nrows=A.cols)


def solve_diophantine(A: IntMatrix, b: Sequence[int]) -> tuple[tuple[int, ...], IntMatrix] | None:
    """Integer solution of ``A x = b`` plus the homogeneous kernel basis.

    Returns None when no integral solution exists.
    """
    if len(b) != A.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {A.rows}")
    snf = smith_normal_form(A)
    diag = snf.diagonal
    c = snf.U.apply(tuple(int(x) for x in b))
    y = [0] * A.cols
    for i, ci in enumerate(c):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if ci != 0:
                return None
        elif ci % d:
            return None
        else:
            y[i] = ci // d
    return snf.V.apply(y), kernel_basis(A)
