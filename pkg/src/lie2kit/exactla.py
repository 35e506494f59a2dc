"""Exact linear algebra over the rationals.

Scalars are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator), vectors are tuples of scalars and matrices are
immutable row-major grids.  Nothing here ever rounds.

Subspaces are stored by a basis in reduced row echelon form, so two
subspaces are equal exactly when their stored bases are equal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import DimensionError

Vector = tuple

ZERO = Fraction(0)
ONE = Fraction(1)


def scalar(x) -> Fraction:
    """Coerce ``x`` to an exact rational.

    Accepts ints, Fractions and strings such as ``"3"`` or ``"-2/5"``.
    Floats are rejected since they would smuggle rounding into the kernel.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact scalar: {x!r}")


def vector(xs: Iterable) -> Vector:
    return tuple(scalar(x) for x in xs)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def is_zero(v: Vector) -> bool:
    return all(a == 0 for a in v)


def lincomb(coeffs: Sequence, vectors: Sequence[Vector], n: int) -> Vector:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                if a:
                    out[i] += c * a
    return tuple(out)


class Matrix:
    """Immutable dense rational matrix."""

    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, data, rows: Optional[int] = None, cols: Optional[int] = None):
        data = tuple(tuple(scalar(x) for x in row) for row in data)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise DimensionError(
                f"matrix data does not have shape {rows}x{cols}", rows=rows, cols=cols
            )
        self.rows = rows
        self.cols = cols
        self.data = data
        self._hash = None

    @classmethod
    def _raw(cls, data, rows, cols):
        m = cls.__new__(cls)
        m.rows, m.cols, m.data, m._hash = rows, cols, data, None
        return m

    @classmethod
    def zeros(cls, rows, cols):
        return cls._raw(tuple((ZERO,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n):
        return cls._raw(tuple(unit_vector(n, i) for i in range(n)), n, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Vector], rows: int):
        columns = [vector(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise DimensionError("column has wrong length", expected=rows, got=len(c))
        data = tuple(tuple(c[i] for c in columns) for i in range(rows))
        return cls._raw(data, rows, len(columns))

    @classmethod
    def selection(cls, n: int, indices: Sequence[int]):
        """Rows ``e_i^T`` for i in ``indices``: picks those coordinates."""
        return cls._raw(tuple(unit_vector(n, i) for i in indices), len(indices), n)

    @classmethod
    def hstack(cls, *blocks: Matrix):
        rows = blocks[0].rows
        for b in blocks:
            if b.rows != rows:
                raise DimensionError("hstack row mismatch", rows=[b.rows for b in blocks])
        data = tuple(sum((b.data[i] for b in blocks), ()) for i in range(rows))
        return cls._raw(data, rows, sum(b.cols for b in blocks))

    @classmethod
    def vstack(cls, *blocks: Matrix):
        cols = blocks[0].cols
        for b in blocks:
            if b.cols != cols:
                raise DimensionError("vstack column mismatch", cols=[b.cols for b in blocks])
        return cls._raw(sum((b.data for b in blocks), ()), sum(b.rows for b in blocks), cols)

    @classmethod
    def block_diag(cls, *blocks: Matrix):
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        data = []
        c0 = 0
        for b in blocks:
            for r in b.data:
                data.append((ZERO,) * c0 + r + (ZERO,) * (cols - c0 - b.cols))
            c0 += b.cols
        return cls._raw(tuple(data), rows, cols)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"Matrix<{self.rows}x{self.cols}>[{body}]"

    def column(self, j) -> Vector:
        return tuple(row[j] for row in self.data)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self):
        if self.rows == 0:
            return Matrix.zeros(self.cols, 0)
        return Matrix._raw(tuple(zip(*self.data)), self.cols, self.rows)

    def apply(self, v: Vector) -> Vector:
        if len(v) != self.cols:
            raise DimensionError(
                f"cannot apply {self.rows}x{self.cols} matrix to vector of length {len(v)}",
                cols=self.cols, length=len(v),
            )
        nz = [(j, a) for j, a in enumerate(v) if a]
        return tuple(sum((row[j] * a for j, a in nz), ZERO) for row in self.data)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionError(
                    f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}",
                    left=self.shape, right=other.shape,
                )
            ocols = other.columns()
            ocols_nz = [[(k, a) for k, a in enumerate(c) if a] for c in ocols]
            data = tuple(
                tuple(sum((row[k] * a for k, a in cnz), ZERO) for cnz in ocols_nz)
                for row in self.data
            )
            return Matrix._raw(data, self.rows, other.cols)
        return self.apply(tuple(other))

    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}",
                                 left=self.shape, right=other.shape)

    def __add__(self, other: Matrix):
        self._check_same(other)
        return Matrix._raw(tuple(vadd(a, b) for a, b in zip(self.data, other.data)),
                           self.rows, self.cols)

    def __sub__(self, other: Matrix):
        self._check_same(other)
        return Matrix._raw(tuple(vsub(a, b) for a, b in zip(self.data, other.data)),
                           self.rows, self.cols)

    def __neg__(self):
        return Matrix._raw(tuple(vscale(-1, r) for r in self.data), self.rows, self.cols)

    def scale(self, c):
        c = scalar(c)
        return Matrix._raw(tuple(vscale(c, r) for r in self.data), self.rows, self.cols)

    def is_zero(self):
        return all(is_zero(r) for r in self.data)

    def rank(self):
        return len(rref(self.data, self.cols)[1])

    def kernel(self) -> Subspace:
        return null_space(self)

    def image(self) -> Subspace:
        return Subspace.span(self.columns(), self.rows)

    def is_injective(self):
        return self.rank() == self.cols

    def is_surjective(self):
        return self.rank() == self.rows

    def is_bijective(self):
        return self.rows == self.cols and self.rank() == self.cols

    def inverse(self) -> Matrix:
        if not self.is_bijective():
            raise DimensionError("matrix is not invertible", shape=self.shape)
        n = self.rows
        aug = [row + unit_vector(n, i) for i, row in enumerate(self.data)]
        red, _ = rref(aug, 2 * n)
        return Matrix._raw(tuple(r[n:] for r in red), n, n)

    def restrict(self, W: Subspace) -> Matrix:
        """This map precomposed with the inclusion of ``W`` (basis coordinates)."""
        return self @ W.inclusion()


def rref(rows: Sequence[Vector], ncols: int):
    """Reduced row echelon form.

    Returns ``(nonzero_rows, pivot_columns)``.
    """
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r >= nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [x / p for x in m[r]]
        prow = m[r]
        nz = [(j, x) for j, x in enumerate(prow) if x]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    for j, x in nz:
                        row[j] -= f * x
        pivots.append(c)
        r += 1
    return [tuple(row) for row in m[:r]], pivots


class Subspace:
    """Subspace of Q^n with a canonical (RREF) basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis=(), _canonical=False):
        if _canonical:
            self.ambient_dim = ambient_dim
            self.basis = tuple(basis)
            self.pivots = tuple(next(i for i, x in enumerate(b) if x) for b in self.basis)
            return
        vecs = [vector(b) for b in basis]
        for v in vecs:
            if len(v) != ambient_dim:
                raise DimensionError("basis vector has wrong length",
                                     ambient_dim=ambient_dim, length=len(v))
        red, piv = rref(vecs, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis = tuple(red)
        self.pivots = tuple(piv)

    @classmethod
    def span(cls, vectors, ambient_dim):
        return cls(ambient_dim, vectors)

    @classmethod
    def zero(cls, n):
        return cls(n, (), _canonical=True)

    @classmethod
    def full(cls, n):
        return cls(n, [unit_vector(n, i) for i in range(n)], _canonical=True)

    @property
    def dim(self):
        return len(self.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        vecs = ", ".join("(" + ",".join(str(x) for x in b) + ")" for b in self.basis)
        return f"Subspace<{self.ambient_dim}>{{{vecs}}}"

    def coords(self, v: Vector, check=True) -> Vector:
        """Coordinates of ``v`` in the stored basis (read off at the pivots)."""
        c = tuple(v[p] for p in self.pivots)
        if check and lincomb(c, self.basis, self.ambient_dim) != tuple(v):
            raise DimensionError("vector is not in the subspace", vector=v)
        return c

    def contains(self, v: Vector) -> bool:
        v = tuple(v)
        return lincomb([v[p] for p in self.pivots], self.basis, self.ambient_dim) == v

    def contains_space(self, other: Subspace) -> bool:
        return all(self.contains(b) for b in other.basis)

    def inclusion(self) -> Matrix:
        """Ambient matrix whose columns are the basis vectors."""
        return Matrix.from_columns(self.basis, self.ambient_dim)

    def selection(self) -> Matrix:
        """Left inverse of :meth:`inclusion`, valid on vectors of the subspace."""
        return Matrix.selection(self.ambient_dim, self.pivots)

    def __add__(self, other: Subspace):
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def intersect(self, other: Subspace) -> Subspace:
        n = self.ambient_dim
        stacked = Matrix.hstack(self.inclusion(), -other.inclusion())
        k = null_space(stacked)
        inc = self.inclusion()
        return Subspace(n, [inc.apply(v[: self.dim]) for v in k.basis])

    def is_full(self):
        return self.dim == self.ambient_dim


def null_space(A: Matrix) -> Subspace:
    red, piv = rref(A.data, A.cols)
    free = [c for c in range(A.cols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [ZERO] * A.cols
        v[f] = ONE
        for r, p in enumerate(piv):
            v[p] = -red[r][f]
        basis.append(tuple(v))
    return Subspace(A.cols, basis)


class Solution(NamedTuple):
    particular: Vector
    kernel: Subspace


def solve(A: Matrix, b: Sequence) -> Optional[Solution]:
    """Solve ``A x = b``; ``None`` when ``b`` is outside the column space."""
    b = vector(b)
    if len(b) != A.rows:
        raise DimensionError(
            f"solve: matrix has {A.rows} rows but right-hand side has length {len(b)}",
            rows=A.rows, rhs_length=len(b),
        )
    aug = [row + (bi,) for row, bi in zip(A.data, b)]
    red, piv = rref(aug, A.cols + 1)
    if piv and piv[-1] == A.cols:
        return None
    x = [ZERO] * A.cols
    for r, p in enumerate(piv):
        x[p] = red[r][A.cols]
    return Solution(tuple(x), null_space(A))


def kernel_image(f: Matrix):
    return null_space(f), f.image()


def pullback_space(f: Matrix, g: Matrix) -> Subspace:
    """``{(a, b) : f a = g b}`` inside ``A (+) B``."""
    if f.rows != g.rows:
        raise DimensionError(
            f"pullback: codomains differ ({f.rows} vs {g.rows})",
            f_codomain=f.rows, g_codomain=g.rows,
        )
    return null_space(Matrix.hstack(f, -g))


def equalizer_space(dims: Sequence[int], equations) -> Subspace:
    """Solutions ``(v_0, ..., v_k)`` of ``M v_i = N v_j`` for every equation.

    ``equations`` is an iterable of ``(i, M, j, N)``.
    """
    total = sum(dims)
    offsets = [sum(dims[:i]) for i in range(len(dims))]
    rows = []
    for i, M, j, N in equations:
        if M.rows != N.rows or M.cols != dims[i] or N.cols != dims[j]:
            raise DimensionError("equalizer equation has wrong shape",
                                 left=M.shape, right=N.shape)
        for r in range(M.rows):
            row = [ZERO] * total
            for c in range(dims[i]):
                row[offsets[i] + c] += M.data[r][c]
            for c in range(dims[j]):
                row[offsets[j] + c] -= N.data[r][c]
            rows.append(row)
    return null_space(Matrix(rows, len(rows), total))


def quotient(ambient_dim: int, W: Subspace):
    """Quotient of ``Q^ambient_dim`` by ``W``.

    The complement is spanned by the coordinates that are not pivots of the
    echelon basis of ``W``.  Returns ``(dim, projection)``.
    """
    if W.ambient_dim != ambient_dim:
        raise DimensionError(
            f"quotient: subspace lives in dimension {W.ambient_dim}, not {ambient_dim}",
            ambient_dim=ambient_dim, subspace_ambient=W.ambient_dim,
        )
    keep = [i for i in range(ambient_dim) if i not in set(W.pivots)]
    # v -> v - sum_r v[piv_r] w_r kills W and fixes the kept coordinates
    red = [list(unit_vector(ambient_dim, i)) for i in range(ambient_dim)]
    for w, p in zip(W.basis, W.pivots):
        for i in range(ambient_dim):
            if w[i]:
                red[i][p] -= w[i]
    reducer = Matrix(red, ambient_dim, ambient_dim)
    projection = Matrix.selection(ambient_dim, keep) @ reducer
    return len(keep), projection


def complement_section(ambient_dim: int, W: Subspace) -> Matrix:
    """Right inverse of the :func:`quotient` projection (lands in the complement)."""
    keep = [i for i in range(ambient_dim) if i not in set(W.pivots)]
    return Matrix.selection(ambient_dim, keep).T


def solve_matrix_equations(shape, equations):
    """All matrices ``X`` of the given shape satisfying linear equations.

    Each equation is ``(terms, rhs)`` with ``terms`` a list of ``(A, B)``
    meaning ``sum A X B = rhs``.  Returns ``(particular, kernel_basis)`` or
    ``None`` when the system is inconsistent.
    """
    rows_x, cols_x = shape
    nvar = rows_x * cols_x
    eq_rows, rhs = [], []
    for terms, R in equations:
        for r in range(R.rows):
            for c in range(R.cols):
                row = [ZERO] * nvar
                for A, B in terms:
                    for i in range(rows_x):
                        a = A.data[r][i]
                        if not a:
                            continue
                        for j in range(cols_x):
                            b = B.data[j][c]
                            if b:
                                row[i * cols_x + j] += a * b
                eq_rows.append(row)
                rhs.append(R.data[r][c])
    if not eq_rows:
        part = Matrix.zeros(rows_x, cols_x)
        kern = null_space(Matrix.zeros(0, nvar))
    else:
        sol = solve(Matrix(eq_rows, len(eq_rows), nvar), rhs)
        if sol is None:
            return None
        part = _unvec(sol.particular, rows_x, cols_x)
        kern = sol.kernel
    return part, [_unvec(v, rows_x, cols_x) for v in kern.basis]


def _unvec(v, rows, cols):
    return Matrix._raw(tuple(tuple(v[i * cols:(i + 1) * cols]) for i in range(rows)), rows, cols)
