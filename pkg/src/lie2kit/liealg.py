"""Finite-dimensional Lie algebras given by structure constants.

``constants[i][j][k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.
All algebras here are small (dimension at most a few dozen), so the
constants are kept dense; a sparse view is cached for bracket evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Sequence

from .errors import DimensionError, NotAnIdealError, NotClosedError
from .exactla import (
    ZERO,
    Matrix,
    Subspace,
    complement_section,
    is_zero,
    null_space,
    pullback_space,
    quotient,
    scalar,
    unit_vector,
    zero_vector,
)
from .report import Report


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    constants: tuple
    basis_names: tuple = field(default=None)

    def __post_init__(self):
        d = len(self.constants)
        consts = tuple(
            tuple(tuple(scalar(x) for x in row_k) for row_k in row_j) for row_j in self.constants
        )
        for row in consts:
            if len(row) != d or any(len(r) != d for r in row):
                raise DimensionError("structure constants must form a d x d x d array", dim=d)
        object.__setattr__(self, "constants", consts)
        names = self.basis_names
        if names is None:
            names = tuple(f"e{i}" for i in range(d))
        names = tuple(str(n) for n in names)
        if len(names) != d:
            raise DimensionError("need one basis name per dimension", dim=d, names=len(names))
        object.__setattr__(self, "basis_names", names)

    @classmethod
    def from_brackets(cls, names: Sequence[str], brackets: dict):
        """Build from ``{(a, b): {c: coeff}}``; ``[b, a]`` is filled in by antisymmetry."""
        names = tuple(names)
        idx = {n: i for i, n in enumerate(names)}
        d = len(names)
        c = [[[ZERO] * d for _ in range(d)] for _ in range(d)]
        for (a, b), value in brackets.items():
            i, j = idx[a], idx[b]
            for name, coeff in value.items():
                k = idx[name]
                c[i][j][k] = scalar(coeff)
                c[j][i][k] = -scalar(coeff)
        return cls(c, names)

    @property
    def dim(self):
        return len(self.constants)

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.constants == other.constants

    def __hash__(self):
        return hash(self.constants)

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, basis={list(self.basis_names)})"

    @cached_property
    def _table(self):
        d = self.dim
        return {
            (i, j): tuple((k, x) for k, x in enumerate(self.constants[i][j]) if x)
            for i in range(d)
            for j in range(d)
            if not is_zero(self.constants[i][j])
        }

    def bracket(self, x, y):
        out = [ZERO] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        table = self._table
        for i, a in xs:
            for j, b in ys:
                entry = table.get((i, j))
                if entry:
                    ab = a * b
                    for k, c in entry:
                        out[k] += ab * c
        return tuple(out)

    def basis(self):
        return [unit_vector(self.dim, i) for i in range(self.dim)]

    def ad(self, x) -> Matrix:
        """Matrix of ``y -> [x, y]``."""
        return Matrix.from_columns([self.bracket(x, e) for e in self.basis()], self.dim)

    def is_abelian(self):
        return not self._table

    def zero(self):
        return zero_vector(self.dim)


@dataclass(frozen=True)
class LieHom:
    source: LieAlgebra
    target: LieAlgebra
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise DimensionError(
                f"hom matrix must be {self.target.dim}x{self.source.dim}, "
                f"got {self.matrix.rows}x{self.matrix.cols}",
                expected=(self.target.dim, self.source.dim), got=self.matrix.shape,
            )

    def __call__(self, x):
        return self.matrix.apply(x)

    def __matmul__(self, other: LieHom) -> LieHom:
        if other.target != self.source:
            raise DimensionError("cannot compose homs with mismatched middle algebra")
        return LieHom(other.source, self.target, self.matrix @ other.matrix)

    @classmethod
    def identity(cls, L):
        return cls(L, L, Matrix.identity(L.dim))

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, Matrix.zeros(target.dim, source.dim))

    def kernel(self):
        return self.matrix.kernel()

    def image(self):
        return self.matrix.image()


# --- named algebras -------------------------------------------------------

def abelian(n: int, names=None) -> LieAlgebra:
    if names is None:
        names = [f"E{i + 1}" for i in range(n)]
    return LieAlgebra([[[ZERO] * n for _ in range(n)] for _ in range(n)], names)


def ab2() -> LieAlgebra:
    return abelian(2, ["E1", "E2"])


def heis3() -> LieAlgebra:
    return LieAlgebra.from_brackets(["X", "Y", "Z"], {("X", "Y"): {"Z": 1}})


def heisenberg(n: int) -> LieAlgebra:
    """The (2n+1)-dimensional Heisenberg algebra: [X_i, Y_i] = Z."""
    xs = [f"X{i + 1}" for i in range(n)]
    ys = [f"Y{i + 1}" for i in range(n)]
    return LieAlgebra.from_brackets(xs + ys + ["Z"], {(x, y): {"Z": 1} for x, y in zip(xs, ys)})


def sl2() -> LieAlgebra:
    return LieAlgebra.from_brackets(
        ["H", "E", "F"],
        {("H", "E"): {"E": 2}, ("H", "F"): {"F": -2}, ("E", "F"): {"H": 1}},
    )


def direct_sum(g: LieAlgebra, h: LieAlgebra, prefixes=("", "")) -> LieAlgebra:
    d = g.dim + h.dim
    c = [[[ZERO] * d for _ in range(d)] for _ in range(d)]
    for i in range(g.dim):
        for j in range(g.dim):
            for k in range(g.dim):
                c[i][j][k] = g.constants[i][j][k]
    o = g.dim
    for i in range(h.dim):
        for j in range(h.dim):
            for k in range(h.dim):
                c[o + i][o + j][o + k] = h.constants[i][j][k]
    names = [prefixes[0] + n for n in g.basis_names] + [prefixes[1] + n for n in h.basis_names]
    if len(set(names)) < len(names):
        names = [f"{n}.{t}" for t, alg in (("1", g), ("2", h)) for n in alg.basis_names]
    return LieAlgebra(c, names)


# --- verification ---------------------------------------------------------

def verify_lie_algebra(L: LieAlgebra, subject="lie algebra") -> Report:
    rep = Report(subject)
    d, c, names = L.dim, L.constants, L.basis_names
    bad = None
    for i in range(d):
        for j in range(i, d):
            for k in range(d):
                if c[i][j][k] != -c[j][i][k]:
                    bad = (names[i], names[j])
                    break
            if bad:
                break
        if bad:
            break
    rep.add("antisymmetry", bad is None, "[x, y] = -[y, x]", bad)
    bad = None
    basis = L.basis()
    for i in range(d):
        for j in range(i + 1, d):
            eij = L.bracket(basis[i], basis[j])
            for k in range(j + 1, d):
                ejk = L.bracket(basis[j], basis[k])
                eki = L.bracket(basis[k], basis[i])
                total = tuple(
                    a + b + e
                    for a, b, e in zip(
                        L.bracket(eij, basis[k]), L.bracket(ejk, basis[i]), L.bracket(eki, basis[j])
                    )
                )
                if not is_zero(total):
                    bad = {"triple": [names[i], names[j], names[k]], "jacobiator": list(total)}
                    break
            if bad:
                break
        if bad:
            break
    rep.add("jacobi", bad is None, "[[x,y],z] + [[y,z],x] + [[z,x],y] = 0", bad)
    rep.derived["dim"] = d
    return rep


def hom_defect(f: LieHom):
    """First basis pair where ``f[x, y] != [f x, f y]``, or ``None``."""
    S, T = f.source, f.target
    cols = f.matrix.columns()
    basis = S.basis()
    for i in range(S.dim):
        for j in range(i + 1, S.dim):
            lhs = f(S.bracket(basis[i], basis[j]))
            rhs = T.bracket(cols[i], cols[j])
            if lhs != rhs:
                return (S.basis_names[i], S.basis_names[j])
    return None


def verify_hom(f: LieHom, subject="lie algebra hom") -> Report:
    rep = Report(subject)
    bad = hom_defect(f)
    rep.add("bracket_preserved", bad is None, "f[x, y] = [f x, f y]", bad)
    return rep


def is_hom(f: LieHom) -> bool:
    return hom_defect(f) is None


# --- constructions --------------------------------------------------------

def subalgebra(L: LieAlgebra, W: Subspace, names=None):
    """The subspace ``W`` as a Lie algebra, coordinates read at the pivots.

    Returns ``(algebra, inclusion)``.  Raises :class:`NotClosedError` when
    ``W`` is not closed under the bracket.
    """
    if W.ambient_dim != L.dim:
        raise DimensionError("subspace lives in the wrong ambient space",
                             ambient=W.ambient_dim, dim=L.dim)
    r = W.dim
    c = [[[ZERO] * r for _ in range(r)] for _ in range(r)]
    for a in range(r):
        for b in range(a + 1, r):
            br = L.bracket(W.basis[a], W.basis[b])
            if not W.contains(br):
                raise NotClosedError(
                    "subspace is not closed under the bracket",
                    pair=(a, b),
                )
            co = W.coords(br, check=False)
            for k in range(r):
                c[a][b][k] = co[k]
                c[b][a][k] = -co[k]
    if names is None:
        names = []
        for b in W.basis:
            nz = [i for i, x in enumerate(b) if x]
            if len(nz) == 1 and b[nz[0]] == 1:
                names.append(L.basis_names[nz[0]])
            else:
                names.append(None)
        if None in names or len(set(names)) < len(names):
            names = [f"w{i}" for i in range(r)]
    A = LieAlgebra(c, names)
    return A, LieHom(A, L, W.inclusion())


class FiberProduct(NamedTuple):
    algebra: LieAlgebra
    pr1: LieHom
    pr2: LieHom
    space: Subspace  # inside source(f) (+) source(g)


def lie_fiber_product(f: LieHom, g: LieHom) -> FiberProduct:
    """``{(a, b) : f a = g b}`` with the componentwise bracket."""
    if f.target != g.target or f.matrix.rows != g.matrix.rows:
        raise DimensionError("fiber product needs a shared target",
                             f_target=f.target.dim, g_target=g.target.dim)
    W = pullback_space(f.matrix, g.matrix)
    total = direct_sum(f.source, g.source)
    A, inc = subalgebra(total, W, names=[f"w{i}" for i in range(W.dim)])
    n1 = f.source.dim
    pr1 = Matrix.selection(total.dim, range(n1)) @ inc.matrix
    pr2 = Matrix.selection(total.dim, range(n1, total.dim)) @ inc.matrix
    return FiberProduct(A, LieHom(A, f.source, pr1), LieHom(A, g.source, pr2), W)


def is_ideal(L: LieAlgebra, I: Subspace):
    for i, e in enumerate(L.basis()):
        for w in I.basis:
            if not I.contains(L.bracket(e, w)):
                return (L.basis_names[i], w)
    return None


def lie_quotient(L: LieAlgebra, I: Subspace):
    """``L / I`` with the deterministic complement of :func:`exactla.quotient`.

    Returns ``(algebra, projection)``.
    """
    bad = is_ideal(L, I)
    if bad is not None:
        raise NotAnIdealError(
            f"subspace is not an ideal: [{bad[0]}, {list(map(str, bad[1]))}] leaves it",
            pair=bad,
        )
    q, proj = quotient(L.dim, I)
    sec = complement_section(L.dim, I)
    lifts = sec.columns()
    c = [[[ZERO] * q for _ in range(q)] for _ in range(q)]
    for a in range(q):
        for b in range(a + 1, q):
            v = proj.apply(L.bracket(lifts[a], lifts[b]))
            for k in range(q):
                c[a][b][k] = v[k]
                c[b][a][k] = -v[k]
    keep = [i for i in range(L.dim) if i not in set(I.pivots)]
    Q = LieAlgebra(c, [L.basis_names[i] for i in keep])
    return Q, LieHom(L, Q, proj)


def center(L: LieAlgebra) -> Subspace:
    # x is central iff ad(e_i) x = 0 for every i, i.e. stack of -ad(e_i)
    rows = []
    for e in L.basis():
        rows.extend(L.ad(e).data)
    return null_space(Matrix(rows, len(rows), L.dim))


def end_vec(M: Matrix):
    return tuple(x for row in M.data for x in row)


def end_unvec(v, d) -> Matrix:
    return Matrix([v[i * d:(i + 1) * d] for i in range(d)], d, d)


def commutator(A: Matrix, B: Matrix) -> Matrix:
    return A @ B - B @ A


def derivation_space(L: LieAlgebra) -> Subspace:
    """Derivations of ``L`` as a subspace of ``End(L)`` (row-major vectors).

    Unknown ``M`` must satisfy ``M[e_i, e_j] = [M e_i, e_j] + [e_i, M e_j]``.
    """
    d = L.dim
    c = L.constants
    rows = []
    for i in range(d):
        for j in range(i + 1, d):
            for k in range(d):
                row = [ZERO] * (d * d)
                for l in range(d):
                    # M[e_i,e_j]_k = sum_l c_ij^l M[k][l]
                    if c[i][j][l]:
                        row[k * d + l] += c[i][j][l]
                    # [M e_i, e_j]_k = sum_l M[l][i] c_lj^k
                    if c[l][j][k]:
                        row[l * d + i] -= c[l][j][k]
                    if c[i][l][k]:
                        row[l * d + j] -= c[i][l][k]
                if any(row):
                    rows.append(row)
    D = null_space(Matrix(rows, len(rows), d * d))
    mats = [end_unvec(b, d) for b in D.basis]
    for A in mats:
        for B in mats:
            if not D.contains(end_vec(commutator(A, B))):
                raise NotClosedError("derivations not closed under commutator")
    return D


def derivation_defect(L: LieAlgebra, M: Matrix):
    """First basis pair where ``M`` fails the Leibniz rule, or ``None``."""
    basis = L.basis()
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            x, y = basis[i], basis[j]
            lhs = M.apply(L.bracket(x, y))
            rhs = tuple(a + b for a, b in zip(L.bracket(M.apply(x), y), L.bracket(x, M.apply(y))))
            if lhs != rhs:
                return (L.basis_names[i], L.basis_names[j])
    return None
