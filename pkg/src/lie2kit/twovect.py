"""2-vector spaces as 2-term complexes ``del: U -> W``.

A morphism of the action groupoid ``{U x W => W}`` is a :class:`Cell`
``(u, v)`` going from ``v`` to ``v + del(u)``.  Composition is written
right to left: ``compose_cells(c2, c1)`` means ``c1`` first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError, InvalidStructureError, NotComposableError
from .exactla import (
    ZERO,
    Matrix,
    lincomb,
    null_space,
    vadd,
    vector,
    vscale,
    vsub,
    zero_vector,
)
from .report import Report


@dataclass(frozen=True)
class TwoTermComplex:
    U: int
    W: int
    delta: Matrix

    def __post_init__(self):
        if self.delta.shape != (self.W, self.U):
            raise DimensionError("boundary map must be W x U",
                                 expected=(self.W, self.U), got=self.delta.shape)

    def boundary(self, u):
        return self.delta.apply(tuple(u))


@dataclass(frozen=True)
class Cell:
    u: tuple
    v: tuple

    def __post_init__(self):
        object.__setattr__(self, "u", vector(self.u))
        object.__setattr__(self, "v", vector(self.v))


def source(cx: TwoTermComplex, c: Cell):
    return c.v


def target(cx: TwoTermComplex, c: Cell):
    return vadd(c.v, cx.boundary(c.u))


def identity_cell(cx: TwoTermComplex, v) -> Cell:
    return Cell(zero_vector(cx.U), v)


def compose_cells(cx: TwoTermComplex, c2: Cell, c1: Cell) -> Cell:
    t1 = target(cx, c1)
    if c2.v != t1:
        raise NotComposableError(
            "cells are not composable: source of the second is not the target of the first",
            second_source=c2.v, first_target=t1,
        )
    return Cell(vadd(c2.u, c1.u), c1.v)


def invert_cell(cx: TwoTermComplex, c: Cell) -> Cell:
    return Cell(vscale(-1, c.u), target(cx, c))


def standard_composition(V1_dim: int, s: Matrix, unit: Matrix) -> Matrix:
    """The only linear composition compatible with the units.

    On composable pairs ``m(a, b) = a + b - unit(s(a))``; returned as a map
    on all of ``V1 (+) V1``.
    """
    return Matrix.hstack(Matrix.identity(V1_dim) - unit @ s, Matrix.identity(V1_dim))


def complex_from_category(V1_dim: int, V0_dim: int, s: Matrix, t: Matrix, unit: Matrix):
    """2-term complex ``t|ker s : ker s -> V0`` of a linear category.

    Returns ``(complex, iso)`` where ``iso`` maps ``V1`` onto ``U (+) W`` by
    ``w -> (w - unit(s(w)), s(w))``; the ``U`` part is written in the
    echelon basis of ``ker s``.
    """
    for name, M in (("s", s), ("t", t)):
        if M.shape != (V0_dim, V1_dim):
            raise DimensionError(f"{name} must be {V0_dim}x{V1_dim}", got=M.shape)
    if unit.shape != (V1_dim, V0_dim):
        raise DimensionError(f"unit must be {V1_dim}x{V0_dim}", got=unit.shape)
    ident = Matrix.identity(V0_dim)
    for name, M in (("s", s), ("t", t)):
        if M @ unit != ident:
            raise InvalidStructureError(
                f"unit is not a section of {name}: {name} o unit != id", map=name
            )
    K = null_space(s)
    delta = t @ K.inclusion()
    cx = TwoTermComplex(K.dim, V0_dim, delta)
    iso = Matrix.vstack(K.selection() @ (Matrix.identity(V1_dim) - unit @ s), s)
    return cx, iso


def cell_of(cx: TwoTermComplex, w_image) -> Cell:
    """Split an ``U (+) W`` vector (e.g. ``iso @ w``) into a cell."""
    w_image = tuple(w_image)
    return Cell(w_image[: cx.U], w_image[cx.U:])


# --- cocycles -----------------------------------------------------------------

@dataclass(frozen=True)
class CocycleData:
    """Objects ``v_i``, arrows ``w_ij = (u_ij, v_j)`` from ``v_j`` to ``v_i`` and weights."""

    complex: TwoTermComplex
    objects: tuple
    morphisms: tuple  # morphisms[i][j] = u_ij
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(vector(v) for v in self.objects))
        object.__setattr__(
            self, "morphisms", tuple(tuple(vector(u) for u in row) for row in self.morphisms)
        )
        object.__setattr__(self, "weights", vector(self.weights))
        n = len(self.objects)
        if len(self.weights) != n or len(self.morphisms) != n or any(
            len(row) != n for row in self.morphisms
        ):
            raise DimensionError("cocycle needs s objects, s weights and an s x s arrow table",
                                 objects=n)
        for v in self.objects:
            if len(v) != self.complex.W:
                raise DimensionError("object has wrong dimension", expected=self.complex.W)
        for row in self.morphisms:
            for u in row:
                if len(u) != self.complex.U:
                    raise DimensionError("arrow vector has wrong dimension",
                                         expected=self.complex.U)

    @property
    def size(self):
        return len(self.objects)

    def arrow(self, i, j) -> Cell:
        return Cell(self.morphisms[i][j], self.objects[j])


def verify_cocycle(d: CocycleData, subject="cocycle") -> Report:
    rep = Report(subject)
    n = d.size
    u, v = d.morphisms, d.objects
    total = sum(d.weights, ZERO)
    rep.add("weights_sum", total == 1, "sum of weights = 1", {"sum": total})

    def first(pred, indices):
        for idx in indices:
            if not pred(*idx):
                return idx
        return None

    pairs = [(i, j) for i in range(n) for j in range(n)]
    bad = first(lambda i: not any(u[i][i]), [(i,) for i in range(n)])
    rep.add("unit", bad is None, "w_ii = 1 (u_ii = 0)", bad and {"i": bad[0] + 1})
    bad = first(lambda i, j: u[j][i] == vscale(-1, u[i][j]), pairs)
    rep.add("inverse", bad is None, "w_ji = w_ij^-1 (u_ji = -u_ij)",
            bad and {"i": bad[0] + 1, "j": bad[1] + 1})
    bad = first(lambda i, j, k: vsub(u[i][k], u[j][k]) == u[i][j],
                [(i, j, k) for i in range(n) for j in range(n) for k in range(n)])
    rep.add("composition", bad is None, "w_ij w_jk = w_ik (u_ik - u_jk = u_ij)",
            bad and {"i": bad[0] + 1, "j": bad[1] + 1, "k": bad[2] + 1})
    bad = first(lambda i, j: d.complex.boundary(u[i][j]) == vsub(v[i], v[j]), pairs)
    rep.add("boundary", bad is None, "del(u_ij) = v_i - v_j",
            bad and {"i": bad[0] + 1, "j": bad[1] + 1})
    outside = [k + 1 for k, lam in enumerate(d.weights) if not (0 <= lam <= 1)]
    rep.derived["weights_in_unit_interval"] = not outside
    if outside:
        rep.derived["weights_outside_unit_interval"] = outside
    return rep


def resolve_cocycle(d: CocycleData):
    """Cells ``z_i`` from ``sum_k lambda_k v_k`` to ``v_i`` with ``w_ij = z_i z_j^-1``."""
    rep = verify_cocycle(d)
    if not rep.ok:
        bad = rep.first_failure()
        raise InvalidStructureError(
            f"invalid cocycle: condition {bad.check_id!r} fails ({bad.label})",
            report=rep, condition=bad.check_id,
        )
    lam = d.weights
    base = lincomb(lam, d.objects, d.complex.W)
    return [
        Cell(lincomb(lam, [d.morphisms[i][k] for k in range(d.size)], d.complex.U), base)
        for i in range(d.size)
    ]


def cocycle_identities(d: CocycleData, zs):
    """Matrix of booleans: does ``compose(z_i, z_j^-1) == w_ij`` hold?"""
    cx = d.complex
    return [
        [compose_cells(cx, zs[i], invert_cell(cx, zs[j])) == d.arrow(i, j) for j in range(d.size)]
        for i in range(d.size)
    ]


def random_cocycle(rng, size: int, U: int, W: int, max_entry=3) -> CocycleData:
    """A valid cocycle ``u_ij = a_i - a_j``, ``v_i = v_0 + del(a_i)``.

    Weights are random rationals summing to 1; some may be negative.
    """
    from fractions import Fraction

    def num():
        return Fraction(rng.randint(-max_entry, max_entry), rng.choice((1, 1, 2, 3)))

    delta = Matrix([[num() for _ in range(U)] for _ in range(W)], W, U)
    cx = TwoTermComplex(U, W, delta)
    a = [tuple(num() for _ in range(U)) for _ in range(size)]
    v0 = tuple(num() for _ in range(W))
    objects = [vadd(v0, cx.boundary(ai)) for ai in a]
    morphisms = [[vsub(a[i], a[j]) for j in range(size)] for i in range(size)]
    weights = [num() for _ in range(size - 1)]
    weights.append(1 - sum(weights, ZERO))
    return CocycleData(cx, objects, morphisms, weights)
