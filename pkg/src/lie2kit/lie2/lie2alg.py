"""Strict Lie 2-algebras: categories internal to Lie algebras.

The composition is stored as a linear map on all of ``V1 (+) V1``; only
its restriction to composable pairs ``{(a, b) : s(a) = t(b)}`` matters.
Composition reads right to left, so ``compose(a, b)`` is ``b`` then ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..errors import DimensionError, InvalidStructureError, NotClosedError
from ..exactla import Matrix, Subspace, equalizer_space, null_space, pullback_space
from ..liealg import (
    LieAlgebra,
    LieHom,
    direct_sum,
    hom_defect,
    lie_fiber_product,
    subalgebra,
    verify_lie_algebra,
)
from ..report import Report
from ..twovect import complex_from_category, standard_composition
from .crossed import CrossedModule, verify_crossed_module


@dataclass(frozen=True, eq=False)
class Lie2Algebra:
    V1: LieAlgebra
    V0: LieAlgebra
    s: Matrix
    t: Matrix
    unit: Matrix
    comp: Matrix

    def __post_init__(self):
        d1, d0 = self.V1.dim, self.V0.dim
        for name in ("s", "t"):
            if getattr(self, name).shape != (d0, d1):
                raise DimensionError(f"{name} must be {d0}x{d1}", got=getattr(self, name).shape)
        if self.unit.shape != (d1, d0):
            raise DimensionError(f"unit must be {d1}x{d0}", got=self.unit.shape)
        if self.comp.shape != (d1, 2 * d1):
            raise DimensionError(f"composition must be {d1}x{2 * d1}", got=self.comp.shape)

    def _key(self):
        return (self.V1, self.V0, self.s, self.t, self.unit, self.comp)

    def __eq__(self, other):
        return isinstance(other, Lie2Algebra) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Lie2Algebra(dim V1={self.V1.dim}, dim V0={self.V0.dim})"

    @property
    def source_hom(self):
        return LieHom(self.V1, self.V0, self.s)

    @property
    def target_hom(self):
        return LieHom(self.V1, self.V0, self.t)

    @property
    def unit_hom(self):
        return LieHom(self.V0, self.V1, self.unit)

    @cached_property
    def composable(self) -> Subspace:
        """Pairs ``(a, b)`` with ``s(a) = t(b)`` inside ``V1 (+) V1``."""
        return pullback_space(self.s, self.t)

    @cached_property
    def arrows2(self):
        """The fiber product ``V1 x_{s,V0,t} V1`` as a Lie algebra."""
        return lie_fiber_product(self.source_hom, self.target_hom)

    @property
    def composition_hom(self) -> LieHom:
        fp = self.arrows2
        return LieHom(fp.algebra, self.V1, self.comp @ fp.space.inclusion())

    def compose(self, a, b):
        return self.comp.apply(tuple(a) + tuple(b))

    @cached_property
    def inversion(self) -> Matrix:
        """``i(g) = 1_{s g} + 1_{t g} - g``, the inverse in a linear category."""
        return self.unit @ self.s + self.unit @ self.t - Matrix.identity(self.V1.dim)

    def identity_arrow(self, x):
        return self.unit.apply(tuple(x))


def _direct_bracket(algs, x, y):
    out, o = [], 0
    for A in algs:
        out.extend(A.bracket(x[o:o + A.dim], y[o:o + A.dim]))
        o += A.dim
    return tuple(out)


def map_hom_defect(algs, W: Subspace, M: Matrix, target: LieAlgebra):
    """First pair of basis vectors of ``W`` on which ``M`` fails to preserve brackets.

    ``W`` lives in the direct sum of ``algs``; ``W`` is assumed closed.
    """
    basis = W.basis
    images = [M.apply(b) for b in basis]
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            lhs = M.apply(_direct_bracket(algs, basis[a], basis[b]))
            if lhs != target.bracket(images[a], images[b]):
                return (a, b)
    return None


def closure_defect(algs, W: Subspace):
    basis = W.basis
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            if not W.contains(_direct_bracket(algs, basis[a], basis[b])):
                return (a, b)
    return None


def verify_lie2(A: Lie2Algebra, subject="Lie 2-algebra") -> Report:
    rep = Report(subject)
    V1, V0 = A.V1, A.V0
    d1 = V1.dim
    for name, L in (("V1_lie", V1), ("V0_lie", V0)):
        r = verify_lie_algebra(L)
        rep.add(name, r.ok, f"{name[:2]} is a Lie algebra",
                None if r.ok else r.first_failure().counterexample)
    for name, f in (("s_hom", A.source_hom), ("t_hom", A.target_hom), ("unit_hom", A.unit_hom)):
        bad = hom_defect(f)
        rep.add(name, bad is None, f"{name[:-4]} is a Lie algebra map", bad)
    ident = Matrix.identity(V0.dim)
    rep.add("s_unit", A.s @ A.unit == ident, "s o unit = id")
    rep.add("t_unit", A.t @ A.unit == ident, "t o unit = id")

    W = A.composable
    bad = closure_defect((V1, V1), W)
    if bad is None:
        bad = map_hom_defect((V1, V1), W, A.comp, V1)
        rep.add("comp_hom", bad is None, "composition is a Lie algebra map",
                bad and {"composable_basis_pair": list(bad)})
    else:
        rep.add("comp_hom", False, "composable pairs form a subalgebra",
                {"not_closed": list(bad)})

    s_bad = t_bad = None
    for w in W.basis:
        a, b = w[:d1], w[d1:]
        c = A.comp.apply(w)
        if s_bad is None and A.s.apply(c) != A.s.apply(b):
            s_bad = {"pair": [list(a), list(b)]}
        if t_bad is None and A.t.apply(c) != A.t.apply(a):
            t_bad = {"pair": [list(a), list(b)]}
    rep.add("comp_source", s_bad is None, "s(g2 g1) = s(g1)", s_bad)
    rep.add("comp_target", t_bad is None, "t(g2 g1) = t(g2)", t_bad)

    lu = ru = None
    for i, g in enumerate(V1.basis()):
        if lu is None and A.compose(A.identity_arrow(A.t.apply(g)), g) != g:
            lu = V1.basis_names[i]
        if ru is None and A.compose(g, A.identity_arrow(A.s.apply(g))) != g:
            ru = V1.basis_names[i]
    rep.add("left_unit", lu is None, "1_{t g} g = g", lu)
    rep.add("right_unit", ru is None, "g 1_{s g} = g", ru)

    triples = equalizer_space([d1, d1, d1], [(0, A.s, 1, A.t), (1, A.s, 2, A.t)])
    bad = None
    for w in triples.basis:
        a, b, c = w[:d1], w[d1:2 * d1], w[2 * d1:]
        if A.compose(A.compose(a, b), c) != A.compose(a, A.compose(b, c)):
            bad = {"triple": [list(a), list(b), list(c)]}
            break
    rep.add("associativity", bad is None, "(g3 g2) g1 = g3 (g2 g1)", bad)
    rep.derived["dim_V1"] = d1
    rep.derived["dim_V0"] = V0.dim
    return rep


def discrete_lie2(L: LieAlgebra) -> Lie2Algebra:
    """Only identity arrows: ``V1 = V0 = L``."""
    I = Matrix.identity(L.dim)
    return Lie2Algebra(L, L, I, I, I, standard_composition(L.dim, I, I))


def lie2_of_crossed_module(cm: CrossedModule, check=True) -> Lie2Algebra:
    """Semidirect product ``V1 = m (+) n`` over ``V0 = n``.

    Bracket ``[(x1, y1), (x2, y2)] = ([x1, x2] + D(y1)x2 - D(y2)x1, [y1, y2])``,
    ``s(x, y) = y``, ``t(x, y) = del(x) + y``, ``unit(y) = (0, y)`` and
    ``(x1, y1)(x2, y2) = (x1 + x2, y2)``.  With ``check=False`` the data is
    assembled even from an invalid crossed module.
    """
    if check:
        rep = verify_crossed_module(cm)
        if not rep.ok:
            bad = rep.first_failure()
            raise InvalidStructureError(
                f"not a crossed module: {bad.check_id} fails ({bad.label})",
                report=rep, axiom=bad.check_id,
            )
    m, n = cm.m, cm.n
    dm, dn = m.dim, n.dim
    d = dm + dn
    c = [[[0] * d for _ in range(d)] for _ in range(d)]
    for a in range(dm):
        for b in range(dm):
            for k in range(dm):
                c[a][b][k] = m.constants[a][b][k]
    for j in range(dn):
        Dj = cm.action[j]
        for b in range(dm):
            for k in range(dm):
                # [(0, f_j), (e_b, 0)] = (D(f_j) e_b, 0)
                c[dm + j][b][k] = Dj.data[k][b]
                c[b][dm + j][k] = -Dj.data[k][b]
    for i in range(dn):
        for j in range(dn):
            for k in range(dn):
                c[dm + i][dm + j][dm + k] = n.constants[i][j][k]
    names = [f"m.{x}" for x in m.basis_names] + [f"n.{y}" for y in n.basis_names]
    V1 = LieAlgebra(c, names)
    s = Matrix.hstack(Matrix.zeros(dn, dm), Matrix.identity(dn))
    t = Matrix.hstack(cm.delta.matrix, Matrix.identity(dn))
    unit = Matrix.vstack(Matrix.zeros(dm, dn), Matrix.identity(dn))
    comp = Matrix.vstack(
        Matrix.hstack(Matrix.identity(dm), Matrix.zeros(dm, dn), Matrix.identity(dm),
                      Matrix.zeros(dm, dn)),
        Matrix.hstack(Matrix.zeros(dn, dm), Matrix.zeros(dn, dn), Matrix.zeros(dn, dm),
                      Matrix.identity(dn)),
    )
    return Lie2Algebra(V1, n, s, t, unit, comp)


def crossed_module_of_lie2(A: Lie2Algebra, check=True) -> CrossedModule:
    """``del = t|ker s : ker s -> V0`` with ``D(y)x = [unit(y), x]`` computed in V1."""
    if check:
        rep = verify_lie2(A)
        if not rep.ok:
            bad = rep.first_failure()
            raise InvalidStructureError(
                f"not a Lie 2-algebra: {bad.check_id} fails ({bad.label})",
                report=rep, axiom=bad.check_id,
            )
    K = null_space(A.s)
    try:
        m, inc = subalgebra(A.V1, K)
    except NotClosedError as exc:
        raise InvalidStructureError("ker s is not a subalgebra of V1") from exc
    if m.basis_names and all(nm.startswith("m.") for nm in m.basis_names):
        m = LieAlgebra(m.constants, [nm[2:] for nm in m.basis_names])
        inc = LieHom(m, A.V1, inc.matrix)
    sel = K.selection()
    delta = LieHom(m, A.V0, A.t @ inc.matrix)
    action = [sel @ A.V1.ad(A.identity_arrow(y)) @ inc.matrix for y in A.V0.basis()]
    return CrossedModule(m, A.V0, delta, action)


def canonical_identification(A: Lie2Algebra):
    """Matrices ``(F1, F0)`` identifying ``A`` with the Lie 2-algebra of its crossed module.

    ``F1(w) = (w - unit(s w), s w)`` in ``ker s (+) V0``; ``F0`` is the identity.
    """
    _, iso = complex_from_category(A.V1.dim, A.V0.dim, A.s, A.t, A.unit)
    return iso, Matrix.identity(A.V0.dim)


def direct_sum_lie2(A: Lie2Algebra, B: Lie2Algebra) -> Lie2Algebra:
    V1 = direct_sum(A.V1, B.V1)
    V0 = direct_sum(A.V0, B.V0)
    d1a, d1b = A.V1.dim, B.V1.dim
    ca, cb = A.comp, B.comp
    # comp on (a1, b1, a2, b2) -> (ca(a1, a2), cb(b1, b2))
    comp = Matrix.vstack(
        Matrix.hstack(_cols(ca, 0, d1a), Matrix.zeros(d1a, d1b),
                      _cols(ca, d1a, 2 * d1a), Matrix.zeros(d1a, d1b)),
        Matrix.hstack(Matrix.zeros(d1b, d1a), _cols(cb, 0, d1b), Matrix.zeros(d1b, d1a),
                      _cols(cb, d1b, 2 * d1b)),
    )
    return Lie2Algebra(
        V1, V0,
        Matrix.block_diag(A.s, B.s), Matrix.block_diag(A.t, B.t),
        Matrix.block_diag(A.unit, B.unit), comp,
    )


def _cols(M: Matrix, lo, hi) -> Matrix:
    return Matrix.from_columns(M.columns()[lo:hi], M.rows)
