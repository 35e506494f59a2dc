"""Crossed modules of Lie algebras ``del: m -> n`` with an action ``D: n -> Der(m)``."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DimensionError
from ..exactla import ZERO, Matrix, Subspace
from ..liealg import (
    LieAlgebra,
    LieHom,
    abelian,
    ab2,
    direct_sum,
    hom_defect,
    heis3,
    derivation_defect,
    subalgebra,
    verify_lie_algebra,
)
from ..report import Report

AXIOM_I = "crossed module axiom (i): del(D(n)m) = [n, del(m)]"
AXIOM_II = "crossed module axiom (ii): D(del(m))m' = [m, m']"


@dataclass(frozen=True)
class CrossedModule:
    m: LieAlgebra
    n: LieAlgebra
    delta: LieHom
    action: tuple  # one endomorphism of m per basis vector of n

    def __post_init__(self):
        object.__setattr__(self, "action", tuple(self.action))
        if self.delta.source != self.m or self.delta.target != self.n:
            raise DimensionError("del must map m to n")
        if len(self.action) != self.n.dim:
            raise DimensionError("need one action matrix per basis vector of n",
                                 expected=self.n.dim, got=len(self.action))
        for D in self.action:
            if D.shape != (self.m.dim, self.m.dim):
                raise DimensionError("action matrices must be endomorphisms of m",
                                     expected=(self.m.dim, self.m.dim), got=D.shape)

    def D(self, y) -> Matrix:
        """The derivation by which ``y`` in ``n`` acts on ``m``."""
        out = Matrix.zeros(self.m.dim, self.m.dim)
        for c, A in zip(y, self.action):
            if c:
                out = out + A.scale(c)
        return out

    def act(self, y, x):
        out = (ZERO,) * self.m.dim
        for c, A in zip(y, self.action):
            if c:
                out = tuple(a + c * b for a, b in zip(out, A.apply(x)))
        return out

    def same_data(self, other: CrossedModule):
        return (self.m == other.m and self.n == other.n
                and self.delta.matrix == other.delta.matrix and self.action == other.action)


def verify_crossed_module(cm: CrossedModule, subject="crossed module") -> Report:
    rep = Report(subject)
    m, n = cm.m, cm.n
    mrep = verify_lie_algebra(m)
    rep.add("m_lie", mrep.ok, "m is a Lie algebra",
            None if mrep.ok else mrep.first_failure().counterexample)
    nrep = verify_lie_algebra(n)
    rep.add("n_lie", nrep.ok, "n is a Lie algebra",
            None if nrep.ok else nrep.first_failure().counterexample)
    bad = hom_defect(cm.delta)
    rep.add("delta_hom", bad is None, "del is a Lie algebra homomorphism", bad)

    bad = None
    for j, D in enumerate(cm.action):
        pair = derivation_defect(m, D)
        if pair is not None:
            bad = {"acting": n.basis_names[j], "pair": list(pair)}
            break
    rep.add("action_derivation", bad is None, "each D(y) is a derivation of m", bad)

    bad = None
    nb = n.basis()
    for i in range(n.dim):
        for j in range(i + 1, n.dim):
            lhs = cm.D(n.bracket(nb[i], nb[j]))
            A, B = cm.action[i], cm.action[j]
            if lhs != A @ B - B @ A:
                bad = [n.basis_names[i], n.basis_names[j]]
                break
        if bad:
            break
    rep.add("action_hom", bad is None, "D([y, y']) = [D(y), D(y')]", bad)

    bad = None
    mb = m.basis()
    for j in range(n.dim):
        for a in range(m.dim):
            lhs = cm.delta(cm.action[j].apply(mb[a]))
            rhs = n.bracket(nb[j], cm.delta(mb[a]))
            if lhs != rhs:
                bad = {"n": n.basis_names[j], "m": m.basis_names[a],
                       "lhs": list(lhs), "rhs": list(rhs)}
                break
        if bad:
            break
    rep.add("axiom_i", bad is None, AXIOM_I, bad)

    bad = None
    for a in range(m.dim):
        Da = cm.D(cm.delta(mb[a]))
        for b in range(m.dim):
            lhs = Da.apply(mb[b])
            rhs = m.bracket(mb[a], mb[b])
            if lhs != rhs:
                bad = {"m": m.basis_names[a], "m'": m.basis_names[b],
                       "lhs": list(lhs), "rhs": list(rhs)}
                break
        if bad:
            break
    rep.add("axiom_ii", bad is None, AXIOM_II, bad)
    rep.derived["dim_m"] = m.dim
    rep.derived["dim_n"] = n.dim
    return rep


# --- standard crossed modules ---------------------------------------------

def heis_cm() -> CrossedModule:
    """``R -> heis3``, ``1 -> Z``, trivial action (the central extension)."""
    m = abelian(1, ["c"])
    n = heis3()
    return CrossedModule(m, n, LieHom(m, n, Matrix([[0], [0], [1]])), [Matrix.zeros(1, 1)] * 3)


def ab_cm(n: LieAlgebra = None) -> CrossedModule:
    """``0 -> n`` with zero action; the discrete Lie 2-algebra on ``n``."""
    n = ab2() if n is None else n
    m = abelian(0)
    return CrossedModule(m, n, LieHom.zero(m, n), [Matrix.zeros(0, 0)] * n.dim)


def ad_cm(L: LieAlgebra) -> CrossedModule:
    """``id: L -> L`` acting by the adjoint representation."""
    return CrossedModule(L, L, LieHom.identity(L), [L.ad(e) for e in L.basis()])


def ideal_cm(L: LieAlgebra, ideal: Subspace) -> CrossedModule:
    """Inclusion of an ideal, acted on by restricted adjoint."""
    m, inc = subalgebra(L, ideal)
    sel = ideal.selection()
    action = [sel @ L.ad(e) @ inc.matrix for e in L.basis()]
    return CrossedModule(m, L, inc, action)


def abelian_cm(delta: Matrix) -> CrossedModule:
    """A 2-term complex of vector spaces viewed as a crossed module."""
    m = abelian(delta.cols, [f"u{i + 1}" for i in range(delta.cols)])
    n = abelian(delta.rows, [f"w{i + 1}" for i in range(delta.rows)])
    return CrossedModule(m, n, LieHom(m, n, delta), [Matrix.zeros(m.dim, m.dim)] * n.dim)


def direct_sum_cm(a: CrossedModule, b: CrossedModule) -> CrossedModule:
    m = direct_sum(a.m, b.m)
    n = direct_sum(a.n, b.n)
    delta = LieHom(m, n, Matrix.block_diag(a.delta.matrix, b.delta.matrix))
    action = [Matrix.block_diag(D, Matrix.zeros(b.m.dim, b.m.dim)) for D in a.action]
    action += [Matrix.block_diag(Matrix.zeros(a.m.dim, a.m.dim), D) for D in b.action]
    return CrossedModule(m, n, delta, action)
