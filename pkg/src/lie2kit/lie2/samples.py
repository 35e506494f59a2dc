"""Random instances: strict functor chains and perturbed crossed modules.

Everything is driven by a ``random.Random`` so runs are reproducible from a seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ..exactla import Matrix, Subspace, solve_matrix_equations
from ..liealg import LieAlgebra, LieHom, abelian, ab2, heis3, sl2
from .crossed import CrossedModule, ab_cm, abelian_cm, ad_cm, direct_sum_cm, heis_cm, ideal_cm
from .functors import Lie2Functor, functor_of_crossed_map
from .lie2alg import lie2_of_crossed_module


def rand_scalar(rng: random.Random, lo=-3, hi=3, frac=0.2):
    n = rng.randint(lo, hi)
    if rng.random() < frac:
        return Fraction(n, rng.choice((2, 3)))
    return Fraction(n)


def rand_matrix(rng, rows, cols, **kw):
    return Matrix([[rand_scalar(rng, **kw) for _ in range(cols)] for _ in range(rows)], rows, cols)


def rand_invertible(rng, n):
    while True:
        M = rand_matrix(rng, n, n, frac=0)
        if M.is_bijective():
            return M


# --- automorphisms -------------------------------------------------------

def heis_automorphism(rng):
    """``X -> aX + cY + eZ, Y -> bX + dY + fZ, Z -> (ad - bc)Z``."""
    while True:
        a, b, c, d, e, f = (rand_scalar(rng) for _ in range(6))
        det = a * d - b * c
        if det:
            return Matrix([[a, b, 0], [c, d, 0], [e, f, det]])


def _exp_nilpotent(N: Matrix):
    n = N.rows
    out, term = Matrix.identity(n), Matrix.identity(n)
    for k in range(1, n + 1):
        term = (term @ N).scale(Fraction(1, k))
        if term.is_zero():
            break
        out = out + term
    return out


def sl2_automorphism(rng, steps=2):
    L = sl2()
    E, F = L.basis()[1], L.basis()[2]
    out = Matrix.identity(3)
    for _ in range(steps):
        t = rand_scalar(rng, -2, 2, frac=0.3)
        out = _exp_nilpotent(L.ad(rng.choice((E, F))).scale(t)) @ out
    return out


# --- functor chains --------------------------------------------------------

class _Node:
    """A crossed module with its Lie 2-algebra, built once so functors share it."""

    def __init__(self, cm):
        self.cm = cm
        self.A = lie2_of_crossed_module(cm)


def _functor(X: _Node, Y: _Node, psi, phi) -> Lie2Functor:
    return functor_of_crossed_map(X.cm, Y.cm, psi, phi, X.A, Y.A)


def _chain_map(rng, d1: Matrix, d2: Matrix):
    """Random ``(psi, phi)`` with ``d2 psi = phi d1``."""
    for _ in range(20):
        psi = rand_matrix(rng, d2.cols, d1.cols, frac=0)
        if rng.random() < 0.2:
            psi = Matrix.zeros(d2.cols, d1.cols)
        system = [([(Matrix.identity(d2.rows), d1)], d2 @ psi)]
        sol = solve_matrix_equations((d2.rows, d1.rows), system)
        if sol is None:
            continue
        part, kernel = sol
        phi = part
        for K in kernel:
            phi = phi + K.scale(rand_scalar(rng, -2, 2, frac=0))
        return psi, phi
    return Matrix.zeros(d2.cols, d1.cols), Matrix.zeros(d2.rows, d1.rows)


def _abelian_chain(rng):
    dims = [(rng.randint(0, 3), rng.randint(1, 3)) for _ in range(3)]
    nodes = [_Node(abelian_cm(rand_matrix(rng, w, u, frac=0.1))) for u, w in dims]
    maps = []
    for X, Y in zip(nodes, nodes[1:]):
        psi, phi = _chain_map(rng, X.cm.delta.matrix, Y.cm.delta.matrix)
        maps.append(_functor(X, Y, psi, phi))
    return maps


def _heis_chain(rng):
    H, Ab = _Node(heis_cm()), _Node(ab_cm())
    proj = Matrix([[1, 0, 0], [0, 1, 0]])
    none = Matrix.zeros(0, 1)

    def auto():
        a = heis_automorphism(rng)
        return _functor(H, H, Matrix([[a[2, 2]]]), a)

    kind = rng.randrange(3)
    if kind == 0:
        return [auto(), auto()]
    if kind == 1:
        return [auto(), _functor(H, Ab, none, proj @ heis_automorphism(rng))]
    return [_functor(H, Ab, none, proj),
            _functor(Ab, Ab, Matrix.zeros(0, 0), rand_matrix(rng, 2, 2))]


def _ad_chain(rng):
    if rng.random() < 0.5:
        X = _Node(ad_cm(sl2()))
        a1, a2 = sl2_automorphism(rng), sl2_automorphism(rng)
    else:
        X = _Node(ad_cm(heis3()))
        a1, a2 = heis_automorphism(rng), heis_automorphism(rng)
    f = _functor(X, X, a1, a1)
    if rng.random() < 0.3:
        Z = _Node(ab_cm(abelian(0)))
        return [f, _functor(X, Z, Matrix.zeros(0, 3), Matrix.zeros(0, 3))]
    return [f, _functor(X, X, a2, a2)]


def _ideal_chain(rng):
    L = heis3()
    X = _Node(ideal_cm(L, Subspace.span([(0, 0, 1)], 3)))
    maps = []
    for _ in range(2):
        a = heis_automorphism(rng)
        maps.append(_functor(X, X, Matrix([[a[2, 2]]]), a))
    return maps


def _sum_chain(rng):
    H = heis_cm()
    u, w = rng.randint(0, 1), rng.randint(1, 2)
    d = rand_matrix(rng, w, u, frac=0)
    S = _Node(direct_sum_cm(H, abelian_cm(d)))
    maps = []
    for _ in range(2):
        a = heis_automorphism(rng)
        psi, phi = _chain_map(rng, d, d)
        maps.append(_functor(S, S, Matrix.block_diag(Matrix([[a[2, 2]]]), psi),
                             Matrix.block_diag(a, phi)))
    return maps


CHAIN_FAMILIES = (_abelian_chain, _heis_chain, _ad_chain, _ideal_chain, _sum_chain)


def random_functor_chain(rng: random.Random):
    """Two composable strict functors ``(f, g)``; every Lie 2-algebra has dim V1 <= 8."""
    f, g = rng.choice(CHAIN_FAMILIES)(rng)[:2]
    return f, g


# --- crossed module perturbations ---------------------------------------------

def _scaled_ad(L, c):
    return [L.ad(e).scale(c) for e in L.basis()]


def corrupt_algebra(L: LieAlgebra, rng) -> LieAlgebra:
    """Change one structure constant (and its antisymmetric partner)."""
    c = [[list(row) for row in plane] for plane in L.constants]
    d = L.dim
    i, j = rng.sample(range(d), 2)
    k = rng.randrange(d)
    delta = rand_scalar(rng, 1, 2, frac=0)
    c[i][j][k] += delta
    c[j][i][k] -= delta
    return LieAlgebra(c, L.basis_names)


def perturbed_crossed_module(rng: random.Random) -> CrossedModule:
    """A crossed-module-shaped datum that is valid for some parameter values only."""
    kind = rng.randrange(6)
    if kind == 0:
        cm = heis_cm()
        v = [rng.choice((0, 0, 1, -1, 2)) for _ in range(3)]
        return CrossedModule(cm.m, cm.n, LieHom(cm.m, cm.n, Matrix([[x] for x in v])), cm.action)
    if kind == 1:
        L = sl2()
        c = rng.choice((1, 1, 0, 2, -1, Fraction(1, 2)))
        delta = LieHom(L, L, Matrix.identity(3).scale(c))
        return CrossedModule(L, L, delta, [L.ad(e) for e in L.basis()])
    if kind == 2:
        L = heis3()
        c = rng.choice((1, 1, 0, 2, -1))
        return CrossedModule(L, L, LieHom.identity(L), _scaled_ad(L, c))
    if kind == 3:
        u, w = rng.randint(1, 2), rng.randint(1, 2)
        m, n = abelian(u), abelian(w)
        delta = rand_matrix(rng, w, u, frac=0)
        if rng.random() < 0.5:
            action = [Matrix.zeros(u, u)] * w
        else:
            action = [rand_matrix(rng, u, u, frac=0) if rng.random() < 0.5 else Matrix.zeros(u, u)
                      for _ in range(w)]
        return CrossedModule(m, n, LieHom(m, n, delta), action)
    if kind == 4:
        base = rng.choice((heis_cm(), ad_cm(sl2()), ad_cm(heis3())))
        if rng.random() < 0.5:
            return base
        n = corrupt_algebra(base.n, rng)
        m = n if base.m == base.n else base.m
        return CrossedModule(m, n, LieHom(m, n, base.delta.matrix), base.action)
    cm = ideal_cm(heis3(), Subspace.span([(0, 0, 1)], 3))
    if rng.random() < 0.5:
        return cm
    action = list(cm.action)
    j = rng.randrange(3)
    action[j] = action[j] + Matrix([[rand_scalar(rng, 1, 2, frac=0)]])
    return CrossedModule(cm.m, cm.n, cm.delta, action)


def injected_violations():
    """``(axiom_id, crossed-module-shaped datum)`` pairs, each breaking the named axiom."""
    out = []
    cm = heis_cm()
    out.append(("axiom_i", CrossedModule(cm.m, cm.n, LieHom(cm.m, cm.n, Matrix([[1], [0], [0]])),
                                         cm.action)))
    h, z = heis3(), abelian(0)
    out.append(("axiom_ii", CrossedModule(h, z, LieHom.zero(h, z), [])))
    s, a = sl2(), ab2()
    rho = {"H": [[1, 0], [0, -1]], "E": [[0, 1], [0, 0]], "F": [[0, 0], [1, 0]]}
    out.append(("action_hom", CrossedModule(a, s, LieHom.zero(a, s),
                                            [Matrix(rho[nm]).scale(2) for nm in s.basis_names])))
    out.append(("delta_hom", CrossedModule(s, s, LieHom(s, s, Matrix.identity(3).scale(2)),
                                           [s.ad(e) for e in s.basis()])))
    bad = [h.ad(e) for e in h.basis()]
    bad[0] = bad[0] + Matrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    out.append(("action_derivation", CrossedModule(h, h, LieHom.identity(h), bad)))
    bad_sl2 = LieAlgebra.from_brackets(
        ["H", "E", "F"], {("H", "E"): {"E": 2}, ("H", "F"): {"F": -2}, ("E", "F"): {"E": 1}}
    )
    out.append(("m_lie", CrossedModule(bad_sl2, z, LieHom.zero(bad_sl2, z), [])))
    out.append(("n_lie", CrossedModule(z, bad_sl2, LieHom.zero(z, bad_sl2),
                                       [Matrix.zeros(0, 0)] * 3)))
    return out
