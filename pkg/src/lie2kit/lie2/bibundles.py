"""Bibundles of Lie 2-algebras: construction, verification, composition and Morita checks.

Both actions are stored as linear maps on the ambient direct sums
(``g1 (+) p -> p`` and ``p (+) h1 -> p``).  Only their restrictions to the
fiber products ``{(g, p) : s g = aL p}`` and ``{(p, h) : aR p = t h}``
carry meaning; :attr:`LieBibundle.left_action` and
:attr:`LieBibundle.right_action` give those restrictions as Lie algebra maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from ..errors import DimensionError, InvalidStructureError, MismatchError, NotAnIdealError
from ..exactla import (
    Matrix,
    Subspace,
    complement_section,
    equalizer_space,
    null_space,
    pullback_space,
    solve_matrix_equations,
)
from ..liealg import (
    LieAlgebra,
    LieHom,
    direct_sum,
    hom_defect,
    lie_quotient,
    subalgebra,
    verify_lie_algebra,
)
from ..report import Report
from .functors import Lie2Functor, compose_functors, identity_functor, require_functor
from .lie2alg import Lie2Algebra, closure_defect, map_hom_defect


@dataclass(frozen=True, eq=False)
class LieBibundle:
    source: Lie2Algebra
    target: Lie2Algebra
    p: LieAlgebra
    aL: Matrix
    aR: Matrix
    actL: Matrix
    actR: Matrix

    def __post_init__(self):
        g, h, d = self.source, self.target, self.p.dim
        shapes = {
            "aL": (g.V0.dim, d),
            "aR": (h.V0.dim, d),
            "actL": (d, g.V1.dim + d),
            "actR": (d, d + h.V1.dim),
        }
        for name, shape in shapes.items():
            if getattr(self, name).shape != shape:
                raise DimensionError(f"{name} must be {shape[0]}x{shape[1]}",
                                     got=getattr(self, name).shape)

    def _key(self):
        return (self.source, self.target, self.p, self.aL, self.aR, self.actL, self.actR)

    def __eq__(self, other):
        return isinstance(other, LieBibundle) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"LieBibundle(dim p={self.p.dim})"

    @property
    def dim(self):
        return self.p.dim

    @property
    def left_anchor(self):
        return LieHom(self.p, self.source.V0, self.aL)

    @property
    def right_anchor(self):
        return LieHom(self.p, self.target.V0, self.aR)

    @cached_property
    def left_domain(self) -> Subspace:
        """``{(g, p) : s g = aL p}`` inside ``g1 (+) p``."""
        return pullback_space(self.source.s, self.aL)

    @cached_property
    def right_domain(self) -> Subspace:
        """``{(p, h) : aR p = t h}`` inside ``p (+) h1``."""
        return pullback_space(self.aR, self.target.t)

    @property
    def left_action(self) -> LieHom:
        A, _ = subalgebra(direct_sum(self.source.V1, self.p), self.left_domain)
        return LieHom(A, self.p, self.actL @ self.left_domain.inclusion())

    @property
    def right_action(self) -> LieHom:
        A, _ = subalgebra(direct_sum(self.p, self.target.V1), self.right_domain)
        return LieHom(A, self.p, self.actR @ self.right_domain.inclusion())

    def act_left(self, g, x):
        return self.actL.apply(tuple(g) + tuple(x))

    def act_right(self, x, h):
        return self.actR.apply(tuple(x) + tuple(h))


def _first_bad(M: Matrix, N: Matrix, W: Subspace):
    """First basis vector of ``W`` where ``M`` and ``N`` disagree."""
    for w in W.basis:
        if M.apply(w) != N.apply(w):
            return list(w)
    return None


def verify_bibundle(P: LieBibundle, subject="bibundle") -> Report:
    rep = Report(subject)
    g, h, p = P.source, P.target, P.p
    d, g1, h1 = p.dim, g.V1.dim, h.V1.dim
    Ip = Matrix.identity(d)
    r = verify_lie_algebra(p)
    rep.add("p_lie", r.ok, "p is a Lie algebra", None if r.ok else r.first_failure().counterexample)
    for name, f in (("aL_hom", P.left_anchor), ("aR_hom", P.right_anchor)):
        bad = hom_defect(f)
        rep.add(name, bad is None, f"{name[:2]} is a Lie algebra map", bad)

    DL, DR = P.left_domain, P.right_domain
    for name, algs, W, M in (
        ("left_action_hom", (g.V1, p), DL, P.actL),
        ("right_action_hom", (p, h.V1), DR, P.actR),
    ):
        bad = closure_defect(algs, W)
        if bad is None:
            bad = map_hom_defect(algs, W, M, p)
        rep.add(name, bad is None, f"{name.split('_')[0]} action is a Lie algebra map",
                bad and {"domain_basis_pair": list(bad)})

    pr_g = Matrix.selection(g1 + d, range(g1))
    pr_pl = Matrix.selection(g1 + d, range(g1, g1 + d))
    pr_pr = Matrix.selection(d + h1, range(d))
    pr_h = Matrix.selection(d + h1, range(d, d + h1))
    bad = _first_bad(P.aL @ P.actL, g.t @ pr_g, DL) or _first_bad(P.aR @ P.actL, P.aR @ pr_pl, DL)
    rep.add("left_anchors", bad is None, "aL(g.p) = t g and aR(g.p) = aR p", bad)
    bad = _first_bad(P.aR @ P.actR, h.s @ pr_h, DR) or _first_bad(P.aL @ P.actR, P.aL @ pr_pr, DR)
    rep.add("right_anchors", bad is None, "aR(p.h) = s h and aL(p.h) = aL p", bad)

    lu = P.actL @ Matrix.vstack(g.unit @ P.aL, Ip)
    rep.add("left_unit", lu == Ip, "1_{aL p} . p = p",
            None if lu == Ip else _first_column_diff(lu, Ip, p))
    ru = P.actR @ Matrix.vstack(Ip, h.unit @ P.aR)
    rep.add("right_unit", ru == Ip, "p . 1_{aR p} = p",
            None if ru == Ip else _first_column_diff(ru, Ip, p))

    T = equalizer_space([g1, g1, d], [(0, g.s, 1, g.t), (1, g.s, 2, P.aL)])
    lhs = P.actL @ Matrix.block_diag(g.comp, Ip)
    rhs = P.actL @ Matrix.block_diag(Matrix.identity(g1), P.actL)
    bad = _first_bad(lhs, rhs, T)
    rep.add("left_associativity", bad is None, "(g2 g1).p = g2.(g1.p)", bad)

    T = equalizer_space([d, h1, h1], [(0, P.aR, 1, h.t), (1, h.s, 2, h.t)])
    lhs = P.actR @ Matrix.block_diag(P.actR, Matrix.identity(h1))
    rhs = P.actR @ Matrix.block_diag(Ip, h.comp)
    bad = _first_bad(lhs, rhs, T)
    rep.add("right_associativity", bad is None, "(p.h1).h2 = p.(h1 h2)", bad)

    T = equalizer_space([g1, d, h1], [(0, g.s, 1, P.aL), (1, P.aR, 2, h.t)])
    lhs = P.actR @ Matrix.block_diag(P.actL, Matrix.identity(h1))
    rhs = P.actL @ Matrix.block_diag(Matrix.identity(g1), P.actR)
    bad = _first_bad(lhs, rhs, T)
    rep.add("actions_commute", bad is None, "(g.p).h = g.(p.h)", bad)

    psi = Matrix.vstack(pr_pr, P.actR) @ DR.inclusion()
    fibre = pullback_space(P.aL, P.aL)
    principal = psi.is_injective() and psi.image() == fibre
    rep.add("principal", principal, "(p, h) -> (p, p.h) is an isomorphism onto p x_{aL} p",
            None if principal else {"injective": psi.is_injective(), "domain_dim": DR.dim,
                                    "codomain_dim": fibre.dim})
    rep.derived["dim_p"] = d
    rep.derived["principality_dims"] = [DR.dim, fibre.dim]
    rep.derived["left_anchor_surjective"] = P.aL.is_surjective()
    return rep


def _first_column_diff(M, N, p):
    for j in range(M.cols):
        if M.column(j) != N.column(j):
            return p.basis_names[j]
    return None


def is_weakly_invertible(P: LieBibundle, subject="weak invertibility") -> Report:
    """``aR`` surjective and ``(g, p) -> (g.p, p)`` an isomorphism onto ``p x_{aR} p``."""
    rep = Report(subject)
    surj = P.aR.is_surjective()
    rep.add("aR_surjective", surj, "right anchor is surjective",
            None if surj else {"rank": P.aR.rank(), "target_dim": P.aR.rows})
    g1, d = P.source.V1.dim, P.dim
    DL = P.left_domain
    chi = Matrix.vstack(P.actL, Matrix.selection(g1 + d, range(g1, g1 + d))) @ DL.inclusion()
    fibre = pullback_space(P.aR, P.aR)
    inj = chi.is_injective()
    iso = inj and chi.image() == fibre
    rep.add("left_principal", iso, "(g, p) -> (g.p, p) is an isomorphism onto p x_{aR} p",
            None if iso else {"injective": inj, "domain_dim": DL.dim, "codomain_dim": fibre.dim})
    rep.derived["weakly_invertible"] = surj and iso
    rep.derived["left_principality_dims"] = [DL.dim, fibre.dim]
    return rep


# --- construction from a functor ----------------------------------------------

def bundle_of_functor(F: Lie2Functor, check=True) -> LieBibundle:
    """``<F> = g0 x_{F0, h0, t} h1`` with the two actions by composition in ``h``."""
    if check:
        require_functor(F)
    g, h = F.source, F.target
    g0, h1 = g.V0.dim, h.V1.dim
    W = pair_space(F)
    p, inc = subalgebra(direct_sum(g.V0, h.V1), W, names=[f"p{i + 1}" for i in range(W.dim)])
    sel, I = W.selection(), inc.matrix
    d = W.dim
    pr_x = Matrix.selection(g0 + h1, range(g0)) @ I
    pr_gam = Matrix.selection(g0 + h1, range(g0, g0 + h1)) @ I
    C1 = Matrix.from_columns(h.comp.columns()[:h1], h1)
    C2 = Matrix.from_columns(h.comp.columns()[h1:], h1)
    actL = sel @ Matrix.vstack(
        Matrix.hstack(g.t, Matrix.zeros(g0, d)),
        Matrix.hstack(C1 @ F.F1.matrix, C2 @ pr_gam),
    )
    actR = sel @ Matrix.vstack(
        Matrix.hstack(pr_x, Matrix.zeros(g0, h1)),
        Matrix.hstack(C1 @ pr_gam, C2),
    )
    return LieBibundle(g, h, p, pr_x, h.s @ pr_gam, actL, actR)


def identity_bundle(A: Lie2Algebra) -> LieBibundle:
    return bundle_of_functor(identity_functor(A), check=False)


# --- composition -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Composite:
    """``Q o P`` together with the data relating it to ``p (+) q``.

    ``lift`` maps the composite into ``p (+) q`` (a section of the quotient)
    and ``proj`` sends pairs in the fiber product to their classes.
    """

    bundle: LieBibundle
    pairs: Subspace
    delta: Subspace
    lift: Matrix
    proj: Matrix

    def descend(self, M: Matrix) -> Matrix:
        """Induce a map on the composite from ``M`` on ``p (+) q``; it must kill the orbits."""
        for w in self.delta.basis:
            if any(M.apply(w)):
                raise InvalidStructureError("map is not constant on orbits", vector=list(w))
        return M @ self.lift


def compose_with_data(Q: LieBibundle, P: LieBibundle) -> Composite:
    if P.target != Q.source:
        raise MismatchError(
            "bibundles do not compose: target of the first differs from source of the second",
            first_target=repr(P.target), second_source=repr(Q.source),
        )
    g, h, k = P.source, P.target, Q.target
    dp, dq = P.dim, Q.dim
    pairs = pullback_space(P.aR, Q.aL)
    total = direct_sum(P.p, Q.p)
    F, inc = subalgebra(total, pairs, names=[f"f{i + 1}" for i in range(pairs.dim)])
    inversion = h.inversion
    ker_t = null_space(h.t)
    gens = []
    for u in ker_t.basis:
        left = P.act_right((0,) * dp, u)
        right = Q.act_left(inversion.apply(u), (0,) * dq)
        gens.append(left + right)
    delta = Subspace.span(gens, dp + dq)
    if not pairs.contains_space(delta):
        raise InvalidStructureError(
            "orbit directions leave the fiber product; inputs are not bibundles")
    delta_f = Subspace.span([pairs.coords(v) for v in delta.basis], pairs.dim)
    try:
        C, pi = lie_quotient(F, delta_f)
    except NotAnIdealError as exc:
        raise InvalidStructureError(
            "orbit directions do not form an ideal of the fiber product", **exc.details
        ) from exc
    sigma = complement_section(pairs.dim, delta_f)
    lift = inc.matrix @ sigma
    proj = pi.matrix @ pairs.selection()
    C = LieAlgebra(C.constants, [f"c{i + 1}" for i in range(C.dim)])
    pr_p = Matrix.selection(dp + dq, range(dp))
    pr_q = Matrix.selection(dp + dq, range(dp, dp + dq))
    g1, k1 = g.V1.dim, k.V1.dim
    actL = proj @ Matrix.vstack(
        P.actL @ Matrix.block_diag(Matrix.identity(g1), pr_p @ lift),
        Matrix.hstack(Matrix.zeros(dq, g1), pr_q @ lift),
    )
    actR = proj @ Matrix.vstack(
        Matrix.hstack(pr_p @ lift, Matrix.zeros(dp, k1)),
        Q.actR @ Matrix.block_diag(pr_q @ lift, Matrix.identity(k1)),
    )
    bundle = LieBibundle(g, k, C, P.aL @ pr_p @ lift, Q.aR @ pr_q @ lift, actL, actR)
    return Composite(bundle, pairs, delta, lift, proj)


def compose_bibundles(Q: LieBibundle, P: LieBibundle) -> LieBibundle:
    """``Q o P``: pairs ``(p, q)`` with ``aR p = aL q`` modulo the middle action."""
    return compose_with_data(Q, P).bundle


# --- morphisms and canonical witnesses -----------------------------------------

def verify_bibundle_morphism(P: LieBibundle, Q: LieBibundle, cand,
                             subject="bibundle map") -> Report:
    M = cand.matrix if isinstance(cand, LieHom) else cand
    if P.source != Q.source or P.target != Q.target:
        raise MismatchError("bibundles connect different Lie 2-algebras")
    if M.shape != (Q.dim, P.dim):
        raise DimensionError(f"candidate must be {Q.dim}x{P.dim}", got=M.shape)
    rep = Report(subject)
    bad = hom_defect(LieHom(P.p, Q.p, M))
    rep.add("hom", bad is None, "preserves brackets", bad)
    rep.add("bijective", M.is_bijective(), "is a linear isomorphism",
            None if M.is_bijective() else {"rank": M.rank(), "dims": [P.dim, Q.dim]})
    ok = Q.aL @ M == P.aL
    rep.add("left_anchor", ok, "aL o f = aL",
            None if ok else _first_column_diff(Q.aL @ M, P.aL, P.p))
    ok = Q.aR @ M == P.aR
    rep.add("right_anchor", ok, "aR o f = aR",
            None if ok else _first_column_diff(Q.aR @ M, P.aR, P.p))
    g1, h1 = P.source.V1.dim, P.target.V1.dim
    bad = _first_bad(M @ P.actL, Q.actL @ Matrix.block_diag(Matrix.identity(g1), M), P.left_domain)
    rep.add("left_equivariant", bad is None, "f(g.p) = g.f(p)", bad)
    bad = _first_bad(M @ P.actR, Q.actR @ Matrix.block_diag(M, Matrix.identity(h1)), P.right_domain)
    rep.add("right_equivariant", bad is None, "f(p.h) = f(p).h", bad)
    return rep


def functoriality_witness(G: Lie2Functor, F: Lie2Functor):
    """``<G> o <F>`` and the canonical iso ``[(x, a), (y, b)] -> (x, G(a) b)`` onto ``<G o F>``."""
    P, Q = bundle_of_functor(F), bundle_of_functor(G)
    comp = compose_with_data(Q, P)
    R = bundle_of_functor(compose_functors(G, F), check=False)
    A, B, C = F.source, F.target, G.target
    a0, b1, b0, c1 = A.V0.dim, B.V1.dim, B.V0.dim, C.V1.dim
    inc_P, inc_Q = pair_space(F).inclusion(), pair_space(G).inclusion()
    sel_R = pair_space(compose_functors(G, F)).selection()
    # p (+) q -> (x, gamma) (+) (y, delta) -> (x, comp(G1 gamma, delta))
    x = Matrix.selection(a0 + b1, range(a0)) @ inc_P
    gam = Matrix.selection(a0 + b1, range(a0, a0 + b1)) @ inc_P
    dlt = Matrix.selection(b0 + c1, range(b0, b0 + c1)) @ inc_Q
    C1 = Matrix.from_columns(C.comp.columns()[:c1], c1)
    C2 = Matrix.from_columns(C.comp.columns()[c1:], c1)
    amb = sel_R @ Matrix.vstack(
        Matrix.hstack(x, Matrix.zeros(a0, Q.dim)),
        Matrix.hstack(C1 @ G.F1.matrix @ gam, C2 @ dlt),
    )
    return comp.bundle, R, comp.descend(amb)


def left_unit_witness(P: LieBibundle):
    """``<id> o P -> P``, ``[p, (y, d)] -> p.d``."""
    h = P.target
    I = identity_bundle(h)
    comp = compose_with_data(I, P)
    inc = pair_space(identity_functor(h)).inclusion()
    h0, h1 = h.V0.dim, h.V1.dim
    dlt = Matrix.selection(h0 + h1, range(h0, h0 + h1)) @ inc
    amb = P.actR @ Matrix.block_diag(Matrix.identity(P.dim), dlt)
    return comp.bundle, comp.descend(amb)


def right_unit_witness(P: LieBibundle):
    """``P o <id> -> P``, ``[(x, g), p] -> g.p``."""
    g = P.source
    I = identity_bundle(g)
    comp = compose_with_data(P, I)
    inc = pair_space(identity_functor(g)).inclusion()
    g0, g1 = g.V0.dim, g.V1.dim
    gam = Matrix.selection(g0 + g1, range(g0, g0 + g1)) @ inc
    amb = P.actL @ Matrix.block_diag(gam, Matrix.identity(P.dim))
    return comp.bundle, comp.descend(amb)


def associator_witness(R: LieBibundle, Q: LieBibundle, P: LieBibundle):
    """``(R o Q) o P -> R o (Q o P)``, ``[p, [q, r]] -> [[p, q], r]``."""
    RQ = compose_with_data(R, Q)
    left = compose_with_data(RQ.bundle, P)
    QP = compose_with_data(Q, P)
    right = compose_with_data(R, QP.bundle)
    dp, dr = P.dim, R.dim
    # p (+) (q (+) r) -> [[p, q], r]
    inner = QP.proj
    amb3 = right.proj @ Matrix.block_diag(inner, Matrix.identity(dr))
    amb = amb3 @ Matrix.block_diag(Matrix.identity(dp), RQ.lift)
    return left.bundle, right.bundle, left.descend(amb)


def pair_space(F: Lie2Functor) -> Subspace:
    """``<F>`` as the subspace of pairs ``(x, gamma)`` in ``g0 (+) h1``."""
    return pullback_space(F.F0.matrix, F.target.t)


# --- isomorphism search ------------------------------------------------------------

def find_bibundle_iso(P: LieBibundle, Q: LieBibundle, search_radius=1):
    """Look for a bibundle isomorphism ``P -> Q``.

    The anchor and equivariance conditions are linear in the candidate, so
    they are solved exactly; bracket preservation and bijectivity are then
    tested on the particular solution and on small integer combinations of
    the homogeneous solutions.  A returned map is always verified; ``None``
    means no isomorphism was found within the search radius.
    """
    if P.source != Q.source or P.target != Q.target:
        raise MismatchError("bibundles connect different Lie 2-algebras")
    if P.dim != Q.dim:
        return None
    d, g1, h1 = P.dim, P.source.V1.dim, P.target.V1.dim
    Ip = Matrix.identity(d)
    DL, DR = P.left_domain.inclusion(), P.right_domain.inclusion()
    QL_g = Matrix.from_columns(Q.actL.columns()[:g1], d)
    QL_p = Matrix.from_columns(Q.actL.columns()[g1:], d)
    QR_p = Matrix.from_columns(Q.actR.columns()[:d], d)
    QR_h = Matrix.from_columns(Q.actR.columns()[d:], d)
    pl = Matrix.selection(g1 + d, range(g1, g1 + d))
    gl = Matrix.selection(g1 + d, range(g1))
    pr = Matrix.selection(d + h1, range(d))
    hr = Matrix.selection(d + h1, range(d, d + h1))
    eqs = [
        ([(Q.aL, Ip)], P.aL),
        ([(Q.aR, Ip)], P.aR),
        ([(Ip, P.actL @ DL), (-QL_p, pl @ DL)], QL_g @ gl @ DL),
        ([(Ip, P.actR @ DR), (-QR_p, pr @ DR)], QR_h @ hr @ DR),
    ]
    sol = solve_matrix_equations((d, d), eqs)
    if sol is None:
        return None
    part, kernel = sol
    coeffs = range(-search_radius, search_radius + 1)
    for cs in product(coeffs, repeat=len(kernel)) if len(kernel) <= 4 else _sparse(kernel, coeffs):
        M = part
        for c, K in zip(cs, kernel):
            if c:
                M = M + K.scale(c)
        if M.is_bijective() and hom_defect(LieHom(P.p, Q.p, M)) is None:
            return M
    return None


def _sparse(kernel, coeffs):
    n = len(kernel)
    yield (0,) * n
    for i in range(n):
        for c in coeffs:
            if c:
                v = [0] * n
                v[i] = c
                yield tuple(v)
