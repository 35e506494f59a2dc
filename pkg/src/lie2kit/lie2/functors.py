"""Strict functors between Lie 2-algebras and the essential-equivalence test."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DimensionError, InvalidStructureError
from ..exactla import Matrix, equalizer_space, null_space, solve_matrix_equations
from ..liealg import LieHom, hom_defect
from ..report import Report
from .crossed import CrossedModule
from .lie2alg import Lie2Algebra, lie2_of_crossed_module


@dataclass(frozen=True)
class Lie2Functor:
    source: Lie2Algebra
    target: Lie2Algebra
    F1: LieHom
    F0: LieHom

    def __post_init__(self):
        if self.F1.source != self.source.V1 or self.F1.target != self.target.V1:
            raise DimensionError("F1 must map V1 to V1",
                                 got=(self.F1.source.dim, self.F1.target.dim))
        if self.F0.source != self.source.V0 or self.F0.target != self.target.V0:
            raise DimensionError("F0 must map V0 to V0",
                                 got=(self.F0.source.dim, self.F0.target.dim))


def _square_defects(F: Lie2Functor):
    A, B = F.source, F.target
    f1, f0 = F.F1.matrix, F.F0.matrix
    out = {
        "source_square": B.s @ f1 == f0 @ A.s,
        "target_square": B.t @ f1 == f0 @ A.t,
        "unit_square": f1 @ A.unit == B.unit @ f0,
    }
    W = A.composable
    lhs = f1 @ A.comp @ W.inclusion()
    rhs = B.comp @ Matrix.block_diag(f1, f1) @ W.inclusion()
    out["composition_square"] = lhs == rhs
    return out


def verify_lie2_functor(F: Lie2Functor, subject="Lie 2-functor") -> Report:
    rep = Report(subject)
    for name, f in (("F1_hom", F.F1), ("F0_hom", F.F0)):
        bad = hom_defect(f)
        rep.add(name, bad is None, f"{name[:2]} is a Lie algebra map", bad)
    labels = {
        "source_square": "s F1 = F0 s",
        "target_square": "t F1 = F0 t",
        "unit_square": "F1 unit = unit F0",
        "composition_square": "F1(g2 g1) = F1(g2) F1(g1)",
    }
    for name, ok in _square_defects(F).items():
        rep.add(name, ok, labels[name])
    return rep


def require_functor(F: Lie2Functor):
    rep = verify_lie2_functor(F)
    if not rep.ok:
        bad = rep.first_failure()
        raise InvalidStructureError(f"not a functor: {bad.check_id} fails ({bad.label})",
                                    report=rep, square=bad.check_id)


def identity_functor(A: Lie2Algebra) -> Lie2Functor:
    return Lie2Functor(A, A, LieHom.identity(A.V1), LieHom.identity(A.V0))


def compose_functors(G: Lie2Functor, F: Lie2Functor) -> Lie2Functor:
    """``G o F`` (``F`` first)."""
    if F.target != G.source:
        raise DimensionError("functors are not composable")
    return Lie2Functor(F.source, G.target, G.F1 @ F.F1, G.F0 @ F.F0)


def functor_of_crossed_map(cm: CrossedModule, cm2: CrossedModule, psi: Matrix, phi: Matrix,
                           A: Lie2Algebra = None, B: Lie2Algebra = None) -> Lie2Functor:
    """Functor induced by a crossed-module map ``(psi: m -> m', phi: n -> n')``."""
    A = A or lie2_of_crossed_module(cm, check=False)
    B = B or lie2_of_crossed_module(cm2, check=False)
    return Lie2Functor(A, B, LieHom(A.V1, B.V1, Matrix.block_diag(psi, phi)),
                       LieHom(A.V0, B.V0, phi))


def functor_is_essential_equivalence(F: Lie2Functor, subject="essential equivalence") -> Report:
    """Report with derived flags ``fully_faithful`` and ``essentially_surjective``.

    Essentially surjective: ``F0(V0) + t(ker s)`` is all of the target ``V0``.
    Fully faithful: ``a -> (s a, t a, F1 a)`` is an isomorphism onto
    ``{(x, y, b) : F0 x = s b, F0 y = t b}``.
    """
    require_functor(F)
    A, B = F.source, F.target
    rep = Report(subject)
    reach = F.F0.matrix.image() + (B.t @ null_space(B.s).inclusion()).image()
    es = reach.is_full()
    rep.add("essentially_surjective", es, "every object is isomorphic to an image object",
            None if es else {"reached_dim": reach.dim, "target_dim": B.V0.dim})
    d0, d0b = A.V0.dim, B.V1.dim
    phi_space = equalizer_space(
        [d0, d0, d0b],
        [(0, F.F0.matrix, 2, B.s), (1, F.F0.matrix, 2, B.t)],
    )
    hom_map = Matrix.vstack(A.s, A.t, F.F1.matrix)
    injective = hom_map.is_injective()
    ff = injective and hom_map.image() == phi_space
    rep.add("fully_faithful", ff, "arrows map bijectively onto arrows between images",
            None if ff else {"injective": injective, "source_dim": A.V1.dim,
                             "target_dim": phi_space.dim})
    rep.derived["fully_faithful"] = ff
    rep.derived["essentially_surjective"] = es
    rep.derived["hom_map_dims"] = [A.V1.dim, phi_space.dim]
    return rep


def section_defects(f: LieHom):
    """Bracket defects of linear sections of a surjective Lie algebra map.

    Returns a list of ``(sigma, defects)``: ``sigma`` runs over a particular
    section and its translates by a basis of ``Hom(target, ker f)``;
    ``defects[(i, j)]`` is ``[sigma e_i, sigma e_j] - sigma [e_i, e_j]``.
    """
    n_src, n_tgt = f.source.dim, f.target.dim
    sol = solve_matrix_equations(
        (n_src, n_tgt), [([(f.matrix, Matrix.identity(n_tgt))], Matrix.identity(n_tgt))]
    )
    if sol is None:
        raise InvalidStructureError("map is not surjective; it has no linear section")
    part, kernel = sol
    sections = [part] + [part + K for K in kernel]
    out = []
    for sigma in sections:
        defects = {}
        for i in range(n_tgt):
            for j in range(i + 1, n_tgt):
                a, b = sigma.column(i), sigma.column(j)
                lhs = f.source.bracket(a, b)
                rhs = sigma.apply(f.target.bracket(f.target.basis()[i], f.target.basis()[j]))
                defects[(i, j)] = tuple(x - y for x, y in zip(lhs, rhs))
        out.append((sigma, defects))
    return out


def strict_inverse_obstruction(f: LieHom, subject="strict inverse obstruction") -> Report:
    """Certify that no section of ``f`` is a Lie algebra map.

    The defect is affine in the section; the check confirms it is the same
    for every section in a spanning family and nonzero somewhere.
    """
    rep = Report(subject)
    family = section_defects(f)
    first = family[0][1]
    independent = all(d == first for _, d in family)
    rep.add("section_independent", independent, "defect does not depend on the section")
    nonzero = {k: v for k, v in first.items() if any(v)}
    rep.add("defect_nonzero", bool(nonzero), "some bracket defect is nonzero",
            None if nonzero else "every section preserves brackets")
    rep.derived["sections_checked"] = len(family)
    rep.derived["defect"] = {f"{f.target.basis_names[i]},{f.target.basis_names[j]}": list(v)
                             for (i, j), v in nonzero.items()}
    return rep
