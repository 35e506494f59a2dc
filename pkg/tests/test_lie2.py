import random

import pytest
from hypothesis import given, strategies as st

from lie2kit.errors import InvalidStructureError
from lie2kit.exactla import Matrix, Subspace
from lie2kit.lie2 import (
    CrossedModule,
    Lie2Algebra,
    Lie2Functor,
    ab_cm,
    ad_cm,
    canonical_identification,
    compose_functors,
    crossed_module_of_lie2,
    discrete_lie2,
    functor_is_essential_equivalence,
    functor_of_crossed_map,
    heis_cm,
    heisenberg_functor,
    identity_functor,
    ideal_cm,
    lie2_of_crossed_module,
    strict_inverse_obstruction,
    verify_crossed_module,
    verify_lie2,
    verify_lie2_functor,
)
from lie2kit.lie2.samples import injected_violations, perturbed_crossed_module, random_functor_chain
from lie2kit.liealg import LieHom, abelian, heis3, sl2, verify_lie_algebra


def fixtures():
    return {
        "heisCM": heis_cm(),
        "abCM": ab_cm(),
        "adCM-sl2": ad_cm(sl2()),
        "adCM-heis3": ad_cm(heis3()),
        "idealCM": ideal_cm(heis3(), Subspace(3, [(0, 0, 1)])),
    }


@pytest.mark.parametrize("name", list(fixtures()))
def test_fixture_crossed_modules_verify(name):
    cm = fixtures()[name]
    assert verify_crossed_module(cm).ok
    A = lie2_of_crossed_module(cm)
    assert verify_lie2(A).ok
    assert verify_lie_algebra(A.V1).ok


def test_heis_with_wrong_boundary_fails_axiom_i():
    cm = heis_cm()
    bad = CrossedModule(cm.m, cm.n, LieHom(cm.m, cm.n, Matrix([[1], [0], [0]])), cm.action)
    rep = verify_crossed_module(bad)
    assert rep.failed_ids() == ["axiom_i"]
    assert "(i)" in rep.get("axiom_i").label


@pytest.mark.parametrize("axiom, cm", injected_violations(),
                         ids=lambda x: x if isinstance(x, str) else "")
def test_injected_violations_are_named(axiom, cm):
    assert axiom in verify_crossed_module(cm).failed_ids()
    with pytest.raises(InvalidStructureError) as exc:
        lie2_of_crossed_module(cm)
    assert exc.value.details["axiom"] in verify_crossed_module(cm).failed_ids()


def test_heis_lie2_values():
    A = lie2_of_crossed_module(heis_cm())
    assert (A.V1.dim, A.V0.dim) == (4, 3)
    # [(1, X), (0, Y)] = (0, Z)
    assert A.V1.bracket((1, 1, 0, 0), (0, 0, 1, 0)) == (0, 0, 0, 1)


def test_ad_sl2_bracket():
    A = lie2_of_crossed_module(ad_cm(sl2()))
    assert A.V1.dim == 6
    # [(E, 0), (0, H)] = (-2E, 0)
    assert A.V1.bracket((0, 1, 0, 0, 0, 0), (0, 0, 0, 1, 0, 0)) == (0, -2, 0, 0, 0, 0)


def test_ab_is_discrete():
    A = lie2_of_crossed_module(ab_cm())
    assert A.V1.dim == A.V0.dim == 2
    assert A.s == A.t == Matrix.identity(2)


def test_broken_composition_fails_unit_law():
    A = lie2_of_crossed_module(heis_cm())
    # (x1, y1)(x2, y2) -> (x1, y2)
    comp = Matrix.vstack(
        Matrix.hstack(Matrix.identity(1), Matrix.zeros(1, 3), Matrix.zeros(1, 4)),
        Matrix.hstack(Matrix.zeros(3, 1), Matrix.zeros(3, 3), Matrix.zeros(3, 1),
                      Matrix.identity(3)),
    )
    rep = verify_lie2(Lie2Algebra(A.V1, A.V0, A.s, A.t, A.unit, comp))
    assert "left_unit" in rep.failed_ids()


def test_discrete_lie2():
    A = discrete_lie2(sl2())
    assert verify_lie2(A).ok
    cm = crossed_module_of_lie2(A)
    assert cm.m.dim == 0 and cm.n == sl2()


@pytest.mark.parametrize("name", list(fixtures()))
def test_round_trip(name):
    cm = fixtures()[name]
    back = crossed_module_of_lie2(lie2_of_crossed_module(cm))
    assert back.same_data(cm)
    assert back.m.basis_names == cm.m.basis_names


def test_canonical_identification_is_functor():
    A = lie2_of_crossed_module(ad_cm(sl2()))
    B = lie2_of_crossed_module(crossed_module_of_lie2(A))
    F1, F0 = canonical_identification(A)
    F = Lie2Functor(A, B, LieHom(A.V1, B.V1, F1), LieHom(A.V0, B.V0, F0))
    assert verify_lie2_functor(F).ok
    assert F1.is_bijective()


def test_heisenberg_essential_equivalence():
    phi = heisenberg_functor()
    assert verify_lie2_functor(phi).ok
    rep = functor_is_essential_equivalence(phi)
    assert rep.derived["fully_faithful"] and rep.derived["essentially_surjective"]
    assert rep.derived["hom_map_dims"] == [4, 4]
    assert functor_is_essential_equivalence(identity_functor(phi.source)).ok


def test_projection_not_fully_faithful():
    A = lie2_of_crossed_module(ab_cm(abelian(2)))
    B = lie2_of_crossed_module(ab_cm(abelian(1)))
    F = functor_of_crossed_map(ab_cm(abelian(2)), ab_cm(abelian(1)), Matrix.zeros(0, 0),
                               Matrix([[1, 0]]), A, B)
    rep = functor_is_essential_equivalence(F)
    assert rep.derived["essentially_surjective"]
    assert not rep.derived["fully_faithful"]
    assert rep.derived["hom_map_dims"] == [2, 3]


def test_non_functor_names_square():
    phi = heisenberg_functor()
    bad = Lie2Functor(phi.source, phi.target, phi.F1, LieHom.zero(phi.source.V0, phi.target.V0))
    with pytest.raises(InvalidStructureError) as exc:
        functor_is_essential_equivalence(bad)
    assert exc.value.details["square"] == "source_square"


def test_no_strict_inverse():
    rep = strict_inverse_obstruction(heisenberg_functor().F0)
    assert rep.ok
    assert rep.derived["defect"] == {"E1,E2": [0, 0, 1]}
    assert rep.derived["sections_checked"] == 3


@given(st.integers(0, 2**32))
def test_random_crossed_modules_agree_with_lie2(seed):
    cm = perturbed_crossed_module(random.Random(seed))
    valid = verify_crossed_module(cm).ok
    A = lie2_of_crossed_module(cm, check=False)
    assert verify_lie2(A).ok == valid
    if valid:
        assert crossed_module_of_lie2(A).same_data(cm)


@given(st.integers(0, 2**32))
def test_random_chains_compose(seed):
    f, g = random_functor_chain(random.Random(seed))
    for F in (f, g, compose_functors(g, f)):
        assert verify_lie2_functor(F).ok
