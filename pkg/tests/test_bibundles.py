import random

import pytest
from hypothesis import given, settings, strategies as st

from lie2kit.errors import MismatchError
from lie2kit.exactla import Matrix
from lie2kit.lie2 import (
    Lie2Functor,
    LieBibundle,
    ab_cm,
    associator_witness,
    bundle_of_functor,
    compose_bibundles,
    discrete_lie2,
    find_bibundle_iso,
    functor_is_essential_equivalence,
    functor_of_crossed_map,
    functoriality_witness,
    heisenberg_functor,
    identity_bundle,
    is_weakly_invertible,
    left_unit_witness,
    lie2_of_crossed_module,
    right_unit_witness,
    verify_bibundle,
    verify_bibundle_morphism,
)
from lie2kit.lie2.samples import random_functor_chain
from lie2kit.liealg import LieHom, abelian, heis3, sl2, verify_lie_algebra


def projection_functor():
    A = lie2_of_crossed_module(ab_cm(abelian(2)))
    B = lie2_of_crossed_module(ab_cm(abelian(1)))
    return functor_of_crossed_map(ab_cm(abelian(2)), ab_cm(abelian(1)), Matrix.zeros(0, 0),
                                  Matrix([[1, 0]]), A, B)


def test_identity_bundle_on_heis():
    A = heisenberg_functor().source
    I = identity_bundle(A)
    assert I.dim == 4
    assert verify_bibundle(I).ok
    # p = {(x, g) : x = t g}, so both anchors are the source/target of g
    assert is_weakly_invertible(I).ok


def test_phi_bundle():
    P = bundle_of_functor(heisenberg_functor())
    assert P.dim == 3
    assert verify_lie_algebra(P.p).ok
    rep = verify_bibundle(P)
    assert rep.ok
    assert rep.derived["principality_dims"] == [3, 3]
    weak = is_weakly_invertible(P)
    assert weak.ok and weak.derived["left_principality_dims"] == [4, 4]


def test_zero_functor_bundle_between_discrete():
    L, M = discrete_lie2(sl2()), discrete_lie2(heis3())
    F = Lie2Functor(L, M, LieHom.zero(L.V1, M.V1), LieHom.zero(L.V0, M.V0))
    P = bundle_of_functor(F)
    assert P.dim == 3
    assert P.p == sl2()


def test_zero_right_action_fails_unit():
    P = bundle_of_functor(heisenberg_functor())
    bad = LieBibundle(P.source, P.target, P.p, P.aL, P.aR, P.actL, Matrix.zeros(*P.actR.shape))
    assert "right_unit" in verify_bibundle(bad).failed_ids()


def test_projection_not_weakly_invertible():
    F = projection_functor()
    assert not functor_is_essential_equivalence(F).ok
    rep = is_weakly_invertible(bundle_of_functor(F))
    assert not rep.derived["weakly_invertible"]
    assert rep.failed_ids() == ["left_principal"]


def test_morphism_examples():
    P = bundle_of_functor(heisenberg_functor())
    assert verify_bibundle_morphism(P, P, Matrix.identity(3)).ok
    # an automorphism of p = heis3 that moves the left anchor
    swap = Matrix([[0, 1, 0], [1, 0, 0], [0, 0, -1]])
    rep = verify_bibundle_morphism(P, P, swap)
    assert rep.get("hom").passed and rep.get("bijective").passed
    assert not rep.get("left_anchor").passed


def test_functoriality_on_heis_fixture():
    phi = heisenberg_functor()
    ident = Lie2Functor(phi.target, phi.target, LieHom.identity(phi.target.V1),
                        LieHom.identity(phi.target.V0))
    comp, R, W = functoriality_witness(ident, phi)
    assert verify_bibundle(comp).ok
    assert verify_bibundle_morphism(comp, R, W).ok


def test_unit_laws():
    P = bundle_of_functor(heisenberg_functor())
    C, W = left_unit_witness(P)
    assert verify_bibundle_morphism(C, P, W).ok
    C, W = right_unit_witness(P)
    assert verify_bibundle_morphism(C, P, W).ok


def test_mismatch():
    P = bundle_of_functor(heisenberg_functor())
    with pytest.raises(MismatchError):
        compose_bibundles(P, P)


def test_iso_search_on_composite():
    P = bundle_of_functor(heisenberg_functor())
    C = compose_bibundles(identity_bundle(P.target), P)
    M = find_bibundle_iso(C, P)
    assert M is not None
    assert verify_bibundle_morphism(C, P, M).ok


@settings(max_examples=25)
@given(st.integers(0, 2**32))
def test_random_functoriality(seed):
    f, g = random_functor_chain(random.Random(seed))
    comp, R, W = functoriality_witness(g, f)
    assert verify_bibundle(comp).ok
    assert verify_bibundle_morphism(comp, R, W).ok


@settings(max_examples=25)
@given(st.integers(0, 2**32))
def test_weak_invertibility_matches_essential_equivalence(seed):
    f, g = random_functor_chain(random.Random(seed))
    for F in (f, g):
        ess = functor_is_essential_equivalence(F).ok
        assert is_weakly_invertible(bundle_of_functor(F)).ok == ess


@settings(max_examples=10)
@given(st.integers(0, 2**32))
def test_associator(seed):
    rng = random.Random(seed)
    f, g = random_functor_chain(rng)
    P, Q = bundle_of_functor(f), bundle_of_functor(g)
    R = identity_bundle(g.target)
    left, right, W = associator_witness(R, Q, P)
    assert verify_bibundle_morphism(left, right, W).ok
