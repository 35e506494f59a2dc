import random

import pytest
from hypothesis import given, settings, strategies as st

from lie2kit.errors import InvalidStructureError
from lie2kit.fingpd import (
    bundle_of_functor,
    codiscrete,
    compose_bibundles,
    cyclic,
    find_bibundle_iso,
    full_subgroupoid,
    hom_profile,
    identity_bundle,
    is_essential_equivalence,
    linking_groupoid,
    product_groupoid,
    verify_functor,
    verify_groupoid,
)
from lie2kit.fingpd.samples import disc_to_pt, pt_to_pair, random_morita


def check_linking(P):
    L, wG, wH = linking_groupoid(P)
    assert verify_groupoid(L).ok
    for w in (wG, wH):
        assert verify_functor(w).ok
        assert is_essential_equivalence(w).ok
    # G and H sit inside L as full subgroupoids
    sub, _ = full_subgroupoid(L, [("G", x) for x in P.source.objects])
    assert len(sub.arrows) == len(P.source.arrows)
    sub, _ = full_subgroupoid(L, [("H", y) for y in P.target.objects])
    assert len(sub.arrows) == len(P.target.arrows)
    delta = find_bibundle_iso(compose_bibundles(bundle_of_functor(wH), P), bundle_of_functor(wG))
    assert delta is not None
    return L


def test_point_and_pair():
    L = check_linking(bundle_of_functor(pt_to_pair()))
    assert len(L.objects) == 3 and len(L.arrows) == 9
    # codiscrete: exactly one arrow between any two objects
    assert hom_profile(L) == [1] * 9
    assert hom_profile(L) == hom_profile(codiscrete(["x", "y", "z"]))


def test_identity_on_z2():
    L = check_linking(identity_bundle(cyclic(2)))
    assert len(L.objects) == 2 and len(L.arrows) == 8
    assert hom_profile(L) == hom_profile(product_groupoid(cyclic(2), codiscrete([1, 2])))


def test_mixed_composites():
    P = bundle_of_functor(pt_to_pair())
    L, _, _ = linking_groupoid(P)
    p = ("*", "a<-b")
    # p goes from ("H", b) to ("G", *); its formal inverse undoes it
    assert L.source[("P", p)] == ("H", "b") and L.target[("P", p)] == ("G", "*")
    assert L.compose(("P^-1", p), ("P", p)) == ("H", "b<-b")
    assert L.compose(("P", p), ("P^-1", p)) == ("G", "id*")
    # p o h uses the right action
    assert L.compose(("P", p), ("H", "b<-a")) == ("P", ("*", "a<-a"))


def test_non_biprincipal_rejected():
    with pytest.raises(InvalidStructureError):
        linking_groupoid(bundle_of_functor(disc_to_pt()))


@settings(max_examples=20)
@given(st.integers(0, 2**32))
def test_random_morita(seed):
    check_linking(random_morita(random.Random(seed)))
