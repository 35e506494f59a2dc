"""The linking groupoid of a Morita equivalence of finite groupoids.

For a biprincipal ``P: G -> H`` the objects are ``("G", x)`` and ``("H", y)``
and the arrows are ``("G", g)``, ``("P", p)``, ``("P^-1", p)`` and ``("H", h)``.
An element ``p`` is an arrow from ``("H", aR p)`` to ``("G", aL p)``;
``("P^-1", p)`` is its formal inverse.  Mixed composites use the actions:

* ``g o p = g.p`` and ``p o h = p.h``
* ``p^-1 o g = (g^-1.p)^-1`` and ``h o p^-1 = (p.h^-1)^-1``
* ``p o p'^-1`` is the ``g`` with ``g.p' = p``
* ``p'^-1 o p`` is the ``h`` with ``p'.h = p``
"""

from __future__ import annotations

from ..errors import InvalidStructureError
from .bibundle import FinBibundle, biprincipal_report
from .groupoid import FinFunctor, FinGroupoid, groupoid_from_composition


def linking_groupoid(P: FinBibundle):
    """Returns ``(L, w_G, w_H)`` with ``w_G: G -> L`` and ``w_H: H -> L``."""
    rep = biprincipal_report(P)
    if not rep.ok:
        raise InvalidStructureError("linking groupoid needs a biprincipal bibundle", report=rep)
    G, H = P.source, P.target
    objects = [("G", x) for x in G.objects] + [("H", y) for y in H.objects]
    arrows = ([("G", g) for g in G.arrows] + [("P", p) for p in P.elements]
              + [("P^-1", p) for p in P.elements] + [("H", h) for h in H.arrows])
    source, target = {}, {}
    for g in G.arrows:
        source[("G", g)], target[("G", g)] = ("G", G.source[g]), ("G", G.target[g])
    for h in H.arrows:
        source[("H", h)], target[("H", h)] = ("H", H.source[h]), ("H", H.target[h])
    for p in P.elements:
        source[("P", p)], target[("P", p)] = ("H", P.aR(p)), ("G", P.aL(p))
        source[("P^-1", p)], target[("P^-1", p)] = ("G", P.aL(p)), ("H", P.aR(p))

    def compose(second, first):
        (k2, a2), (k1, a1) = second, first
        if k2 == k1 == "G":
            return ("G", G.comp[(a2, a1)])
        if k2 == k1 == "H":
            return ("H", H.comp[(a2, a1)])
        if (k2, k1) == ("G", "P"):
            return ("P", P.act_left(a2, a1))
        if (k2, k1) == ("P", "H"):
            return ("P", P.act_right(a2, a1))
        if (k2, k1) == ("P^-1", "G"):
            return ("P^-1", P.act_left(G.inv[a1], a2))
        if (k2, k1) == ("H", "P^-1"):
            return ("P^-1", P.act_right(a1, H.inv[a2]))
        if (k2, k1) == ("P", "P^-1"):
            return ("G", P.left_solver[(a1, a2)])
        if (k2, k1) == ("P^-1", "P"):
            return ("H", P.right_solver[(a2, a1)])
        raise InvalidStructureError("arrows are not composable", second=second, first=first)

    L = groupoid_from_composition(objects, arrows, source, target, compose)
    wG = FinFunctor(G, L, {x: ("G", x) for x in G.objects}, {g: ("G", g) for g in G.arrows})
    wH = FinFunctor(H, L, {y: ("H", y) for y in H.objects}, {h: ("H", h) for h in H.arrows})
    return L, wG, wH


def hom_profile(L: FinGroupoid):
    """Sorted multiset of hom-set sizes; a cheap isomorphism invariant."""
    return sorted(len(L.hom(x, y)) for x in L.objects for y in L.objects)
