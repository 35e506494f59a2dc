"""Bibundles between finite groupoids.

A bibundle ``P: G -> H`` has anchors ``aL: P -> G0`` and ``aR: P -> H0``, a
left action ``g.p`` defined when ``s(g) = aL(p)`` and a right action ``p.h``
defined when ``aR(p) = t(h)``; the right action is principal over ``aL``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..errors import InvalidStructureError, MismatchError
from ..report import Report
from .groupoid import FinFunctor, FinGroupoid, FinNatTrans, guard, verify_functor, verify_nat


@dataclass(frozen=True, eq=False)
class FinBibundle:
    source: FinGroupoid
    target: FinGroupoid
    elements: tuple
    left_anchor: dict
    right_anchor: dict
    left_action: dict  # (g, p) -> g.p
    right_action: dict  # (p, h) -> p.h

    def __post_init__(self):
        guard(len(self.elements), "bundle elements")
        object.__setattr__(self, "elements", tuple(self.elements))

    @cached_property
    def _key(self):
        return (self.source, self.target, frozenset(self.elements),
                frozenset(self.left_anchor.items()), frozenset(self.right_anchor.items()),
                frozenset(self.left_action.items()), frozenset(self.right_action.items()))

    def __eq__(self, other):
        return self is other or (isinstance(other, FinBibundle) and self._key == other._key)

    def __hash__(self):
        return hash(frozenset(self.elements))

    def __repr__(self):
        return f"FinBibundle({len(self.elements)} elements)"

    def aL(self, p):
        return self.left_anchor[p]

    def aR(self, p):
        return self.right_anchor[p]

    def act_left(self, g, p):
        return self.left_action[(g, p)]

    def act_right(self, p, h):
        return self.right_action[(p, h)]

    @cached_property
    def right_solver(self):
        """``(p, p') -> h`` with ``p.h = p'`` (unique when the action is principal)."""
        out = {}
        for (p, h), q in self.right_action.items():
            out.setdefault((p, q), h)
        return out

    @cached_property
    def left_solver(self):
        """``(p, p') -> g`` with ``g.p = p'``."""
        out = {}
        for (g, p), q in self.left_action.items():
            out.setdefault((p, q), g)
        return out


def verify_bibundle(P: FinBibundle, subject="bibundle") -> Report:
    G, H = P.source, P.target
    rep = Report(subject)
    elems = set(P.elements)
    bad = next((p for p in P.elements
                if P.left_anchor.get(p) not in set(G.objects)
                or P.right_anchor.get(p) not in set(H.objects)), None)
    rep.add("anchors", bad is None, "anchors map elements to objects", bad)
    if bad is not None:
        return rep
    left_dom = {(g, p) for p in P.elements for g in G.out_of(P.aL(p))}
    right_dom = {(p, h) for p in P.elements for h in H.into(P.aR(p))}
    ok = set(P.left_action) == left_dom and all(v in elems for v in P.left_action.values())
    rep.add("left_domain", ok, "left action defined exactly on {(g, p) : s g = aL p}",
            None if ok else _domain_diff(P.left_action, left_dom))
    ok = set(P.right_action) == right_dom and all(v in elems for v in P.right_action.values())
    rep.add("right_domain", ok, "right action defined exactly on {(p, h) : aR p = t h}",
            None if ok else _domain_diff(P.right_action, right_dom))
    if rep.failed():
        return rep

    bad = next(([g, p] for (g, p), q in P.left_action.items()
                if P.aL(q) != G.target[g] or P.aR(q) != P.aR(p)), None)
    rep.add("left_anchors", bad is None, "aL(g.p) = t g and aR(g.p) = aR p", bad)
    bad = next(([p, h] for (p, h), q in P.right_action.items()
                if P.aR(q) != H.source[h] or P.aL(q) != P.aL(p)), None)
    rep.add("right_anchors", bad is None, "aR(p.h) = s h and aL(p.h) = aL p", bad)
    if rep.failed():
        return rep
    bad = next((p for p in P.elements
                if P.act_left(G.unit[P.aL(p)], p) != p or P.act_right(p, H.unit[P.aR(p)]) != p),
               None)
    rep.add("units", bad is None, "1.p = p = p.1", bad)
    bad = next(([g2, g1, p] for (g1, p), q in P.left_action.items() for g2 in G.out_of(G.target[g1])
                if P.act_left(G.comp[(g2, g1)], p) != P.act_left(g2, q)), None)
    rep.add("left_associativity", bad is None, "(g2 g1).p = g2.(g1.p)", bad)
    bad = next(([p, h1, h2] for (p, h1), q in P.right_action.items() for h2 in H.into(H.source[h1])
                if P.act_right(q, h2) != P.act_right(p, H.comp[(h1, h2)])), None)
    rep.add("right_associativity", bad is None, "(p.h1).h2 = p.(h1 h2)", bad)
    bad = next(([g, p, h] for (g, p), q in P.left_action.items() for h in H.into(P.aR(p))
                if P.act_right(q, h) != P.act_left(g, P.act_right(p, h))), None)
    rep.add("actions_commute", bad is None, "(g.p).h = g.(p.h)", bad)
    bad = _principal_defect(P, "right")
    rep.add("principal", bad is None,
            "aL is onto and H acts freely and transitively on the fibers of aL", bad)
    rep.derived["elements"] = len(P.elements)
    return rep


def _domain_diff(action, domain):
    extra = next((k for k in action if k not in domain), None)
    missing = next((k for k in domain if k not in action), None)
    return {"extra": extra and list(extra), "missing": missing and list(missing)}


def _principal_defect(P: FinBibundle, side: str):
    """First obstruction to principality of one action over the opposite anchor."""
    if side == "right":
        anchor, base, acting = P.aL, P.source, P.target
        outs = lambda p: [(h, P.act_right(p, h)) for h in acting.into(P.aR(p))]
    else:
        anchor, base, acting = P.aR, P.target, P.source
        outs = lambda p: [(g, P.act_left(g, p)) for g in acting.out_of(P.aL(p))]
    hit = {anchor(p) for p in P.elements}
    missing = next((x for x in base.objects if x not in hit), None)
    if missing is not None:
        return {"empty_fiber_over": missing}
    fibers = {}
    for p in P.elements:
        fibers.setdefault(anchor(p), []).append(p)
    for p in P.elements:
        reached = {}
        for a, q in outs(p):
            if q in reached:
                return {"not_free_at": p, "arrows": [reached[q], a]}
            reached[q] = a
        lost = next((q for q in fibers[anchor(p)] if q not in reached), None)
        if lost is not None:
            return {"not_transitive": [p, lost]}
    return None


def is_biprincipal(P: FinBibundle) -> bool:
    return verify_bibundle(P).ok and _principal_defect(P, "left") is None


def biprincipal_report(P: FinBibundle, subject="biprincipality") -> Report:
    rep = Report(subject)
    base = verify_bibundle(P)
    rep.add("bibundle", base.ok, "valid bibundle", None if base.ok else base.failed_ids())
    bad = _principal_defect(P, "left") if base.ok else "skipped"
    rep.add("left_principal", bad is None,
            "aR is onto and G acts freely and transitively on the fibers of aR", bad)
    rep.derived["biprincipal"] = rep.ok
    return rep


# --- bibundles of functors ---------------------------------------------------------

def bundle_of_functor(f: FinFunctor) -> FinBibundle:
    """``<f> = {(x, c) : f(x) = t(c)}``; ``g.(x, c) = (t g, f(g) c)``, ``(x, c).v = (x, c v)``."""
    G, H = f.source, f.target
    elements = [(x, c) for x in G.objects for c in H.into(f.obj(x))]
    guard(len(elements), "bundle elements")
    left = {}
    for x, c in elements:
        for g in G.out_of(x):
            left[(g, (x, c))] = (G.target[g], H.comp[(f(g), c)])
    right = {}
    for x, c in elements:
        for v in H.into(H.source[c]):
            right[((x, c), v)] = (x, H.comp[(c, v)])
    return FinBibundle(G, H, elements, {e: e[0] for e in elements},
                       {e: H.source[e[1]] for e in elements}, left, right)


def identity_bundle(G: FinGroupoid) -> FinBibundle:
    from .groupoid import identity_functor

    return bundle_of_functor(identity_functor(G))


def canonical_section(f: FinFunctor) -> dict:
    return {x: (x, f.target.unit[f.obj(x)]) for x in f.source.objects}


def functor_of_section(P: FinBibundle, sigma: dict) -> FinFunctor:
    """``f(x) = aR(sigma x)`` and ``f(g)`` the unique ``t`` with ``g.sigma(x) = sigma(y).t``."""
    G, H = P.source, P.target
    bad = next((x for x in G.objects if sigma.get(x) not in set(P.elements) or P.aL(sigma[x]) != x),
               None)
    if bad is not None:
        raise InvalidStructureError("not a section of the left anchor", object=bad)
    on_arrows = {}
    for g in G.arrows:
        x, y = G.source[g], G.target[g]
        moved = P.act_left(g, sigma[x])
        try:
            on_arrows[g] = P.right_solver[(sigma[y], moved)]
        except KeyError:
            raise InvalidStructureError("right action is not transitive on a fiber",
                                        arrow=g) from None
    return FinFunctor(G, H, {x: P.aR(sigma[x]) for x in G.objects}, on_arrows)


# --- bibundle maps -----------------------------------------------------------------

def verify_bundle_map(P: FinBibundle, Q: FinBibundle, delta: dict,
                      subject="bibundle map") -> Report:
    rep = Report(subject)
    if P.source != Q.source or P.target != Q.target:
        raise MismatchError("bibundles connect different groupoids")
    images = [delta.get(p) for p in P.elements]
    ok = set(images) == set(Q.elements) and len(set(images)) == len(images) == len(Q.elements)
    rep.add("bijective", ok, "is a bijection P -> Q", None if ok else {"sizes": [len(P.elements),
                                                                               len(Q.elements)]})
    if not ok:
        return rep
    bad = next((p for p in P.elements
                if Q.aL(delta[p]) != P.aL(p) or Q.aR(delta[p]) != P.aR(p)), None)
    rep.add("anchors", bad is None, "preserves both anchors", bad)
    if bad is not None:
        return rep
    bad = next(([g, p] for (g, p), q in P.left_action.items()
                if delta[q] != Q.act_left(g, delta[p])), None)
    rep.add("left_equivariant", bad is None, "d(g.p) = g.d(p)", bad)
    bad = next(([p, h] for (p, h), q in P.right_action.items()
                if delta[q] != Q.act_right(delta[p], h)), None)
    rep.add("right_equivariant", bad is None, "d(p.h) = d(p).h", bad)
    return rep


def nat_of_bundle_iso(f: FinFunctor, k: FinFunctor, delta: dict) -> FinNatTrans:
    """``d(sigma_f(x)) = sigma_k(x) . a(x)``, read off as the arrow part of ``d(x, 1)``."""
    P, Q = bundle_of_functor(f), bundle_of_functor(k)
    rep = verify_bundle_map(P, Q, delta)
    if not rep.ok:
        bad = rep.first_failure()
        raise InvalidStructureError(f"not a bibundle isomorphism: {bad.check_id} fails",
                                    report=rep, condition=bad.check_id)
    sf = canonical_section(f)
    return FinNatTrans(f, k, {x: delta[sf[x]][1] for x in f.source.objects})


def bundle_iso_of_nat(alpha: FinNatTrans) -> dict:
    """``(x, c) -> (x, alpha(x) c)``."""
    rep = verify_nat(alpha)
    if not rep.ok:
        bad = rep.first_failure()
        raise InvalidStructureError(f"not a natural transformation: {bad.check_id} fails",
                                    report=rep, condition=bad.check_id)
    f, H = alpha.source, alpha.source.target
    return {(x, c): (x, H.comp[(alpha(x), c)]) for x, c in bundle_of_functor(f).elements}


# --- composition -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FinComposite:
    bundle: FinBibundle
    classes: dict  # (p, q) -> representative pair


def compose_with_data(Q: FinBibundle, P: FinBibundle) -> FinComposite:
    """Orbits of ``{(p, q) : aR p = aL q}`` under ``(p, q) ~ (p.h, h^-1.q)``."""
    if P.target != Q.source:
        raise MismatchError("bibundles do not compose: middle groupoids differ")
    H = P.target
    pairs = [(p, q) for p in P.elements for q in Q.elements if P.aR(p) == Q.aL(q)]
    guard(len(pairs), "composable pairs")
    classes = {}
    reps = []
    for p, q in pairs:
        if (p, q) in classes:
            continue
        reps.append((p, q))
        for h in H.into(P.aR(p)):
            classes[(P.act_right(p, h), Q.act_left(H.inv[h], q))] = (p, q)
    left = {}
    for p, q in reps:
        for g in P.source.out_of(P.aL(p)):
            left[(g, (p, q))] = classes[(P.act_left(g, p), q)]
    right = {}
    for p, q in reps:
        for k in Q.target.into(Q.aR(q)):
            right[((p, q), k)] = classes[(p, Q.act_right(q, k))]
    bundle = FinBibundle(P.source, Q.target, reps, {r: P.aL(r[0]) for r in reps},
                         {r: Q.aR(r[1]) for r in reps}, left, right)
    return FinComposite(bundle, classes)


def compose_bibundles(Q: FinBibundle, P: FinBibundle) -> FinBibundle:
    return compose_with_data(Q, P).bundle


def reverse_bibundle(P: FinBibundle) -> FinBibundle:
    """``P^-1: H -> G`` with ``h.p = p.h^-1`` and ``p.g = g^-1.p``."""
    G, H = P.source, P.target
    left = {(H.inv[h], p): q for (p, h), q in P.right_action.items()}
    right = {(p, G.inv[g]): q for (g, p), q in P.left_action.items()}
    return FinBibundle(H, G, P.elements, dict(P.right_anchor), dict(P.left_anchor), left, right)


# --- isomorphism search ---------------------------------------------------------------

def iter_bibundle_isos(P: FinBibundle, Q: FinBibundle):
    """All bibundle isomorphisms ``P -> Q``, by backtracking with propagation.

    Choosing the image of one element fixes the images of its whole orbit
    under both actions; candidates are restricted to matching anchors.
    """
    if P.source != Q.source or P.target != Q.target:
        raise MismatchError("bibundles connect different groupoids")
    if len(P.elements) != len(Q.elements):
        return
    G, H = P.source, P.target
    by_anchor = {}
    for q in Q.elements:
        by_anchor.setdefault((Q.aL(q), Q.aR(q)), []).append(q)

    def propagate(delta, used, p, q):
        stack = [(p, q)]
        added = []
        ok = True
        while stack and ok:
            a, b = stack.pop()
            if a in delta:
                if delta[a] != b:
                    ok = False
                continue
            if b in used or (Q.aL(b), Q.aR(b)) != (P.aL(a), P.aR(a)):
                ok = False
                continue
            delta[a] = b
            used.add(b)
            added.append(a)
            for g in G.out_of(P.aL(a)):
                stack.append((P.act_left(g, a), Q.act_left(g, b)))
            for h in H.into(P.aR(a)):
                stack.append((P.act_right(a, h), Q.act_right(b, h)))
        return ok, added

    def search(delta, used):
        free = next((p for p in P.elements if p not in delta), None)
        if free is None:
            yield dict(delta)
            return
        for q in by_anchor.get((P.aL(free), P.aR(free)), []):
            if q in used:
                continue
            ok, added = propagate(delta, used, free, q)
            if ok:
                yield from search(delta, used)
            for a in added:
                used.discard(delta.pop(a))

    yield from search({}, set())


def find_bibundle_iso(P: FinBibundle, Q: FinBibundle):
    for delta in iter_bibundle_isos(P, Q):
        if verify_bundle_map(P, Q, delta).ok:
            return delta
    return None


# --- essential equivalences ------------------------------------------------------------

def is_essential_equivalence(f: FinFunctor, subject="essential equivalence") -> Report:
    rep = Report(subject)
    base = verify_functor(f)
    if not base.ok:
        raise InvalidStructureError("not a functor", report=base)
    G, H = f.source, f.target
    bad = None
    for x in G.objects:
        for y in G.objects:
            src = G.hom(x, y)
            tgt = H.hom(f.obj(x), f.obj(y))
            images = {f(g) for g in src}
            if len(images) != len(src) or len(images) != len(tgt):
                bad = {"objects": [x, y], "hom_sizes": [len(src), len(tgt)],
                       "image_size": len(images)}
                break
        if bad:
            break
    rep.add("fully_faithful", bad is None, "f is bijective on every hom-set", bad)
    image = {f.obj(x) for x in G.objects}
    lonely = next((y for y in H.objects if not any(H.target[c] in image for c in H.out_of(y))),
                  None)
    rep.add("essentially_surjective", lonely is None,
            "every object is isomorphic to an image object", lonely)
    biprincipal = is_biprincipal(bundle_of_functor(f))
    rep.derived["fully_faithful"] = bad is None
    rep.derived["essentially_surjective"] = lonely is None
    rep.derived["bundle_biprincipal"] = biprincipal
    return rep
