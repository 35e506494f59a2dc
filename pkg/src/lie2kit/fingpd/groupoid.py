"""Finite groupoids, functors and natural transformations.

Labels are arbitrary hashable values.  Composition reads right to left:
``G.compose(g2, g1)`` is ``g1`` followed by ``g2`` and needs
``source(g2) == target(g1)``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from itertools import product

from ..errors import InvalidStructureError, MismatchError, NotComposableError, SizeGuardError
from ..report import Report

DEFAULT_MAX_SIZE = 10_000


def max_size() -> int:
    return int(os.environ.get("LIE2_MAX_SIZE", DEFAULT_MAX_SIZE))


def guard(count: int, what="arrows"):
    limit = max_size()
    if count > limit:
        raise SizeGuardError(f"too many {what}: {count} > {limit} (set LIE2_MAX_SIZE to raise)",
                             count=count, limit=limit)


@dataclass(frozen=True, eq=False)
class FinGroupoid:
    objects: tuple
    arrows: tuple
    source: dict
    target: dict
    unit: dict
    comp: dict  # (g2, g1) -> g2 o g1
    inv: dict

    def __post_init__(self):
        guard(len(self.arrows))
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "arrows", tuple(self.arrows))

    @cached_property
    def _homs(self):
        homs = {}
        for g in self.arrows:
            homs.setdefault((self.source.get(g), self.target.get(g)), []).append(g)
        return homs

    @cached_property
    def _key(self):
        return (frozenset(self.objects), frozenset(self.arrows), frozenset(self.source.items()),
                frozenset(self.target.items()), frozenset(self.unit.items()),
                frozenset(self.comp.items()), frozenset(self.inv.items()))

    def __eq__(self, other):
        return self is other or (isinstance(other, FinGroupoid) and self._key == other._key)

    def __hash__(self):
        return hash((len(self.objects), len(self.arrows), frozenset(self.objects)))

    def __repr__(self):
        return f"FinGroupoid({len(self.objects)} objects, {len(self.arrows)} arrows)"

    def hom(self, x, y):
        """Arrows ``x -> y``."""
        return self._homs.get((x, y), [])

    def out_of(self, x):
        return [g for y in self.objects for g in self.hom(x, y)]

    def into(self, y):
        return [g for x in self.objects for g in self.hom(x, y)]

    def compose(self, g2, g1):
        try:
            return self.comp[(g2, g1)]
        except KeyError:
            raise NotComposableError("arrows are not composable",
                                     second=g2, first=g1) from None

    def compose_path(self, *arrows):
        """``compose_path(g3, g2, g1) = g3 o g2 o g1``."""
        out = arrows[-1]
        for g in reversed(arrows[:-1]):
            out = self.compose(g, out)
        return out


def groupoid_from_composition(objects, arrows, source, target, compose):
    """Build a groupoid from a composition function; units and inverses are found by search."""
    objects, arrows = list(objects), list(arrows)
    guard(len(arrows))
    source, target = dict(source), dict(target)
    comp = {}
    for g1 in arrows:
        for g2 in arrows:
            if source[g2] == target[g1]:
                comp[(g2, g1)] = compose(g2, g1)
    unit = {}
    for x in objects:
        for e in arrows:
            if source[e] == x == target[e] and all(
                comp[(e, g)] == g for g in arrows if target[g] == x
            ):
                unit[x] = e
                break
        else:
            raise InvalidStructureError("object has no identity arrow", object=x)
    inv = {}
    for g in arrows:
        for h in arrows:
            if (source[h] == target[g] and target[h] == source[g]
                    and comp[(h, g)] == unit[source[g]]):
                inv[g] = h
                break
        else:
            raise InvalidStructureError("arrow has no inverse", arrow=g)
    return FinGroupoid(objects, arrows, source, target, unit, comp, inv)


# --- standard groupoids -------------------------------------------------------

def codiscrete(objects) -> FinGroupoid:
    """Pair groupoid: one arrow ``"b<-a"`` from ``a`` to ``b`` for every pair."""
    objects = list(objects)
    label = {(a, b): f"{b}<-{a}" for a in objects for b in objects}
    arrows = [label[(a, b)] for b in objects for a in objects]
    source = {label[(a, b)]: a for a, b in label}
    target = {label[(a, b)]: b for a, b in label}
    pairs = {v: k for k, v in label.items()}

    def compose(g2, g1):
        return label[(pairs[g1][0], pairs[g2][1])]

    return groupoid_from_composition(objects, arrows, source, target, compose)


def discrete(objects) -> FinGroupoid:
    objects = list(objects)
    arrows = [f"id{x}" for x in objects]
    ends = dict(zip(arrows, objects))
    return FinGroupoid(objects, arrows, ends, ends, dict(zip(objects, arrows)),
                       {(a, a): a for a in arrows}, {a: a for a in arrows})


def point() -> FinGroupoid:
    return FinGroupoid(["*"], ["id*"], {"id*": "*"}, {"id*": "*"}, {"*": "id*"},
                       {("id*", "id*"): "id*"}, {"id*": "id*"})


def cyclic(n: int) -> FinGroupoid:
    """The cyclic group of order ``n`` as a one-object groupoid with arrows ``"g^k"``."""
    arrows = [f"g^{k}" for k in range(n)]
    ends = {a: "*" for a in arrows}
    power = {a: k for k, a in enumerate(arrows)}
    return FinGroupoid(
        ["*"], arrows, ends, dict(ends), {"*": arrows[0]},
        {(a, b): arrows[(power[a] + power[b]) % n] for a in arrows for b in arrows},
        {a: arrows[(-power[a]) % n] for a in arrows},
    )


def product_groupoid(G: FinGroupoid, H: FinGroupoid) -> FinGroupoid:
    guard(len(G.arrows) * len(H.arrows))
    objects = [(x, y) for x in G.objects for y in H.objects]
    arrows = [(g, h) for g in G.arrows for h in H.arrows]
    source = {(g, h): (G.source[g], H.source[h]) for g, h in arrows}
    target = {(g, h): (G.target[g], H.target[h]) for g, h in arrows}
    comp = {}
    for (g2, h2), (g1, h1) in product(arrows, arrows):
        if (g2, g1) in G.comp and (h2, h1) in H.comp:
            comp[((g2, h2), (g1, h1))] = (G.comp[(g2, g1)], H.comp[(h2, h1)])
    return FinGroupoid(objects, arrows, source, target,
                       {(x, y): (G.unit[x], H.unit[y]) for x, y in objects}, comp,
                       {(g, h): (G.inv[g], H.inv[h]) for g, h in arrows})


def disjoint_union(*parts: FinGroupoid) -> FinGroupoid:
    """Labels become ``(index, label)``."""
    objects, arrows, source, target, unit, comp, inv = [], [], {}, {}, {}, {}, {}
    for i, G in enumerate(parts):
        objects += [(i, x) for x in G.objects]
        arrows += [(i, g) for g in G.arrows]
        for g in G.arrows:
            source[(i, g)] = (i, G.source[g])
            target[(i, g)] = (i, G.target[g])
            inv[(i, g)] = (i, G.inv[g])
        for x in G.objects:
            unit[(i, x)] = (i, G.unit[x])
        for (g2, g1), g in G.comp.items():
            comp[((i, g2), (i, g1))] = (i, g)
    return FinGroupoid(objects, arrows, source, target, unit, comp, inv)


def full_subgroupoid(G: FinGroupoid, U0):
    """Restriction of ``G`` to the objects ``U0``; returns ``(subgroupoid, inclusion)``."""
    U0 = [x for x in G.objects if x in set(U0)]
    if not U0:
        raise InvalidStructureError("the object subset must be nonempty")
    keep = set(U0)
    arrows = [g for g in G.arrows if G.source[g] in keep and G.target[g] in keep]
    kept = set(arrows)
    sub = FinGroupoid(
        U0, arrows,
        {g: G.source[g] for g in arrows}, {g: G.target[g] for g in arrows},
        {x: G.unit[x] for x in U0},
        {k: v for k, v in G.comp.items() if k[0] in kept and k[1] in kept},
        {g: G.inv[g] for g in arrows},
    )
    return sub, FinFunctor(sub, G, {x: x for x in U0}, {g: g for g in arrows})


# --- verification -----------------------------------------------------------------

def verify_groupoid(G: FinGroupoid, subject="groupoid") -> Report:
    rep = Report(subject)
    objs, arrs = set(G.objects), set(G.arrows)
    bad = next((g for g in G.arrows if G.source.get(g) not in objs or G.target.get(g) not in objs),
               None)
    rep.add("endpoints", bad is None, "source and target are objects", bad)
    bad = next((x for x in G.objects if G.unit.get(x) not in arrs), None)
    if bad is None:
        bad = next((x for x in G.objects
                    if G.source[G.unit[x]] != x or G.target[G.unit[x]] != x), None)
    rep.add("unit_ends", bad is None, "s(1_x) = t(1_x) = x", bad)
    if rep.failed():
        return rep

    composable = {(g2, g1) for g1 in G.arrows for g2 in G.arrows if G.source[g2] == G.target[g1]}
    extra = next((k for k in G.comp if k not in composable), None)
    missing = next((k for k in sorted(composable, key=repr) if k not in G.comp), None)
    bad = None if extra is None and missing is None else {"extra": extra, "missing": missing}
    rep.add("comp_domain", bad is None, "composition defined exactly on composable pairs", bad)
    if bad is not None:
        return rep
    bad = next(([g2, g1] for (g2, g1), g in G.comp.items()
                if g not in arrs or G.source[g] != G.source[g1] or G.target[g] != G.target[g2]),
               None)
    rep.add("comp_ends", bad is None, "s(g2 g1) = s(g1) and t(g2 g1) = t(g2)", bad)
    if bad is not None:
        return rep
    bad = next((g for g in G.arrows
                if G.comp[(G.unit[G.target[g]], g)] != g or G.comp[(g, G.unit[G.source[g]])] != g),
               None)
    rep.add("unit_laws", bad is None, "1 g = g = g 1", bad)
    bad = None
    for g1 in G.arrows:
        for g2 in G.out_of(G.target[g1]):
            for g3 in G.out_of(G.target[g2]):
                if G.comp[(G.comp[(g3, g2)], g1)] != G.comp[(g3, G.comp[(g2, g1)])]:
                    bad = [g3, g2, g1]
                    break
            if bad:
                break
        if bad:
            break
    rep.add("associativity", bad is None, "(g3 g2) g1 = g3 (g2 g1)", bad)
    bad = next((g for g in G.arrows
                if G.inv.get(g) not in arrs
                or G.source[G.inv[g]] != G.target[g] or G.target[G.inv[g]] != G.source[g]
                or G.comp[(G.inv[g], g)] != G.unit[G.source[g]]
                or G.comp[(g, G.inv[g])] != G.unit[G.target[g]]), None)
    rep.add("inverses", bad is None, "g^-1 g = 1 and g g^-1 = 1", bad)
    rep.derived["objects"] = len(G.objects)
    rep.derived["arrows"] = len(G.arrows)
    return rep


# --- functors and natural transformations ---------------------------------------------

@dataclass(frozen=True, eq=False)
class FinFunctor:
    source: FinGroupoid
    target: FinGroupoid
    on_objects: dict
    on_arrows: dict

    def _key(self):
        return (self.source, self.target, frozenset(self.on_objects.items()),
                frozenset(self.on_arrows.items()))

    def __eq__(self, other):
        return isinstance(other, FinFunctor) and self._key() == other._key()

    def __hash__(self):
        return hash(frozenset(self.on_objects.items()))

    def __repr__(self):
        return f"FinFunctor({self.source!r} -> {self.target!r})"

    def __call__(self, g):
        return self.on_arrows[g]

    def obj(self, x):
        return self.on_objects[x]


def identity_functor(G: FinGroupoid) -> FinFunctor:
    return FinFunctor(G, G, {x: x for x in G.objects}, {g: g for g in G.arrows})


def compose_functors(g: FinFunctor, f: FinFunctor) -> FinFunctor:
    """``g o f``."""
    if f.target != g.source:
        raise MismatchError("functors are not composable")
    return FinFunctor(f.source, g.target,
                      {x: g.on_objects[y] for x, y in f.on_objects.items()},
                      {a: g.on_arrows[b] for a, b in f.on_arrows.items()})


def verify_functor(f: FinFunctor, subject="functor") -> Report:
    G, H = f.source, f.target
    rep = Report(subject)
    bad = next((x for x in G.objects if f.on_objects.get(x) not in set(H.objects)), None)
    if bad is None:
        bad = next((g for g in G.arrows if f.on_arrows.get(g) not in set(H.arrows)), None)
    rep.add("total", bad is None, "defined on every object and arrow", bad)
    if bad is not None:
        return rep
    bad = next((g for g in G.arrows
                if H.source[f(g)] != f.obj(G.source[g]) or H.target[f(g)] != f.obj(G.target[g])),
               None)
    rep.add("endpoints", bad is None, "s f = f s and t f = f t", bad)
    bad = next((x for x in G.objects if f(G.unit[x]) != H.unit[f.obj(x)]), None)
    rep.add("units", bad is None, "f(1_x) = 1_{f x}", bad)
    bad = None
    if not rep.failed():
        bad = next(([g2, g1] for (g2, g1), g in G.comp.items()
                    if f(g) != H.comp[(f(g2), f(g1))]), None)
    rep.add("composition", bad is None, "f(g2 g1) = f(g2) f(g1)", bad)
    return rep


@dataclass(frozen=True, eq=False)
class FinNatTrans:
    """Components ``alpha(x): f(x) -> k(x)``."""

    source: FinFunctor
    target: FinFunctor
    component: dict

    def __eq__(self, other):
        return (isinstance(other, FinNatTrans) and self.source == other.source
                and self.target == other.target and self.component == other.component)

    def __hash__(self):
        return hash(frozenset(self.component.items()))

    def __call__(self, x):
        return self.component[x]


def verify_nat(alpha: FinNatTrans, subject="natural transformation") -> Report:
    f, k = alpha.source, alpha.target
    G, H = f.source, f.target
    rep = Report(subject)
    if f.source != k.source or f.target != k.target:
        rep.add("parallel", False, "both functors share source and target", "mismatch")
        return rep
    bad = next((x for x in G.objects
                if alpha.component.get(x) not in set(H.arrows)
                or H.source[alpha(x)] != f.obj(x) or H.target[alpha(x)] != k.obj(x)), None)
    rep.add("components", bad is None, "alpha(x): f(x) -> k(x)", bad)
    if bad is not None:
        return rep
    bad = next((g for g in G.arrows
                if H.comp[(k(g), alpha(G.source[g]))] != H.comp[(alpha(G.target[g]), f(g))]), None)
    rep.add("naturality", bad is None, "k(g) alpha(x) = alpha(y) f(g)", bad)
    return rep
