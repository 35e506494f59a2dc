"""Named fixtures, random groupoids and functors, and exhaustive enumeration."""

from __future__ import annotations

import random
from itertools import product

from .bibundle import bundle_of_functor, compose_bibundles, reverse_bibundle
from .groupoid import (
    FinFunctor,
    FinGroupoid,
    FinNatTrans,
    codiscrete,
    cyclic,
    discrete,
    disjoint_union,
    full_subgroupoid,
    point,
    product_groupoid,
)


def pt_to_pair():
    """``* -> a`` from the point into ``codisc({a, b})``."""
    C = codiscrete(["a", "b"])
    return FinFunctor(point(), C, {"*": "a"}, {"id*": "a<-a"})


def disc_to_pt():
    D = discrete([1, 2])
    return FinFunctor(D, point(), {1: "*", 2: "*"}, {"id1": "id*", "id2": "id*"})


def z2() -> FinGroupoid:
    return cyclic(2)


# --- small groupoid zoo ---------------------------------------------------------

def small_groupoids():
    """Groupoids with at most 3 objects and 12 arrows."""
    return [
        point(), cyclic(2), cyclic(3), discrete([1, 2]), codiscrete(["a", "b"]),
        discrete([1, 2, 3]), codiscrete(["a", "b", "c"]),
        product_groupoid(cyclic(2), codiscrete(["a", "b"])),
        disjoint_union(point(), codiscrete(["a", "b"])),
        disjoint_union(cyclic(2), point()),
    ]


def random_groupoid(rng: random.Random, max_objects=4) -> FinGroupoid:
    """Disjoint union of ``K x codisc(n)`` blocks with ``K`` cyclic of order at most 3."""
    left = rng.randint(1, max_objects)
    parts = []
    while left:
        n = rng.randint(1, left)
        left -= n
        K = cyclic(rng.randint(1, 3))
        parts.append(product_groupoid(K, codiscrete([f"o{i}" for i in range(n)])))
    return parts[0] if len(parts) == 1 else disjoint_union(*parts)


# --- functors --------------------------------------------------------------------------

def components(G: FinGroupoid):
    """Connected components as lists of objects, base object first."""
    seen, out = set(), []
    for x in G.objects:
        if x in seen:
            continue
        comp = [G.target[g] for g in G.out_of(x)]
        comp = list(dict.fromkeys(comp))
        seen.update(comp)
        out.append([x] + [y for y in comp if y != x])
    return out


def _group_homs(G, x0, H, y0):
    """All homomorphisms ``Aut(x0) -> Aut(y0)`` as dicts (brute force; groups are tiny)."""
    src, tgt = G.hom(x0, x0), H.hom(y0, y0)
    out = []
    for images in product(tgt, repeat=len(src)):
        rho = dict(zip(src, images))
        if all(rho[G.comp[(a, b)]] == H.comp[(rho[a], rho[b])] for a in src for b in src):
            out.append(rho)
    return out


def _functor_from_data(G, H, comps, choices):
    """Assemble ``f(g) = c_y rho(e_y^-1 g e_x) c_x^-1`` from per-component data."""
    on_obj, on_arr = {}, {}
    for objs, (y0, rho, conn) in zip(comps, choices):
        x0 = objs[0]
        e = {x: G.hom(x0, x)[0] for x in objs}
        for x in objs:
            on_obj[x] = H.target[conn[x]]
        for x in objs:
            for g in G.out_of(x):
                y = G.target[g]
                loop = G.comp[(G.inv[e[y]], G.comp[(g, e[x])])]
                on_arr[g] = H.comp[(conn[y], H.comp[(rho[loop], H.inv[conn[x]])])]
    return FinFunctor(G, H, on_obj, on_arr)


def _component_choices(G, H, objs):
    x0 = objs[0]
    for y0 in H.objects:
        outs = H.out_of(y0)
        for rho in _group_homs(G, x0, H, y0):
            for rest in product(outs, repeat=len(objs) - 1):
                conn = {x0: H.unit[y0]}
                conn.update(zip(objs[1:], rest))
                yield (y0, rho, conn)


def all_functors(G: FinGroupoid, H: FinGroupoid):
    """Every functor ``G -> H``, each exactly once."""
    comps = components(G)
    per = [list(_component_choices(G, H, objs)) for objs in comps]
    for choices in product(*per):
        yield _functor_from_data(G, H, comps, choices)


def random_functor(rng: random.Random, G: FinGroupoid, H: FinGroupoid) -> FinFunctor:
    comps = components(G)
    choices = []
    for objs in comps:
        y0 = rng.choice(H.objects)
        rho = rng.choice(_group_homs(G, objs[0], H, y0))
        conn = {objs[0]: H.unit[y0]}
        for x in objs[1:]:
            conn[x] = rng.choice(H.out_of(y0))
        choices.append((y0, rho, conn))
    return _functor_from_data(G, H, comps, choices)


def all_nat_isos(f: FinFunctor, k: FinFunctor):
    """Every natural transformation ``f => k`` (all are invertible in a groupoid)."""
    G, H = f.source, f.target
    options = [H.hom(f.obj(x), k.obj(x)) for x in G.objects]
    for comps in product(*options):
        alpha = dict(zip(G.objects, comps))
        if all(H.comp[(k(g), alpha[G.source[g]])] == H.comp[(alpha[G.target[g]], f(g))]
               for g in G.arrows):
            yield FinNatTrans(f, k, alpha)


# --- Morita equivalences -------------------------------------------------------------------

def random_morita(rng: random.Random, max_objects=4):
    """A biprincipal bibundle: a full inclusion, its reverse, or a composite of the two kinds."""
    L = random_groupoid(rng, max_objects)

    def piece():
        objs = list(L.objects)
        rng.shuffle(objs)
        keep = [x for x in objs if rng.random() < 0.6] or objs[:1]
        # keep every component represented so the inclusion is essentially surjective
        for comp in components(L):
            if not any(x in keep for x in comp):
                keep.append(comp[0])
        sub, inc = full_subgroupoid(L, keep)
        return sub, bundle_of_functor(inc)

    kind = rng.randrange(3)
    if kind == 0:
        return piece()[1]
    if kind == 1:
        return reverse_bibundle(piece()[1])
    _, P1 = piece()
    _, P2 = piece()
    return compose_bibundles(reverse_bibundle(P2), P1)


def random_chain(rng: random.Random, max_objects=4):
    """Composable functors ``f: A -> B`` and ``g: B -> C``."""
    A, B, C = (random_groupoid(rng, max_objects) for _ in range(3))
    return random_functor(rng, A, B), random_functor(rng, B, C)

