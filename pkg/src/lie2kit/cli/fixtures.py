"""The shipped document corpus and the ``sample`` generators."""

from __future__ import annotations

import random

from ..exactla import Matrix, Subspace
from ..fingpd import bundle_of_functor as fin_bundle, codiscrete, cyclic, point
from ..fingpd.samples import disc_to_pt, pt_to_pair, random_chain, random_groupoid, random_morita
from ..lie2 import (
    ab_cm,
    ad_cm,
    bundle_of_functor,
    heis_cm,
    heisenberg_functor,
    ideal_cm,
    lie2_of_crossed_module,
)
from ..lie2.samples import injected_violations, perturbed_crossed_module, random_functor_chain
from ..liealg import LieAlgebra, heis3, sl2
from ..twovect import (
    CocycleData,
    TwoTermComplex,
    cocycle_identities,
    random_cocycle,
    resolve_cocycle,
)


def two_object_cocycle(weights=("1/2", "1/2"), u21=1) -> CocycleData:
    """``del u = (u, 0)``; ``v1 = (0, 0)``, ``v2 = (1, 0)``, ``u12 = -1``."""
    cx = TwoTermComplex(1, 2, Matrix([[1], [0]]))
    return CocycleData(cx, [(0, 0), (1, 0)], [[(0,), (-1,)], [(u21,), (0,)]], weights)


def corrupted_sl2() -> LieAlgebra:
    """``sl2`` with ``[E, F] = E``; the Jacobi identity fails on ``(H, E, F)``."""
    return LieAlgebra.from_brackets(
        ["H", "E", "F"],
        {("H", "E"): {"E": 2}, ("H", "F"): {"F": -2}, ("E", "F"): {"E": 1}},
    )


def cell_list(d: CocycleData):
    zs = resolve_cocycle(d)
    return d, zs, cocycle_identities(d, zs)


def valid_corpus():
    """``(name, kind, value)`` triples that verify with exit code 0."""
    heis = heis3()
    phi = heisenberg_functor()
    f = pt_to_pair()
    return [
        ("heis3", "lie_algebra", heis),
        ("sl2", "lie_algebra", sl2()),
        ("heisCM", "crossed_module", heis_cm()),
        ("abCM", "crossed_module", ab_cm()),
        ("adCM-sl2", "crossed_module", ad_cm(sl2())),
        ("adCM-heis3", "crossed_module", ad_cm(heis)),
        ("idealCM-heis3", "crossed_module", ideal_cm(heis, Subspace(3, [(0, 0, 1)]))),
        ("heisLie2", "lie2_algebra", lie2_of_crossed_module(heis_cm())),
        ("phi", "lie2_functor", phi),
        ("phi-bundle", "lie_bibundle", bundle_of_functor(phi)),
        ("ptGpd", "fin_groupoid", point()),
        ("codisc-ab", "fin_groupoid", codiscrete(["a", "b"])),
        ("z2", "fin_groupoid", cyclic(2)),
        ("pt-to-pair", "fin_functor", f),
        ("pt-to-pair-bundle", "fin_bibundle", fin_bundle(f)),
        ("disc-to-pt", "fin_functor", disc_to_pt()),
        ("cocycle-two-object", "cocycle", two_object_cocycle()),
        ("cells-two-object", "cell_list", cell_list(two_object_cocycle())),
    ]


def invalid_corpus():
    """Well-formed documents that fail verification (exit code 1)."""
    broken = dict(injected_violations())
    return [
        ("sl2-corrupted", "lie_algebra", corrupted_sl2()),
        ("cm-axiom-i", "crossed_module", broken["axiom_i"]),
        ("cm-axiom-ii", "crossed_module", broken["axiom_ii"]),
        ("cocycle-weights", "cocycle", two_object_cocycle(weights=(1, 1))),
        ("cocycle-antisymmetry", "cocycle", two_object_cocycle(u21=2)),
    ]


TRUNCATED = '{\n  "version": "1",\n  "kind": "lie_algebra",\n  "name": "cut",\n  "payload": {\n'


# --- seeded samples -------------------------------------------------------------------

def _sample_crossed_module(rng):
    return perturbed_crossed_module(rng)


def _sample_lie2_functor(rng):
    return random_functor_chain(rng)[0]


def _sample_cocycle(rng):
    return random_cocycle(rng, rng.randint(1, 6), rng.randint(0, 5), rng.randint(0, 5))


def _sample_fin_functor(rng):
    return random_chain(rng)[0]


SAMPLERS = {
    "crossed_module": _sample_crossed_module,
    "lie2_functor": _sample_lie2_functor,
    "cocycle": _sample_cocycle,
    "fin_groupoid": random_groupoid,
    "fin_functor": _sample_fin_functor,
    "fin_bibundle": random_morita,
}


def sample(kind: str, seed: int):
    return SAMPLERS[kind](random.Random(seed))
