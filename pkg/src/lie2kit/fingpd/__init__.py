"""Finite groupoids and their bibundle calculus, decided exhaustively."""

from .bibundle import (
    FinBibundle,
    FinComposite,
    biprincipal_report,
    bundle_iso_of_nat,
    bundle_of_functor,
    canonical_section,
    compose_bibundles,
    compose_with_data,
    find_bibundle_iso,
    functor_of_section,
    identity_bundle,
    is_biprincipal,
    is_essential_equivalence,
    iter_bibundle_isos,
    nat_of_bundle_iso,
    reverse_bibundle,
    verify_bibundle,
    verify_bundle_map,
)
from .groupoid import (
    FinFunctor,
    FinGroupoid,
    FinNatTrans,
    codiscrete,
    compose_functors,
    cyclic,
    discrete,
    disjoint_union,
    full_subgroupoid,
    groupoid_from_composition,
    identity_functor,
    point,
    product_groupoid,
    verify_functor,
    verify_groupoid,
    verify_nat,
)
from .linking import hom_profile, linking_groupoid
