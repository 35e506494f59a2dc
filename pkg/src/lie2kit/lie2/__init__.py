"""Crossed modules, strict Lie 2-algebras, strict functors and Lie-algebra bibundles."""

from .bibundles import (
    Composite,
    LieBibundle,
    associator_witness,
    bundle_of_functor,
    compose_bibundles,
    compose_with_data,
    find_bibundle_iso,
    functoriality_witness,
    identity_bundle,
    is_weakly_invertible,
    left_unit_witness,
    right_unit_witness,
    verify_bibundle,
    verify_bibundle_morphism,
)
from .crossed import (
    AXIOM_I,
    AXIOM_II,
    CrossedModule,
    ab_cm,
    abelian_cm,
    ad_cm,
    direct_sum_cm,
    heis_cm,
    ideal_cm,
    verify_crossed_module,
)
from .functors import (
    Lie2Functor,
    compose_functors,
    functor_is_essential_equivalence,
    functor_of_crossed_map,
    identity_functor,
    section_defects,
    strict_inverse_obstruction,
    verify_lie2_functor,
)
from .lie2alg import (
    Lie2Algebra,
    canonical_identification,
    crossed_module_of_lie2,
    discrete_lie2,
    lie2_of_crossed_module,
    verify_lie2,
)


def heisenberg_functor():
    """The projection ``lie2(heis_cm) -> lie2(ab_cm)``: ``X -> E1, Y -> E2, Z -> 0``."""
    from ..exactla import Matrix

    return functor_of_crossed_map(heis_cm(), ab_cm(), Matrix.zeros(0, 1),
                                  Matrix([[1, 0, 0], [0, 1, 0]]))
