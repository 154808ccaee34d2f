"""Exact computations with finite linear categories, group actions and gradings."""

from .actions import (
    GAction,
    OrbitData,
    Quotient,
    check_action,
    is_free,
    orbit_data,
    permutation_action,
    quotient_category,
    skeleton_equivalence,
    skew_category,
    trivial_action,
)
from .algebras import (
    Algebra,
    AlgebraMap,
    algebra_of_category,
    check_algebra,
    coherence_skew,
    coherence_smash,
    duality_matrix_check,
    skew_group_algebra,
    smash_algebra,
)
from .gradings import (
    Grading,
    SmashProduct,
    check_grading,
    induced_grading,
    reconstruct_cover,
    smash_product,
    verify_smash_quotient,
    verify_smash_skew_duality,
)
from .groups import Group, cyclic_group, direct_product, group_from_table, klein_four, symmetric_group
from .lincat import (
    LinCat,
    LinFunctor,
    Morphism,
    Quiver,
    compose,
    path_category,
    validate_category,
)
from .modules import (
    GradedModule,
    Module,
    check_graded_module,
    check_module,
    cover_to_graded,
    graded_to_cover,
    induced_sum_check,
    is_fixed,
    restrict,
    twist_module,
)
from .scalars import QQ, Field, FieldSpec, Residue, make_field

__version__ = "0.1.0"
