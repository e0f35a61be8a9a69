"""Exact and randomized verification tools for t-intersecting families and set-pair systems."""

from ekrkit.sets import BigRational, ElementSet, GroundParams, binomial, set_algebra
from ekrkit.compression import SetFamily, compress_once, is_up_set, up_closure
from ekrkit.predicates import (
    are_cross_t_intersecting,
    is_r_wise_intersecting,
    is_t_intersecting,
    satisfies_condition_one,
    satisfies_cross_relaxed,
    satisfies_relaxed_pairwise,
    satisfies_relaxed_rwise,
)
from ekrkit.bounds import (
    cross_bound_product,
    ekr_bound,
    rwise_bound,
    star_family,
    tightness_example,
    uniform_ekr_bound,
)
from ekrkit.search import (
    GuardExceeded,
    SearchOutcome,
    max_cross_product,
    max_family_pairwise,
    max_family_rwise,
    max_family_uniform,
)
from ekrkit.bollobas import (
    ConditionReport,
    McEstimate,
    PairSystem,
    bollobas_sum,
    check_conditions,
    exact_separation_probability,
    mc_separation_estimate,
    properly_separates,
    search_c_prime_violation,
    separation_count,
    verify_disjointness_exact,
)

__all__ = [
    "BigRational",
    "ConditionReport",
    "ElementSet",
    "GroundParams",
    "GuardExceeded",
    "McEstimate",
    "PairSystem",
    "SearchOutcome",
    "SetFamily",
    "are_cross_t_intersecting",
    "binomial",
    "bollobas_sum",
    "check_conditions",
    "compress_once",
    "cross_bound_product",
    "ekr_bound",
    "exact_separation_probability",
    "is_r_wise_intersecting",
    "is_t_intersecting",
    "is_up_set",
    "max_cross_product",
    "max_family_pairwise",
    "max_family_rwise",
    "max_family_uniform",
    "mc_separation_estimate",
    "properly_separates",
    "rwise_bound",
    "satisfies_condition_one",
    "satisfies_cross_relaxed",
    "satisfies_relaxed_pairwise",
    "satisfies_relaxed_rwise",
    "search_c_prime_violation",
    "separation_count",
    "set_algebra",
    "star_family",
    "tightness_example",
    "uniform_ekr_bound",
    "up_closure",
    "verify_disjointness_exact",
]
