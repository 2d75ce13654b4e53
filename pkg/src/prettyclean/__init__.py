"""Shellability and pretty cleanness for multicomplexes and monomial ideals."""
from .core import (
    INF,
    MonomialIdeal,
    MonomialPrime,
    colon_ideal,
    colon_monomial,
    ideal_sum,
    intersection,
    is_irreducible,
    is_primary,
    is_prime,
    membership,
    minimalize,
    radical,
    saturation_ideal,
    saturation_var,
    substitute_ones,
)
from .decomposition import (
    almost_clean_chain,
    ass_totally_ordered,
    dimension_filtration,
    irreducible_decomposition,
    is_borel_type,
    pret_criterion,
    primary_decomposition,
)
from .multicomplex import (
    Multicomplex,
    arithmetic_degree_report,
    enumerate_facets,
    facet_test_algebraic,
    ideal_from_multicomplex,
    multicomplex_from_ideal,
)
from .shellability import (
    check_maximal_shelling,
    check_shelling_order,
    find_maximal_shelling,
    SearchCapExceeded,
    find_shelling,
    is_lower_neighbour,
    stanley_oracle,
    stanley_sets_of_order,
)
from .filtration import (
    build_maximal_shelling_filtration,
    f_monomial,
    filtration_from_witnesses,
    filtration_via_maximal_shelling,
    find_pretty_clean_filtration,
    prime_filtration_from_primary,
    refine_primary_to_clean,
    simplicial_clean_filtration,
    verify_colon_identity,
    verify_filtration,
)
from .textio import parse_ideal, parse_multicomplex

__version__ = "0.1.0"

__all__ = [
    "INF",
    "MonomialIdeal",
    "MonomialPrime",
    "Multicomplex",
    "SearchCapExceeded",
    "almost_clean_chain",
    "arithmetic_degree_report",
    "ass_totally_ordered",
    "build_maximal_shelling_filtration",
    "check_maximal_shelling",
    "check_shelling_order",
    "colon_ideal",
    "colon_monomial",
    "dimension_filtration",
    "enumerate_facets",
    "f_monomial",
    "facet_test_algebraic",
    "filtration_from_witnesses",
    "filtration_via_maximal_shelling",
    "find_maximal_shelling",
    "find_pretty_clean_filtration",
    "find_shelling",
    "ideal_from_multicomplex",
    "ideal_sum",
    "intersection",
    "irreducible_decomposition",
    "is_borel_type",
    "is_irreducible",
    "is_lower_neighbour",
    "is_primary",
    "is_prime",
    "membership",
    "minimalize",
    "multicomplex_from_ideal",
    "parse_ideal",
    "parse_multicomplex",
    "pret_criterion",
    "primary_decomposition",
    "prime_filtration_from_primary",
    "radical",
    "refine_primary_to_clean",
    "saturation_ideal",
    "saturation_var",
    "simplicial_clean_filtration",
    "stanley_oracle",
    "stanley_sets_of_order",
    "substitute_ones",
    "verify_colon_identity",
    "verify_filtration",
]
