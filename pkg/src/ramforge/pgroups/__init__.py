"""Finite p-group engine: the H(n, d) and A(n, d) families, recognition
and classification of minimal nonabelian p-groups, central products, and
supporting analysis over materialized Cayley tables."""

from .analysis import (
    AbcdResult,
    BurnsideResult,
    ClassifyResult,
    GroupBasics,
    automorphism_from_generator_images,
    build_A1d_via_Gd,
    burnside_action_check,
    central_product,
    canonical_central_pairing,
    check_abcd,
    classify_minimal,
    element_order_idx,
    group_basics,
    is_abelian,
    is_minimal_nonabelian,
    minimal_nonabelian_quotient,
)
from .base import (
    DEFAULT_LIMIT,
    AGroup,
    CyclicPGroup,
    DirectProductGroup,
    HGroup,
    PGroup,
    QuotientGroup,
    SubgroupGroup,
    TableGroup,
    make_group,
    parse_group_descriptor,
    tables,
)
from .iso import is_isomorphic

__all__ = [
    "AbcdResult",
    "AGroup",
    "BurnsideResult",
    "ClassifyResult",
    "CyclicPGroup",
    "DEFAULT_LIMIT",
    "DirectProductGroup",
    "GroupBasics",
    "HGroup",
    "PGroup",
    "QuotientGroup",
    "SubgroupGroup",
    "TableGroup",
    "automorphism_from_generator_images",
    "build_A1d_via_Gd",
    "burnside_action_check",
    "canonical_central_pairing",
    "central_product",
    "check_abcd",
    "classify_minimal",
    "element_order_idx",
    "group_basics",
    "is_abelian",
    "is_isomorphic",
    "is_minimal_nonabelian",
    "make_group",
    "minimal_nonabelian_quotient",
    "parse_group_descriptor",
    "tables",
]
