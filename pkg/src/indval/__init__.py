"""Exact inductive valuations on Q[x] over a p-adic base.

Augmentation chains, residual polynomial operators, key-polynomial detection
and lifting, graded factorization, and limit augmentations of continuous
families; all arithmetic exact.
"""

from .augmentation import (
    ContinuousChain,
    LimitValuation,
    StabilityReport,
    augment,
    compare_augmented,
    continuous_chain_from_json,
    limit_augment,
    stability,
    validate_continuous_chain,
)
from .basefield import PadicValuation, Poly, poly_divmod, poly_ext_gcd
from .chains import (
    ExpansionReport,
    InductiveValuation,
    Step,
    chain_from_json,
    expansion_report,
    is_equivalent,
    is_minimal,
    is_unit,
    key_semivaluation,
    phi_expansion,
    validate_chain,
)
from .errors import (
    ChainError,
    DomainError,
    IndvalError,
    ParseError,
    ResourceError,
)
from .keys import (
    GradedFactorization,
    KeyCheck,
    enumerate_keys,
    graded_divides,
    graded_factorization,
    is_key,
    key_check,
    lift_key,
)
from .residual import (
    GradedDecomposition,
    HomogeneousUnit,
    ResidualData,
    ResidualIdeal,
    change_key,
    change_normalizer,
    decompose,
    residual_data,
    residual_ideal,
    residual_lift,
    residual_poly,
    residual_unit,
    unit_lift,
    unit_residue,
)
from .towers import (
    TowerElem,
    TowerField,
    TowerPoly,
    ff_factor,
    ff_is_irreducible,
    monic_irreducibles,
    tower_arith,
    tower_extend,
)
from .values import (
    INFINITY,
    Value,
    combine,
    in_subgroup,
    is_commensurable,
    lex_cmp,
    subgroup_index,
)

__version__ = "0.1.0"

__all__ = [
    "ChainError",
    "ContinuousChain",
    "DomainError",
    "ExpansionReport",
    "GradedDecomposition",
    "GradedFactorization",
    "HomogeneousUnit",
    "INFINITY",
    "IndvalError",
    "InductiveValuation",
    "KeyCheck",
    "LimitValuation",
    "PadicValuation",
    "ParseError",
    "Poly",
    "ResidualData",
    "ResidualIdeal",
    "ResourceError",
    "StabilityReport",
    "Step",
    "TowerElem",
    "TowerField",
    "TowerPoly",
    "Value",
    "augment",
    "chain_from_json",
    "change_key",
    "change_normalizer",
    "combine",
    "compare_augmented",
    "continuous_chain_from_json",
    "decompose",
    "enumerate_keys",
    "expansion_report",
    "ff_factor",
    "ff_is_irreducible",
    "graded_divides",
    "graded_factorization",
    "in_subgroup",
    "is_commensurable",
    "is_equivalent",
    "is_key",
    "is_minimal",
    "is_unit",
    "key_check",
    "key_semivaluation",
    "lex_cmp",
    "lift_key",
    "limit_augment",
    "monic_irreducibles",
    "phi_expansion",
    "poly_divmod",
    "poly_ext_gcd",
    "residual_data",
    "residual_ideal",
    "residual_lift",
    "residual_poly",
    "residual_unit",
    "stability",
    "subgroup_index",
    "tower_arith",
    "tower_extend",
    "unit_lift",
    "unit_residue",
    "validate_chain",
    "validate_continuous_chain",
]
