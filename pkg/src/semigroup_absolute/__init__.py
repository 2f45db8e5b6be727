"""Exact description of the absolute (ergodic central measures) of commutative semigroups."""

from .absolute import (
    AbsoluteDescriptor,
    CentralityEquation,
    CharacterTable,
    Options,
    Stratum,
    centrality_equations,
    character_from,
    compare_quotient,
    describe_absolute,
    is_precentral,
    scale_character,
    strata,
)
from .harness import simulate, verify_central, verify_shift
from .latgeo import DistributionPoint, IntegerLattice
from .presentation import Presentation, RelationPair, normalize, parse_presentation
from .wordcalc import (
    MonomialOrder,
    RewriteSystem,
    cayley_levels,
    central_pairs_enumerated,
    central_pairs_exact,
    complete,
    normal_form,
)

__version__ = "0.1.0"

__all__ = [
    "AbsoluteDescriptor",
    "CentralityEquation",
    "CharacterTable",
    "DistributionPoint",
    "IntegerLattice",
    "MonomialOrder",
    "Options",
    "Presentation",
    "RelationPair",
    "RewriteSystem",
    "Stratum",
    "cayley_levels",
    "central_pairs_enumerated",
    "central_pairs_exact",
    "centrality_equations",
    "character_from",
    "compare_quotient",
    "complete",
    "describe_absolute",
    "is_precentral",
    "normal_form",
    "normalize",
    "parse_presentation",
    "scale_character",
    "simulate",
    "strata",
    "verify_central",
    "verify_shift",
]
