"""Characteristic varieties: torsion characters and cosets, resonance
components, depth and certification, translated-component search, and
intersection reports."""

from .depth import (
    Certificate,
    CharacterError,
    CharModel,
    PointReport,
    build_model,
    certify_coset,
    depth,
    generic_depth,
    membership,
    quick_reject,
    scan_points,
    subgroup_closure,
    verify_point,
)
from .report import Component, PosetReport, char_poset_report, point_components, resonance_cosets
from .resonance import (
    BudgetExceeded,
    ResonanceComponent,
    local_components,
    neighborly_partitions,
    partition_component,
    resonance_components,
    verify_component,
)
from .torus import Character, TorusCoset, coset_intersect, exp_coset, parse_rotation, solve_equations
from .translated import Pattern, TranslatedComponent, pullback, retranslations, search_translated

__all__ = [
    "Certificate", "CharacterError", "CharModel", "PointReport", "build_model", "certify_coset",
    "depth", "generic_depth", "membership", "quick_reject", "scan_points", "subgroup_closure",
    "verify_point",
    "Component", "PosetReport", "char_poset_report", "point_components", "resonance_cosets",
    "BudgetExceeded", "ResonanceComponent", "local_components", "neighborly_partitions",
    "partition_component", "resonance_components", "verify_component",
    "Character", "TorusCoset", "coset_intersect", "exp_coset", "parse_rotation", "solve_equations",
    "Pattern", "TranslatedComponent", "pullback", "retranslations", "search_translated",
]
