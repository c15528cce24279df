"""Importance and interaction indices for multilevel games (k-ary capacities)."""

from .game import (
    Coalition,
    LatticePoint,
    MultichoiceGame,
    SizeLimitError,
    add_games,
    check_table_size,
    decode_index,
    discrete_derivative,
    encode_index,
    extend_heterogeneous,
    is_kary_capacity,
    kernel,
    min_game,
    permute_attributes,
    random_game,
    reduce_group,
    restrict_absent,
    restrict_present_top,
    support,
)
from .indices import (
    IndexReport,
    Rational,
    classical_interaction,
    classical_shapley,
    importance,
    interaction,
    interaction_all_upto,
    interaction_recursive,
    interaction_via_derivatives,
    lattice_point_interaction,
    shapley_coefficient,
)
from .choquet import (
    IntegralEstimate,
    SectionCapacity,
    choquet_capacity,
    choquet_kary,
    integral_check,
    interaction_cellsum,
    section_capacity,
)
from .verify import (
    AXIOMS,
    VerificationReport,
    check_lemma4,
    efficiency_rhs,
    make_invariance_partner,
    make_null_extension,
    verify_axiom,
)
from .io import GameFormatError, load_game, save_game

__version__ = "0.1.0"

__all__ = [
    "AXIOMS",
    "Coalition",
    "GameFormatError",
    "IndexReport",
    "IntegralEstimate",
    "LatticePoint",
    "MultichoiceGame",
    "Rational",
    "SectionCapacity",
    "SizeLimitError",
    "VerificationReport",
    "add_games",
    "check_lemma4",
    "check_table_size",
    "choquet_capacity",
    "choquet_kary",
    "classical_interaction",
    "classical_shapley",
    "decode_index",
    "discrete_derivative",
    "efficiency_rhs",
    "encode_index",
    "extend_heterogeneous",
    "importance",
    "integral_check",
    "interaction",
    "interaction_all_upto",
    "interaction_cellsum",
    "interaction_recursive",
    "interaction_via_derivatives",
    "is_kary_capacity",
    "kernel",
    "lattice_point_interaction",
    "load_game",
    "make_invariance_partner",
    "make_null_extension",
    "min_game",
    "permute_attributes",
    "random_game",
    "reduce_group",
    "restrict_absent",
    "restrict_present_top",
    "save_game",
    "section_capacity",
    "shapley_coefficient",
    "support",
    "verify_axiom",
]
