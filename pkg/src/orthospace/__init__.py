"""Finite orthogonality spaces: predicates, lattices and isomorph-free census."""
from .core import (
    INFINITE,
    OrthoSpace,
    SpaceError,
    VertexSet,
    apex_vertices,
    closure,
    diameter,
    distance,
    from_json,
    from_maximal_cliques,
    is_connected,
    is_irreducible,
    maximal_orthogonal_sets,
    members,
    new_space,
    ortho_complement,
    rank,
    vset,
)
from .enumeration import (
    CanonicalForm,
    CensusFilter,
    CountsRow,
    Predicate,
    canonical_form,
    count_census,
    count_labeled_rank2_l1,
    enumerate_spaces,
    verify_table,
)
from .graph6 import parse_graph6, write_graph6
from .lattice import (
    ClosureLattice,
    compute_lattice,
    is_atomistic,
    is_dacey,
    is_modular,
    is_ortholattice,
    is_orthomodular,
    lattice_length,
    match_mo,
)
from .properties import (
    MatchingStructure,
    PropertyReport,
    WindmillStructure,
    Witness,
    WitnessKind,
    check_l1,
    check_l2,
    classify_rank2,
    classify_rank3,
    extend_with_apexes,
    full_report,
    is_irredundant,
    is_linear,
    is_strongly_irredundant,
    strip_common_core,
)

__version__ = "0.1.0"

__all__ = [
    "apex_vertices",
    "canonical_form",
    "CanonicalForm",
    "CensusFilter",
    "check_l1",
    "check_l2",
    "classify_rank2",
    "classify_rank3",
    "closure",
    "ClosureLattice",
    "compute_lattice",
    "count_census",
    "count_labeled_rank2_l1",
    "CountsRow",
    "diameter",
    "distance",
    "enumerate_spaces",
    "extend_with_apexes",
    "from_json",
    "from_maximal_cliques",
    "full_report",
    "INFINITE",
    "is_atomistic",
    "is_connected",
    "is_dacey",
    "is_irreducible",
    "is_irredundant",
    "is_linear",
    "is_modular",
    "is_ortholattice",
    "is_orthomodular",
    "is_strongly_irredundant",
    "lattice_length",
    "match_mo",
    "MatchingStructure",
    "maximal_orthogonal_sets",
    "members",
    "new_space",
    "ortho_complement",
    "OrthoSpace",
    "parse_graph6",
    "Predicate",
    "PropertyReport",
    "rank",
    "SpaceError",
    "strip_common_core",
    "verify_table",
    "VertexSet",
    "vset",
    "WindmillStructure",
    "Witness",
    "WitnessKind",
    "write_graph6",
]
