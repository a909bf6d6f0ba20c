"""Diagnosability toolkit for (n,k)-star networks under the PMC and MM* models."""

from .base import (
    BudgetError,
    DomainError,
    Model,
    NotApplicableError,
    StardiagError,
    VerificationError,
)
from .diagnosability import (
    CrosscheckReport,
    DiagnosabilityResult,
    WitnessReport,
    crosscheck,
    tg_bruteforce,
    tg_formula,
    witness_cycle6,
    witness_general,
    witness_snk2_mm,
)
from .faults import (
    FaultPair,
    distinguishable,
    distinguishable_mm,
    distinguishable_pmc,
    is_g_good_neighbor,
    is_g_good_neighbor_cut,
    min_subgraph_size_oracle,
    rg_connectivity_bruteforce,
    rg_connectivity_formula,
)
from .graph import TopologyGraph
from .syndrome import (
    Syndrome,
    TestAssignment,
    ambiguity_syndrome,
    build_assignment,
    diagnose,
    generate_syndrome,
    is_consistent,
    syndrome_from_text,
    syndrome_to_text,
)
from .topologies import (
    SplitWitness,
    build_complete,
    build_cycle,
    build_nk_star,
    build_star,
    canonical_vertex_enumeration,
    from_descriptor,
    verify_split,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "CrosscheckReport",
    "DiagnosabilityResult",
    "DomainError",
    "FaultPair",
    "Model",
    "NotApplicableError",
    "SplitWitness",
    "StardiagError",
    "Syndrome",
    "TestAssignment",
    "TopologyGraph",
    "VerificationError",
    "WitnessReport",
    "ambiguity_syndrome",
    "build_assignment",
    "build_complete",
    "build_cycle",
    "build_nk_star",
    "build_star",
    "canonical_vertex_enumeration",
    "crosscheck",
    "diagnose",
    "distinguishable",
    "distinguishable_mm",
    "distinguishable_pmc",
    "from_descriptor",
    "generate_syndrome",
    "is_consistent",
    "is_g_good_neighbor",
    "is_g_good_neighbor_cut",
    "min_subgraph_size_oracle",
    "rg_connectivity_bruteforce",
    "rg_connectivity_formula",
    "syndrome_from_text",
    "syndrome_to_text",
    "tg_bruteforce",
    "tg_formula",
    "verify_split",
    "witness_cycle6",
    "witness_general",
    "witness_snk2_mm",
]
