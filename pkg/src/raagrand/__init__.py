"""Topological invariants of right-angled Artin groups of random graphs."""

from .asymptotics import (
    DomainError,
    critical_p,
    expected_betti,
    expected_biclique_count,
    f0_bound_check,
    lemma4_statistic,
    matula_window,
    poisson_pmf,
    second_moment_ratio,
    second_moment_terms,
    term_monotonicity_diagnostic,
    z_statistic,
)
from .cliques import (
    DisjointCliquePair,
    brute_force_clique_counts,
    clique_count_vector,
    clique_number,
    count_bicliques,
    enumerate_maximal_cliques,
    max_disjoint_clique_pair,
)
from .experiments import ExperimentConfig, ExperimentReport, emit_report, run_experiment
from .graph import (
    RNG_ALGORITHM,
    GnpParams,
    Graph,
    GraphFormatError,
    induced_subgraph,
    is_complete_on,
    parse_graph,
    sample_gnp,
    serialize_graph,
)
from .invariants import (
    BettiProfile,
    RaagInvariants,
    betti_numbers,
    cohomological_dimension,
    raag_invariants,
    tc_bounds,
    theoretical_tc_window,
)

__version__ = "0.1.0"
