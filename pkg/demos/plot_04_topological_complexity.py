"""
Bracketing topological complexity
=================================

TC of the Salvetti complex lies between 2r + 1, for the largest pair of
disjoint r-cliques, and 2 cd + 1.  On random graphs the two ends meet
the predicted window almost together.
"""

from raagrand import ExperimentConfig, Graph, raag_invariants, run_experiment
from raagrand.cliques import max_disjoint_clique_pair

# For the 4-cycle both ends equal 5, pinning TC exactly
r, pair = max_disjoint_clique_pair(Graph.cycle(4))
print("C4 disjoint pair:", r, pair, "TC window:", raag_invariants(Graph.cycle(4)).tc_window)

# A star has no two disjoint edges, so the bracket stays open
print("star TC window:", raag_invariants(Graph.star(4)).tc_window)

report = run_experiment(ExperimentConfig("tc", n=80, p=0.5, trials=20, seed=0))
print("theory TC window:", report.theory["tc_window"])
print("pair_r histogram:", report.empirical["histograms"]["pair_r"])
print("cd histogram:", report.empirical["histograms"]["cd"])
print("fractions:", report.empirical["fractions"])
