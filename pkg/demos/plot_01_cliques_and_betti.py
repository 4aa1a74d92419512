"""
Clique counts are Betti numbers
===============================

The Salvetti complex of a right-angled Artin group has one r-cell per
r-vertex clique of its graph and no differentials, so counting cliques
gives the Betti numbers directly.
"""

from raagrand import Graph, betti_numbers, raag_invariants
from raagrand.cliques import brute_force_clique_counts, enumerate_maximal_cliques

# The 4-cycle: the group is F2 x F2, a product of two free groups
c4 = Graph.cycle(4)
print("C4 betti numbers:", list(betti_numbers(c4)))
print("C4 maximal cliques:", enumerate_maximal_cliques(c4))

# A triangle gives the 3-torus, so the Betti numbers are a binomial row
print("K3 betti numbers:", list(betti_numbers(Graph.complete(3))))

# On a random graph the fast counter agrees with a scan of every subset
from raagrand import GnpParams, sample_gnp

g = sample_gnp(GnpParams(12, 0.5, seed=1))
print("G(12, 1/2) fast:", list(betti_numbers(g)))
print("G(12, 1/2) scan:", brute_force_clique_counts(g))

# Everything at once, as the CLI prints it
print(raag_invariants(c4).to_json())
