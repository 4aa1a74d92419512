"""Topological invariants of the right-angled Artin group of a graph.

The Salvetti complex of ``G_Γ`` has one ``r``-cell per ``r``-vertex complete
subgraph and zero differentials, so Betti numbers are clique counts, the
cohomological dimension is the clique number, and ``cat = cd + 1``.
Topological complexity (non-reduced, ``TC(point) = 1``) is bracketed by
``2 r + 1`` for the largest pair of disjoint ``r``-cliques and ``2 cd + 1``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from .asymptotics import DEFAULT_EPSILON, matula_window
from .cliques import clique_count_vector, clique_number, max_disjoint_clique_size
from .graph import Graph

__all__ = [
    "BettiProfile",
    "RaagInvariants",
    "betti_numbers",
    "cohomological_dimension",
    "ls_category",
    "tc_bounds",
    "raag_invariants",
    "theoretical_tc_window",
]


@dataclass(frozen=True)
class BettiProfile:
    values: tuple[int, ...]

    def __getitem__(self, r: int) -> int:
        return self.values[r]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** r * b for r, b in enumerate(self.values))


def betti_numbers(g: Graph) -> BettiProfile:
    """``b_0 .. b_cd`` of ``G_Γ``: 1, n, then the number of r-cliques.

    The edgeless graph on zero vertices has the profile ``(1,)``.
    """
    return BettiProfile(tuple(clique_count_vector(g)))


def cohomological_dimension(g: Graph) -> int:
    return clique_number(g)


def ls_category(g: Graph) -> int:
    return cohomological_dimension(g) + 1


def tc_bounds(g: Graph) -> tuple[int, int]:
    """``(2 * pair_r + 1, 2 * cd + 1)``; the lower bound is vacuous (1) when n <= 1."""
    pair_r = max_disjoint_clique_size(g)
    return 2 * pair_r + 1, 2 * clique_number(g) + 1


@dataclass(frozen=True)
class RaagInvariants:
    n: int
    edge_count: int
    betti: BettiProfile
    cd: int
    cat: int
    pair_r: int
    tc_lower: int
    tc_upper: int

    @property
    def tc_window(self) -> tuple[int, int]:
        return self.tc_lower, self.tc_upper

    def to_dict(self) -> dict:
        d = asdict(self)
        d["betti"] = list(self.betti.values)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def raag_invariants(g: Graph) -> RaagInvariants:
    betti = betti_numbers(g)
    cd = len(betti) - 1
    pair_r = max_disjoint_clique_size(g)
    return RaagInvariants(
        n=g.n,
        edge_count=g.edge_count,
        betti=betti,
        cd=cd,
        cat=cd + 1,
        pair_r=pair_r,
        tc_lower=2 * pair_r + 1,
        tc_upper=2 * cd + 1,
    )


def theoretical_tc_window(n: int, p: float, epsilon: float = DEFAULT_EPSILON) -> tuple[int, int]:
    """``(2 floor(z - eps) + 1, 2 floor(z + eps) + 1)``: where TC lands a.a.s."""
    lo, hi = matula_window(n, p, epsilon)
    return 2 * lo + 1, 2 * hi + 1
