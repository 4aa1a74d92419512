"""Exact clique algorithms on bitset graphs.

Everything here works on ``Graph.rows`` (one int bitmask per vertex).  The
``brute_force_*`` functions scan all 2**n vertex subsets and exist only to
cross-check the fast paths on small graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .graph import Graph, bits

__all__ = [
    "DisjointCliquePair",
    "clique_count_vector",
    "count_cliques_of_size",
    "clique_number",
    "max_clique",
    "iter_cliques_of_size",
    "enumerate_maximal_cliques",
    "max_disjoint_clique_pair",
    "max_disjoint_clique_size",
    "count_bicliques",
    "brute_force_clique_counts",
    "brute_force_clique_number",
    "brute_force_max_disjoint_clique_pair",
    "brute_force_count_bicliques",
    "BRUTE_FORCE_MAX_N",
]

BRUTE_FORCE_MAX_N = 20

# Above this many stored r-cliques the pair search stops comparing against the
# stored list and instead runs a clique search on the complement of each new one.
_PAIR_LIST_LIMIT = 256


@dataclass(frozen=True)
class DisjointCliquePair:
    """Two vertex-disjoint complete subgraphs on ``r`` vertices each.

    ``first`` and ``second`` are sorted label tuples.
    """

    r: int
    first: tuple[int, ...]
    second: tuple[int, ...]

    def __post_init__(self):
        if len(self.first) != self.r or len(self.second) != self.r:
            raise ValueError("both parts must have exactly r vertices")
        if set(self.first) & set(self.second):
            raise ValueError("parts must be disjoint")

    def __str__(self):
        return f"({list(self.first)}, {list(self.second)})"


def _mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


# -- counting ---------------------------------------------------------------


def clique_count_vector(g: Graph) -> list[int]:
    """Number of complete subgraphs on exactly ``r`` vertices, for ``r = 0..ω``.

    ``counts[0] = 1`` accounts for the empty set.  Each clique is reached once,
    by extending with vertices of larger label only.
    """
    rows = g.rows
    counts = [1]

    def extend(cand: int, size: int) -> None:
        if len(counts) <= size + 1:
            counts.append(0)
        counts[size + 1] += cand.bit_count()
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            nxt = cand & rows[v]
            if nxt:
                extend(nxt, size + 1)

    full = (1 << g.n) - 1
    if full:
        extend(full, 0)
    return counts


def count_cliques_of_size(g: Graph, r: int) -> int:
    """Number of complete subgraphs on exactly ``r`` vertices."""
    if r < 0:
        raise ValueError("r must be non-negative")
    if r == 0:
        return 1
    rows = g.rows

    def extend(cand: int, need: int) -> int:
        if need == 1:
            return cand.bit_count()
        total = 0
        while cand.bit_count() >= need:
            low = cand & -cand
            cand ^= low
            nxt = cand & rows[low.bit_length() - 1]
            if nxt.bit_count() >= need - 1:
                total += extend(nxt, need - 1)
        return total

    return extend((1 << g.n) - 1, r)


# -- maximum clique ---------------------------------------------------------


def _degree_order(g: Graph) -> list[int]:
    return sorted(range(g.n), key=lambda v: (-g.rows[v].bit_count(), v))


def _relabelled_rows(rows, order) -> list[int]:
    pos = {v: i for i, v in enumerate(order)}
    out = []
    for v in order:
        m = 0
        for u in bits(rows[v]):
            m |= 1 << pos[u]
        out.append(m)
    return out


def _branch_and_bound(rows: list[int], cand: int, lower: int, target: int | None) -> list[int]:
    """Largest clique inside ``cand`` with more than ``lower`` vertices.

    Greedy sequential colouring bounds each branch.  Returns ``[]`` when no
    clique beats ``lower``; stops early once a clique of size ``target`` exists.
    """
    best = lower
    best_clique: list[int] = []
    clique: list[int] = []
    done = False

    def expand(cand: int, size: int) -> None:
        nonlocal best, best_clique, done
        order: list[int] = []
        colours: list[int] = []
        uncoloured = cand
        k = 0
        kmin = best - size
        while uncoloured:
            k += 1
            q = uncoloured
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~(low | rows[v])
                uncoloured ^= low
                if k > kmin:
                    order.append(v)
                    colours.append(k)
        for i in range(len(order) - 1, -1, -1):
            if size + colours[i] <= best:
                return
            v = order[i]
            nxt = cand & rows[v]
            clique.append(v)
            if nxt:
                expand(nxt, size + 1)
            elif size + 1 > best:
                best = size + 1
                best_clique = clique[:]
                if target is not None and best >= target:
                    done = True
            clique.pop()
            if done:
                return
            cand &= ~(1 << v)

    if cand and (target is None or lower < target):
        expand(cand, 0)
    return best_clique


def max_clique(g: Graph) -> tuple[int, ...]:
    """A maximum clique of ``g`` as a sorted label tuple (deterministic)."""
    if g.n == 0:
        return ()
    order = _degree_order(g)
    rows = _relabelled_rows(g.rows, order)
    found = _branch_and_bound(rows, (1 << g.n) - 1, 0, None)
    return tuple(sorted(order[i] for i in found))


def clique_number(g: Graph) -> int:
    """Exact size of the largest complete subgraph (0 for the empty graph)."""
    return len(max_clique(g))


def _clique_at_least(g: Graph, avoid: int, k: int) -> tuple[int, ...] | None:
    """Some clique of ``k`` vertices avoiding the mask ``avoid``, or None."""
    cand = ((1 << g.n) - 1) & ~avoid
    if cand.bit_count() < k:
        return None
    found = _branch_and_bound(list(g.rows), cand, k - 1, k)
    if not found:
        return None
    return tuple(sorted(found)[:k])


# -- enumeration ------------------------------------------------------------


def _colour_bound(rows, cand: int) -> int:
    k = 0
    while cand:
        k += 1
        q = cand
        while q:
            low = q & -q
            v = low.bit_length() - 1
            q &= ~(low | rows[v])
            cand ^= low
    return k


def iter_cliques_of_size(g: Graph, r: int) -> Iterator[tuple[int, ...]]:
    """All complete subgraphs on exactly ``r`` vertices, in lexicographic order."""
    rows = g.rows
    if r < 0:
        raise ValueError("r must be non-negative")
    if r == 0:
        yield ()
        return

    def walk(cand: int, need: int, prefix: list[int]) -> Iterator[tuple[int, ...]]:
        while cand:
            if cand.bit_count() < need:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            if need == 1:
                yield (*prefix, v)
                continue
            nxt = cand & rows[v]
            if nxt.bit_count() < need - 1:
                continue
            if need - 1 >= 3 and _colour_bound(rows, nxt) < need - 1:
                continue
            prefix.append(v)
            yield from walk(nxt, need - 1, prefix)
            prefix.pop()

    yield from walk((1 << g.n) - 1, r, [])


def enumerate_maximal_cliques(g: Graph) -> list[tuple[int, ...]]:
    """Inclusion-maximal cliques (Bron–Kerbosch with Tomita pivoting), sorted."""
    rows = g.rows
    out: list[tuple[int, ...]] = []

    def bk(clique: list[int], cand: int, excl: int) -> None:
        if not cand:
            if not excl:
                out.append(tuple(sorted(clique)))
            return
        pivot = max(bits(cand | excl), key=lambda u: ((cand & rows[u]).bit_count(), -u))
        for v in bits(cand & ~rows[pivot]):
            bit = 1 << v
            clique.append(v)
            bk(clique, cand & rows[v], excl & rows[v])
            clique.pop()
            cand &= ~bit
            excl |= bit

    if g.n:
        bk([], (1 << g.n) - 1, 0)
    out.sort()
    return out


# -- disjoint clique pairs (the (r, r) bi-cliques) --------------------------


def _has_disjoint_pair(g: Graph, r: int) -> bool:
    stored: list[int] = []
    for clique in iter_cliques_of_size(g, r):
        m = _mask_of(clique)
        if len(stored) < _PAIR_LIST_LIMIT:
            if any(not other & m for other in stored):
                return True
            stored.append(m)
        elif _clique_at_least(g, m, r) is not None:
            return True
    return False


def _first_disjoint_pair(g: Graph, r: int) -> DisjointCliquePair:
    # lexicographically first S that has a partner, then its first partner
    for first in iter_cliques_of_size(g, r):
        m = _mask_of(first)
        if _clique_at_least(g, m, r) is not None:
            second = next(c for c in iter_cliques_of_size(g, r) if not _mask_of(c) & m)
            return DisjointCliquePair(r, first, second)
    raise ValueError(f"no two disjoint {r}-cliques")


def max_disjoint_clique_pair(g: Graph) -> tuple[int, DisjointCliquePair | None]:
    """Largest ``r`` admitting two vertex-disjoint ``r``-cliques, with a witness.

    Sizes are tried downward from ``min(ω, n // 2)``.  The witness is the
    lexicographically first ordered pair ``(S, T)``: ``S`` is the first
    ``r``-clique that has a disjoint partner and ``T`` its first partner.
    Returns ``(0, None)`` iff ``n <= 1``.
    """
    if g.n <= 1:
        return 0, None
    for r in range(min(clique_number(g), g.n // 2), 0, -1):
        if _has_disjoint_pair(g, r):
            return r, _first_disjoint_pair(g, r)
    raise AssertionError("unreachable: two distinct vertices always form a (1, 1) pair")


def max_disjoint_clique_size(g: Graph) -> int:
    """``r`` of :func:`max_disjoint_clique_pair` without building the witness."""
    if g.n <= 1:
        return 0
    for r in range(min(clique_number(g), g.n // 2), 0, -1):
        if _has_disjoint_pair(g, r):
            return r
    raise AssertionError("unreachable: two distinct vertices always form a (1, 1) pair")


def count_bicliques(g: Graph, r: int) -> int:
    """Number of ordered pairs ``(S, T)`` of disjoint ``r``-cliques.

    Uses inclusion–exclusion over common subsets: with ``N(U)`` the number of
    ``r``-cliques containing ``U``, the count is ``sum_U (-1)^|U| N(U)^2``.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    if 2 * r > g.n:
        return 0
    containing: dict[int, int] = {}
    for clique in iter_cliques_of_size(g, r):
        m = _mask_of(clique)
        sub = m
        while True:
            containing[sub] = containing.get(sub, 0) + 1
            if not sub:
                break
            sub = (sub - 1) & m
    return sum(c * c if not u.bit_count() & 1 else -c * c for u, c in containing.items())


# -- brute-force oracles ----------------------------------------------------


def _complete_masks(g: Graph) -> list[int]:
    n = g.n
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force refused for n={n} > {BRUTE_FORCE_MAX_N}")
    rows = g.rows
    complete = bytearray(1 << n)
    complete[0] = 1
    for mask in range(1, 1 << n):
        low = mask & -mask
        rest = mask ^ low
        v = low.bit_length() - 1
        if complete[rest] and not rest & ~rows[v]:
            complete[mask] = 1
    return [m for m in range(1 << n) if complete[m]]


def brute_force_clique_counts(g: Graph) -> list[int]:
    """Clique counts by scanning every vertex subset (``n <= 20``)."""
    counts = [0] * (g.n + 1)
    for m in _complete_masks(g):
        counts[m.bit_count()] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


def brute_force_clique_number(g: Graph) -> int:
    return len(brute_force_clique_counts(g)) - 1


def _masks_by_size(g: Graph) -> dict[int, np.ndarray]:
    groups: dict[int, list[int]] = {}
    for m in _complete_masks(g):
        groups.setdefault(m.bit_count(), []).append(m)
    return {k: np.array(v, dtype=np.int64) for k, v in groups.items()}


def brute_force_count_bicliques(g: Graph, r: int) -> int:
    """Ordered disjoint pairs of ``r``-cliques by checking every pair of subsets."""
    masks = _masks_by_size(g).get(r)
    if masks is None:
        return 0
    return int(((masks[:, None] & masks[None, :]) == 0).sum())


def brute_force_max_disjoint_clique_pair(g: Graph) -> int:
    groups = _masks_by_size(g)
    for r in sorted(groups, reverse=True):
        if r == 0:
            continue
        masks = groups[r]
        if ((masks[:, None] & masks[None, :]) == 0).any():
            return r
    return 0
