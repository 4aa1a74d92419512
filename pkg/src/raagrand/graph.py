"""Graph representation, G(n, p) sampling and the edge-list file format.

Graphs are stored as one Python integer per vertex whose set bits are the
neighbours of that vertex.  All sampling goes through a Philox4x64-10
counter-based generator so that a (n, p, seed) triple always produces the
same graph, independently of platform and of how trials are scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "RNG_ALGORITHM",
    "Graph",
    "GnpParams",
    "GraphFormatError",
    "vertex_set",
    "split_seed",
    "uniform_stream",
    "sample_gnp",
    "is_complete_on",
    "induced_subgraph",
    "parse_graph",
    "serialize_graph",
    "read_graph",
    "write_graph",
]

_U64 = (1 << 64) - 1

RNG_ALGORITHM = (
    "philox4x64-10 (numpy.random.Philox, key=seed, counter=0); "
    "uniform=(u64>>11)*2^-53; one draw per pair i<j in row-major order; "
    "trial seed=SeedSequence(master_seed, spawn_key=(trial,)).generate_state(1, uint64)"
)


class GraphFormatError(ValueError):
    """Raised for malformed graph files; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def bits(x: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``rows[v]`` is the neighbourhood bitmask of ``v``.  Instances are
    immutable and are validated on construction.
    """

    n: int
    rows: tuple[int, ...]
    edge_count: int = field(init=False, compare=False)

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if self.n < 0 or len(rows) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(rows)}")
        full = (1 << self.n) - 1
        degree_sum = 0
        for v, row in enumerate(rows):
            if row < 0 or row & ~full:
                raise ValueError(f"row {v} references a vertex outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not rows[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")
            degree_sum += row.bit_count()
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "edge_count", degree_sum // 2)

    # -- constructors -------------------------------------------------------

    @classmethod
    def _trusted(cls, n: int, rows: tuple[int, ...]) -> "Graph":
        # rows already known symmetric and loop-free
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", rows)
        object.__setattr__(g, "edge_count", sum(r.bit_count() for r in rows) // 2)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_adjacency(cls, matrix) -> "Graph":
        a = np.asarray(matrix, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency matrix must be square")
        return cls(a.shape[0], _rows_from_bool_matrix(a))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    # -- queries ------------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` pairs with ``u < v``, sorted."""
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u] >> (u + 1) << (u + 1))]

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges():
            a[u, v] = a[v, u] = True
        return a

    def relabel(self, perm) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        perm = list(perm)
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of 0..n-1")
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def with_edge(self, u: int, v: int) -> "Graph":
        return Graph.from_edges(self.n, self.edges() + [(u, v)])

    def __repr__(self):
        return f"Graph(n={self.n}, edge_count={self.edge_count})"


@dataclass(frozen=True)
class GnpParams:
    n: int
    p: float
    seed: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"n must be a non-negative integer, got {self.n!r}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p!r}")
        if not 0 <= self.seed <= _U64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def vertex_set(g: Graph, members: Iterable[int]) -> frozenset[int]:
    """Validate ``members`` against ``g`` and return them as a frozenset."""
    members = list(members)
    s = frozenset(members)
    if len(s) != len(members):
        raise ValueError("vertex set has duplicate members")
    for v in s:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    return s


def _mask(g: Graph, s: Iterable[int]) -> int:
    m = 0
    for v in vertex_set(g, s):
        m |= 1 << v
    return m


def split_seed(master_seed: int, index: int) -> int:
    """Derive the 64-bit seed of stream ``index`` from ``master_seed``.

    Depends only on the pair, never on how many draws other streams made.
    """
    ss = np.random.SeedSequence(int(master_seed), spawn_key=(int(index),))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def uniform_stream(seed: int, size: int) -> np.ndarray:
    """``size`` doubles in [0, 1) from Philox4x64-10 keyed by ``seed``."""
    raw = np.random.Philox(key=int(seed)).random_raw(size)
    return (np.asarray(raw, dtype=np.uint64) >> np.uint64(11)) * (1.0 / (1 << 53))


def _rows_from_bool_matrix(a: np.ndarray) -> tuple[int, ...]:
    n = a.shape[0]
    if n == 0:
        return ()
    packed = np.packbits(a, axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


@lru_cache(maxsize=8)
def _pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, 1)


def sample_gnp(params: GnpParams) -> Graph:
    """Sample an Erdős–Rényi graph.

    Pair ``(i, j)``, ``i < j``, taken in row-major order, consumes the next
    uniform draw and is an edge iff the draw is below ``p``.
    """
    n = params.n
    iu, ju = _pairs(n)
    present = uniform_stream(params.seed, len(iu)) < params.p
    a = np.zeros((n, n), dtype=bool)
    a[iu[present], ju[present]] = True
    a |= a.T
    return Graph._trusted(n, _rows_from_bool_matrix(a))


def is_complete_on(g: Graph, s: Iterable[int]) -> bool:
    """True iff every two distinct vertices of ``s`` are adjacent in ``g``."""
    m = _mask(g, s)
    rows = g.rows
    for v in bits(m):
        if (m & ~(1 << v)) & ~rows[v]:
            return False
    return True


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """Subgraph induced on ``s``; vertices relabelled ``0..|s|-1`` in increasing order."""
    members = sorted(vertex_set(g, s))
    index = {v: i for i, v in enumerate(members)}
    rows = []
    for v in members:
        row = 0
        for u in bits(g.rows[v]):
            if u in index:
                row |= 1 << index[u]
        rows.append(row)
    return Graph._trusted(len(members), tuple(rows))


# -- edge-list file format -------------------------------------------------


def serialize_graph(g: Graph) -> str:
    """First line ``"n m"``, then one ``"u v"`` line per edge with ``u < v``."""
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def _ints(line: str, lineno: int, what: str) -> tuple[int, int]:
    parts = line.split(" ")
    if len(parts) != 2 or not all(p.isdigit() and p.isascii() for p in parts):
        raise GraphFormatError(f"expected {what} as two decimal integers, got {line!r}", lineno)
    return int(parts[0]), int(parts[1])


def parse_graph(text: str) -> Graph:
    if not text:
        raise GraphFormatError("empty input", 1)
    if not text.endswith("\n"):
        raise GraphFormatError("input must be newline-terminated", text.count("\n") + 1)
    lines = text[:-1].split("\n")
    n, m = _ints(lines[0], 1, "header 'n m'")
    if m > n * (n - 1) // 2:
        raise GraphFormatError(f"{m} edges impossible on {n} vertices", 1)
    if len(lines) - 1 != m:
        raise GraphFormatError(f"header declares {m} edges but {len(lines) - 1} edge lines follow", 1)
    rows = [0] * n
    for lineno, line in enumerate(lines[1:], start=2):
        u, v = _ints(line, lineno, "edge 'u v'")
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        if u > v:
            raise GraphFormatError(f"edge must be written with u < v, got {u} {v}", lineno)
        if v >= n:
            raise GraphFormatError(f"vertex {v} out of range for n={n}", lineno)
        if rows[u] >> v & 1:
            raise GraphFormatError(f"duplicate edge {u} {v}", lineno)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def read_graph(path) -> Graph:
    with open(path, "r", encoding="ascii", newline="") as fh:
        return parse_graph(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(serialize_graph(g))
