"""Simple undirected graphs, commuting-family generators and the H-product.

Vertices are 0-based everywhere. In an H-product the vertex ``i`` of factor
``j`` gets the global index ``j * n + i`` (block-major), so the block
structure of the product's matrices is literal in memory.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    CycleTooSmall,
    FactorCountMismatch,
    InvalidEdge,
    InvalidElement,
    InvalidInput,
    InvalidStep,
    NotAPartition,
    OrderMismatch,
    ParseError,
)


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices ``0..order-1``; edges stored as sorted ``(u, v)`` with ``u < v``."""

    order: int
    edges: frozenset

    def __post_init__(self):
        if self.order < 1:
            raise InvalidInput(f"graph order must be positive, got {self.order}")
        for u, v in self.edges:
            if not (0 <= u < v < self.order):
                raise InvalidEdge(f"bad edge ({u}, {v}) for order {self.order}")

    @property
    def size(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.order, self.order))
        if self.edges:
            flat = np.fromiter((x for e in self.edges for x in e), dtype=np.intp, count=2 * len(self.edges))
            u, v = flat[0::2], flat[1::2]
            A[u, v] = 1.0
            A[v, u] = 1.0
        return A

    def degrees(self) -> np.ndarray:
        d = np.zeros(self.order, dtype=int)
        for u, v in self.edges:
            d[u] += 1
            d[v] += 1
        return d

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={self.sorted_edges()})"


def from_edge_pairs(n: int, pairs: Iterable) -> Graph:
    """Build a graph from ``(u, v)`` pairs in any orientation; duplicates and loops are rejected."""
    edges = set()
    for pair in pairs:
        u, v = (int(x) for x in pair)
        if u == v:
            raise InvalidEdge(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidEdge(f"edge ({u}, {v}) out of range for order {n}")
        e = (min(u, v), max(u, v))
        if e in edges:
            raise InvalidEdge(f"duplicate edge {e}")
        edges.add(e)
    return Graph(n, frozenset(edges))


def empty(n: int) -> Graph:
    return Graph(n, frozenset())


def complete(n: int) -> Graph:
    return Graph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))


def path(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise CycleTooSmall(f"cycle needs at least 3 vertices, got {n}")
    return from_edge_pairs(n, [(i, (i + 1) % n) for i in range(n)])


def disjoint_union(G1: Graph, G2: Graph) -> Graph:
    """``G1`` on vertices ``0..n1-1`` followed by ``G2`` shifted by ``n1``."""
    shift = G1.order
    return Graph(
        G1.order + G2.order,
        G1.edges | frozenset((u + shift, v + shift) for u, v in G2.edges),
    )


def circulant(n: int, steps: Iterable[int]) -> Graph:
    """Circulant graph: ``i ~ i +- s (mod n)`` for every step ``s``.

    For even ``n`` the step ``n/2`` adds a single edge per vertex.
    """
    steps = sorted(set(int(s) for s in steps))
    if not steps:
        raise InvalidStep("connection set is empty")
    for s in steps:
        if not 1 <= s <= n // 2:
            raise InvalidStep(f"step {s} not in 1..{n // 2}")
    edges = set()
    for i in range(n):
        for s in steps:
            j = (i + s) % n
            edges.add((min(i, j), max(i, j)))
    return Graph(n, frozenset(edges))


def _z2_element(x, k: int) -> int:
    if isinstance(x, str):
        if len(x) != k or set(x) - {"0", "1"}:
            raise InvalidElement(f"{x!r} is not a {k}-bit string")
        x = int(x, 2)
    x = int(x)
    if not 0 < x < 2**k:
        raise InvalidElement(f"{x} is not a nonzero element of Z_2^{k}")
    return x


def cayley_z2k(k: int, connection_set: Iterable) -> Graph:
    """Cayley graph of the group Z_2^k: ``x ~ x XOR s``.

    Elements may be given as integers (bit masks) or bit strings like ``"011"``.
    """
    S = sorted(set(_z2_element(x, k) for x in connection_set))
    if not S:
        raise InvalidElement("connection set is empty")
    n = 2**k
    edges = set()
    for x in range(n):
        for s in S:
            y = x ^ s
            edges.add((min(x, y), max(x, y)))
    return Graph(n, frozenset(edges))


def h_product(H: Graph, factors: Sequence[Graph]) -> Graph:
    """The H-product: factor ``j`` occupies block ``j``; each edge ``jk`` of ``H``
    adds the perfect matching ``(j, i) ~ (k, i)`` between blocks."""
    if len(factors) != H.order:
        raise FactorCountMismatch(f"H has {H.order} vertices but {len(factors)} factors were given")
    n = factors[0].order
    for j, F in enumerate(factors):
        if F.order != n:
            raise OrderMismatch(f"factor {j} has order {F.order}, expected {n}")
    edges = set()
    for j, F in enumerate(factors):
        off = j * n
        edges.update((u + off, v + off) for u, v in F.edges)
    for j, k in H.edges:
        edges.update((j * n + i, k * n + i) for i in range(n))
    return Graph(H.order * n, frozenset(edges))


def degrees(G: Graph) -> np.ndarray:
    return G.degrees()


def is_regular(G: Graph) -> Optional[int]:
    """The common degree if ``G`` is regular, else ``None``."""
    d = G.degrees()
    return int(d[0]) if np.all(d == d[0]) else None


@dataclass(frozen=True)
class UniversalParams:
    """Coefficients of ``alpha*A + beta*D + gamma*I + eta*J``."""

    alpha: float
    beta: float
    gamma: float
    eta: float

    def __add__(self, other: "UniversalParams") -> "UniversalParams":
        return UniversalParams(
            self.alpha + other.alpha,
            self.beta + other.beta,
            self.gamma + other.gamma,
            self.eta + other.eta,
        )

    def as_tuple(self) -> tuple:
        return (self.alpha, self.beta, self.gamma, self.eta)


ADJACENCY = UniversalParams(1.0, 0.0, 0.0, 0.0)
LAPLACIAN = UniversalParams(-1.0, 1.0, 0.0, 0.0)
SIGNLESS_LAPLACIAN = UniversalParams(1.0, 1.0, 0.0, 0.0)
SEIDEL = UniversalParams(-2.0, 0.0, -1.0, 1.0)


def universal_matrix(G: Graph, p: UniversalParams) -> np.ndarray:
    n = G.order
    return (
        p.alpha * G.adjacency()
        + p.beta * np.diag(G.degrees().astype(float))
        + p.gamma * np.eye(n)
        + p.eta * np.ones((n, n))
    )


def is_almost_equitable(G: Graph, partition: Sequence[Iterable[int]]) -> bool:
    """True iff, for every ordered pair of distinct cells ``(Vi, Vj)``, all
    vertices of ``Vi`` have the same number of neighbours in ``Vj``."""
    cells = [sorted(set(int(v) for v in cell)) for cell in partition]
    seen = [v for cell in cells for v in cell]
    if sorted(seen) != list(range(G.order)) or any(not c for c in cells):
        raise NotAPartition("cells must be non-empty and cover every vertex exactly once")
    A = G.adjacency()
    for i, Vi in enumerate(cells):
        for j, Vj in enumerate(cells):
            if i == j:
                continue
            counts = A[np.ix_(Vi, Vj)].sum(axis=1)
            if np.any(counts != counts[0]):
                return False
    return True


def block_partition(l: int, n: int) -> list:
    """The partition of an H-product's vertices into its ``l`` factor blocks."""
    return [list(range(j * n, (j + 1) * n)) for j in range(l)]


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Erdos-Renyi G(n, p)."""
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    return Graph(n, frozenset(zip(iu[keep].tolist(), ju[keep].tolist())))


def random_circulant_family(n: int, l: int, rng: np.random.Generator) -> list:
    """``l`` circulants of order ``n`` with random non-empty connection sets."""
    pool = np.arange(1, n // 2 + 1)
    family = []
    for _ in range(l):
        size = int(rng.integers(1, len(pool) + 1))
        family.append(circulant(n, rng.choice(pool, size=size, replace=False).tolist()))
    return family


def random_cayley_family(k: int, l: int, rng: np.random.Generator) -> list:
    """``l`` Cayley graphs of Z_2^k with random non-empty connection sets."""
    pool = np.arange(1, 2**k)
    family = []
    for _ in range(l):
        size = int(rng.integers(1, len(pool) + 1))
        family.append(cayley_z2k(k, rng.choice(pool, size=size, replace=False).tolist()))
    return family


# -- edge-list text format ---------------------------------------------------


def parse_edge_list(text: str, path=None) -> Graph:
    """Parse the edge-list format.

    First non-comment line is the order ``n``; each further line is ``u v``
    with ``0 <= u < v < n``. ``#`` starts a comment, blank lines are skipped.
    """
    n = None
    edges = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise ParseError(f"expected integers, got {line!r}", path, lineno) from None
        if n is None:
            if len(values) != 1 or values[0] < 1:
                raise ParseError(f"expected a positive vertex count, got {line!r}", path, lineno)
            n = values[0]
            continue
        if len(values) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", path, lineno)
        u, v = values
        if not 0 <= u < v < n:
            raise ParseError(f"edge {u} {v} violates 0 <= u < v < {n}", path, lineno)
        if (u, v) in edges:
            raise ParseError(f"duplicate edge {u} {v}", path, lineno)
        edges.add((u, v))
    if n is None:
        raise ParseError("missing vertex count", path)
    return Graph(n, frozenset(edges))


def format_edge_list(G: Graph) -> str:
    lines = [str(G.order)] + [f"{u} {v}" for u, v in G.sorted_edges()]
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Graph:
    path = Path(path)
    try:
        text = path.read_text(encoding="ascii")
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read file: {exc}", path) from None
    return parse_edge_list(text, path)


def write_edge_list(G: Graph, path) -> None:
    Path(path).write_text(format_edge_list(G), encoding="ascii", newline="\n")
