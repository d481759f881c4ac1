"""Fusing k-hypergraphs, 3-sunflower cores, and small graph predicates."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import AssociationScheme, DEFAULT_TOL, Tolerance
from .errors import LimitExceeded, NotAFusion, WrongUniformity
from .fusion import PARTITION_LIMIT, enumerate_fusing_tuples, enumerate_partitions, fuse_direct

__all__ = [
    "UniformHypergraph",
    "SunflowerCore",
    "build_fusing_hypergraph",
    "sunflower_cores",
    "graph_shape",
    "GraphShape",
    "to_dot",
    "to_edge_list",
]


@dataclass(frozen=True)
class UniformHypergraph:
    """k-uniform hypergraph on class or idempotent indices 1..d."""

    k: int
    vertices: tuple[int, ...]
    edges: frozenset
    side: str = "relations"  # or "idempotents"

    def __post_init__(self):
        for e in self.edges:
            if len(e) != self.k or not set(e) <= set(self.vertices):
                raise ValueError(f"edge {e} is not a {self.k}-subset of the vertex set")

    def sorted_edges(self) -> list[tuple[int, ...]]:
        return sorted(self.edges)

    def is_complete(self) -> bool:
        from math import comb
        return len(self.edges) == comb(len(self.vertices), self.k)


@dataclass(frozen=True)
class SunflowerCore:
    core: tuple[int, ...]


def build_fusing_hypergraph(scheme: AssociationScheme, k: int,
                            side: str = "relations",
                            tol: Tolerance = DEFAULT_TOL, seed: int = 0,
                            limit: int = PARTITION_LIMIT) -> UniformHypergraph:
    """Edges are the fusing k-tuples.

    On the relation side a tuple fuses if merging exactly it yields a
    fusion scheme.  On the idempotent side a tuple is an edge if some
    fusion scheme's dual partition merges exactly that tuple and keeps the
    other idempotents singleton; this exhausts every class partition, so d
    must be within the enumeration limit.
    """
    if k not in (2, 3):
        raise WrongUniformity(f"k must be 2 or 3, got {k}")
    vertices = tuple(range(1, scheme.d + 1))
    if side == "relations":
        edges = frozenset(enumerate_fusing_tuples(scheme, k, tol=tol, seed=seed))
        return UniformHypergraph(k=k, vertices=vertices, edges=edges, side=side)
    if side != "idempotents":
        raise ValueError(f"unknown side {side!r}")
    if scheme.d > limit:
        raise LimitExceeded(
            f"idempotent-side construction needs exhaustive enumeration, d={scheme.d} > {limit}")
    edges = set()
    for pi in enumerate_partitions(scheme.d, limit=limit):
        try:
            outcome = fuse_direct(scheme, pi, tol=tol, seed=seed)
        except NotAFusion:
            continue
        big = [b for b in outcome.rho.blocks if len(b) >= 2]
        if len(big) == 1 and len(big[0]) == k:
            edges.add(tuple(big[0]))
    return UniformHypergraph(k=k, vertices=vertices, edges=frozenset(edges), side=side)


def sunflower_cores(H: UniformHypergraph) -> list[SunflowerCore]:
    """All 2-sets C such that C + {w} is an edge for every other vertex w.

    Each such C is the core of a 3-sunflower subhypergraph whose edge union
    is the whole vertex set; distinct cores count as different sunflowers.
    """
    if H.k != 3:
        raise WrongUniformity(f"sunflower cores need k=3, got k={H.k}")
    cores = []
    for C in itertools.combinations(H.vertices, 2):
        petals = [w for w in H.vertices if w not in C]
        if petals and all(tuple(sorted(C + (w,))) in H.edges for w in petals):
            cores.append(SunflowerCore(core=C))
    return cores


@dataclass(frozen=True)
class GraphShape:
    connected: bool
    is_path: bool


def graph_shape(H: UniformHypergraph) -> GraphShape:
    """Connectivity, and whether the graph is a simple path spanning all
    vertices (a spanning tree with maximum degree 2)."""
    if H.k != 2:
        raise WrongUniformity(f"graph shape needs k=2, got k={H.k}")
    n = len(H.vertices)
    adj = {u: set() for u in H.vertices}
    for a, b in H.edges:
        adj[a].add(b)
        adj[b].add(a)
    if n == 0:
        return GraphShape(connected=True, is_path=True)
    seen = {H.vertices[0]}
    stack = [H.vertices[0]]
    while stack:
        u = stack.pop()
        for w in adj[u] - seen:
            seen.add(w)
            stack.append(w)
    connected = len(seen) == n
    is_path = (connected and len(H.edges) == n - 1
               and all(len(adj[u]) <= 2 for u in H.vertices))
    return GraphShape(connected=connected, is_path=is_path)


def to_dot(H: UniformHypergraph) -> str:
    """DOT text for a k=2 hypergraph, deterministic vertex/edge order."""
    if H.k != 2:
        raise WrongUniformity("DOT export is for k=2 graphs")
    lines = ["graph fusing {"]
    for u in H.vertices:
        lines.append(f"  {u};")
    for a, b in H.sorted_edges():
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_edge_list(H: UniformHypergraph) -> str:
    """One sorted tuple per line, e.g. "1 2 3"."""
    return "".join(" ".join(str(i) for i in e) + "\n" for e in H.sorted_edges())
