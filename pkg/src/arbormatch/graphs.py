"""Exact graph representation and offline matching/characterization oracles.

Vertices are dense integers in [0, n) and edges are unordered pairs stored as
(u, v) with u < v. Everything in this module is deterministic; the matching
oracles are meant for desk-scale instances and are cross-validated against
each other in the test suite.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Iterable

from .errors import (
    DuplicateEdge,
    GraphError,
    ParseError,
    SelfLoop,
    TooLarge,
    VertexOutOfRange,
)

if TYPE_CHECKING:
    from .streams import EdgeStream

Edge = tuple[int, int]

# Hard cap for the exhaustive matching oracle (2^m subsets, implicitly).
BRUTE_FORCE_EDGE_CAP = 24


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph.

    ``edges`` keeps construction order (generators rely on it for the
    as-generated stream ordering); ``c_declared`` is an optional arboricity
    bound recorded by generators. Instances are immutable and safe to share.
    """

    n: int
    edges: tuple[Edge, ...]
    c_declared: int | None = None

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    def adjacency(self) -> list[list[int]]:
        """Adjacency lists, neighbor order following edge construction order."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj


def build_graph(n: int, edge_list: Iterable[Edge], c_declared: int | None = None) -> Graph:
    """Validate an edge list and return a normalized Graph.

    Rejects self-loops, duplicate edges (in either orientation) and endpoints
    outside [0, n). When ``c_declared`` is given, the degeneracy of the result
    must not exceed twice the bound.
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    seen: set[Edge] = set()
    edges: list[Edge] = []
    for u, v in edge_list:
        if u == v:
            raise SelfLoop(f"self-loop ({u}, {v})")
        if not (0 <= u < n) or not (0 <= v < n):
            raise VertexOutOfRange(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise DuplicateEdge(f"duplicate edge ({u}, {v})")
        seen.add(e)
        edges.append(e)
    g = Graph(n=n, edges=tuple(edges), c_declared=c_declared)
    if c_declared is not None:
        if c_declared < 1:
            raise GraphError(f"c_declared must be a positive integer, got {c_declared}")
        d = degeneracy(g)
        if d > 2 * c_declared:
            raise GraphError(
                f"degeneracy {d} exceeds 2*c_declared = {2 * c_declared}; "
                "the declared arboricity bound cannot hold"
            )
    return g


def serialize_graph(g: Graph) -> str:
    """Text form: ``n <count>`` header, then one ``u v`` pair per line."""
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str, c_declared: int | None = None) -> Graph:
    """Inverse of serialize_graph; raises ParseError with the offending line."""
    n: int | None = None
    pairs: list[Edge] = []
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ParseError(line_no, "expected 'n <count>' header")
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError(line_no, "vertex count is not an integer") from None
            continue
        if len(parts) != 2:
            raise ParseError(line_no, "expected 'u v'")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseError(line_no, "endpoints are not integers") from None
    if n is None:
        raise ParseError(1, "missing 'n <count>' header")
    return build_graph(n, pairs, c_declared=c_declared)


# ---------------------------------------------------------------------------
# Matching oracles
# ---------------------------------------------------------------------------


def maximum_matching_size(g: Graph) -> int:
    """Exact maximum matching size via augmenting paths with blossom contraction.

    Deterministic. A greedy matching seeds the search so most vertices never
    trigger an augmentation round. Desk-scale only (the per-root search is
    linear in the graph size); large forests should use forest_matching_size.
    """
    n = g.n
    if n == 0 or not g.edges:
        return 0
    adj = g.adjacency()
    match = [-1] * n
    for u in range(n):
        if match[u] < 0:
            for v in adj[u]:
                if match[v] < 0:
                    match[u] = v
                    match[v] = u
                    break

    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    blossom = [False] * n
    fresh_parent = [-1] * n
    fresh_base = list(range(n))
    fresh_used = [False] * n

    def mark_path(v: int, b: int, child: int) -> None:
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def lowest_common_base(a: int, b: int) -> int:
        marked = set()
        v = a
        while True:
            v = base[v]
            marked.add(v)
            if match[v] < 0:
                break
            v = parent[match[v]]
        v = b
        while base[v] not in marked:
            v = parent[match[v]]
        return base[v]

    def find_augmenting_path(root: int) -> bool:
        parent[:] = fresh_parent
        base[:] = fresh_base
        used[:] = fresh_used
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] >= 0 and parent[match[to]] >= 0):
                    # odd cycle: contract the blossom around its base
                    cur = lowest_common_base(v, to)
                    for i in range(n):
                        blossom[i] = False
                    mark_path(v, cur, to)
                    mark_path(to, cur, v)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] < 0:
                    parent[to] = v
                    if match[to] < 0:
                        # flip matched/unmatched edges back to the root
                        w = to
                        while w >= 0:
                            pv = parent[w]
                            nxt = match[pv]
                            match[w] = pv
                            match[pv] = w
                            w = nxt
                        return True
                    used[match[to]] = True
                    queue.append(match[to])
        return False

    size = sum(1 for v in range(n) if match[v] >= 0) // 2
    for root in range(n):
        if match[root] < 0 and find_augmenting_path(root):
            size += 1
    return size


def brute_force_matching_size(g: Graph) -> int:
    """Exhaustive maximum matching size by branching over every edge subset.

    Independent of the augmenting-path implementation; each edge is either
    included (when disjoint from the picks so far) or skipped. Capped at
    BRUTE_FORCE_EDGE_CAP edges.
    """
    if g.m > BRUTE_FORCE_EDGE_CAP:
        raise TooLarge(
            f"{g.m} edges exceeds the exhaustive cap of {BRUTE_FORCE_EDGE_CAP}"
        )
    edges = g.edges
    m = len(edges)
    best = 0

    def branch(i: int, used_mask: int, size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        if i == m or size + (m - i) <= best:
            return
        u, v = edges[i]
        bit = (1 << u) | (1 << v)
        if not used_mask & bit:
            branch(i + 1, used_mask | bit, size + 1)
        branch(i + 1, used_mask, size)

    branch(0, 0, 0)
    return best


def forest_matching_size(g: Graph) -> int:
    """Exact maximum matching size of a forest by repeated leaf matching.

    Matching any leaf with its neighbor is always optimal on forests, which
    makes this a linear-time second oracle for tree-shaped corpora. Raises
    GraphError if the graph contains a cycle.
    """
    n = g.n
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    alive = [True] * n
    leaves = deque(v for v in range(n) if len(adj[v]) == 1)
    size = 0
    removed_edges = 0

    def drop(x: int) -> None:
        nonlocal removed_edges
        alive[x] = False
        nbrs = adj[x]
        adj[x] = set()
        removed_edges += len(nbrs)
        for w in nbrs:
            adj[w].discard(x)
            if alive[w] and len(adj[w]) == 1:
                leaves.append(w)

    while leaves:
        v = leaves.popleft()
        if not alive[v] or len(adj[v]) != 1:
            continue
        u = next(iter(adj[v]))
        size += 1
        drop(v)
        drop(u)
    if removed_edges != g.m:
        raise GraphError("graph contains a cycle; forest_matching_size needs a forest")
    return size


# ---------------------------------------------------------------------------
# Degree-structure oracles
# ---------------------------------------------------------------------------


def degeneracy(g: Graph) -> int:
    """Smallest k such that repeatedly removing a vertex of degree <= k empties g.

    Upper-bounds the arboricity within a factor of two, which makes it a
    checkable proxy for the declared bound carried by generated graphs.
    """
    n = g.n
    if n == 0 or not g.edges:
        return 0
    adj = g.adjacency()
    deg = list(g.degrees)
    heap: list[tuple[int, int]] = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    removed = [False] * n
    best = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        if d > best:
            best = d
        for w in adj[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return best


@dataclass(frozen=True)
class CharacterizationReport:
    """Exact offline quantities tying matching size to the degree structure.

    ``h_mu`` counts vertices of degree > mu; the low-degree subgraph G_L is
    induced on the others, with ``s_mu`` edges, maximum matching ``m_mu`` and
    ``n_l`` non-isolated vertices. ``e_alpha`` is filled separately because it
    depends on a stream ordering, not just the graph.
    """

    mu: int
    m_star: int
    h_mu: int
    s_mu: int
    m_mu: int
    n_l: int
    alpha: float | None = None
    e_alpha: int | None = None


def characterize(g: Graph, mu: int) -> CharacterizationReport:
    """Exact degree-threshold characterization of g at threshold mu >= 1."""
    if mu < 1:
        raise GraphError(f"mu must be >= 1, got {mu}")
    deg = g.degrees
    h_mu = sum(1 for v in range(g.n) if deg[v] > mu)
    low_edges = tuple(e for e in g.edges if deg[e[0]] <= mu and deg[e[1]] <= mu)
    non_isolated: set[int] = set()
    for u, v in low_edges:
        non_isolated.add(u)
        non_isolated.add(v)
    low_graph = Graph(n=g.n, edges=low_edges)
    return CharacterizationReport(
        mu=mu,
        m_star=maximum_matching_size(g),
        h_mu=h_mu,
        s_mu=len(low_edges),
        m_mu=maximum_matching_size(low_graph),
        n_l=len(non_isolated),
    )


# ---------------------------------------------------------------------------
# Stream-order oracles (insert-only streams)
# ---------------------------------------------------------------------------


def later_degree_profile(stream: "EdgeStream") -> list[int]:
    """Per stream position, the larger endpoint count of strictly later incident edges.

    Entry i-1 (0-based) belongs to the 1-indexed position i. A single backward
    pass keeps running incidence counts, so the profile costs O(m).
    """
    edges = stream.insert_edges()
    later: dict[int, int] = {}
    out = [0] * len(edges)
    for i in range(len(edges) - 1, -1, -1):
        u, v = edges[i]
        out[i] = max(later.get(u, 0), later.get(v, 0))
        later[u] = later.get(u, 0) + 1
        later[v] = later.get(v, 0) + 1
    return out


def offline_alpha_good_set(stream: "EdgeStream", alpha: float) -> set[int]:
    """1-indexed positions whose edge sees at most alpha later incident edges
    on each endpoint. Raises HasDeletions on streams with delete events."""
    profile = later_degree_profile(stream)
    return {i + 1 for i, worst in enumerate(profile) if worst <= alpha}


def greedy_maximal_matching(stream: "EdgeStream") -> int:
    """Size of the maximal matching built by admitting each edge whose
    endpoints are both still unmatched, in stream order."""
    taken: set[int] = set()
    size = 0
    for u, v in stream.insert_edges():
        if u not in taken and v not in taken:
            taken.add(u)
            taken.add(v)
            size += 1
    return size
