"""Edge-stream events, bounded-arboricity generators, orderings and the
stream text format.

All generators are deterministic functions of their parameters and seed.
Stream files are line-oriented: ``n <count>`` first, then ``+ u v`` or
``- u v`` with u < v; lines starting with ``#`` are comments.
"""

from __future__ import annotations

import heapq
import random
import re
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .errors import (
    BudgetExceeded,
    GraphError,
    HasDeletions,
    ParseError,
    StreamInvariantError,
)
from .graphs import Edge, Graph, build_graph, degeneracy

INSERT = "+"
DELETE = "-"


class StreamEvent(NamedTuple):
    kind: str
    u: int
    v: int


def _normalized(u: int, v: int) -> Edge:
    if u == v:
        raise StreamInvariantError(f"self-loop event ({u}, {v})")
    return (u, v) if u < v else (v, u)


def insert_event(u: int, v: int) -> StreamEvent:
    return StreamEvent(INSERT, *_normalized(u, v))


def delete_event(u: int, v: int) -> StreamEvent:
    return StreamEvent(DELETE, *_normalized(u, v))


@dataclass(frozen=True)
class EdgeStream:
    """Ordered sequence of insert/delete events over vertices [0, n)."""

    n: int
    events: tuple[StreamEvent, ...]
    c_declared: int | None = None

    def has_deletions(self) -> bool:
        return any(ev.kind == DELETE for ev in self.events)

    def insert_edges(self) -> list[Edge]:
        """Edges of an insert-only stream in order; raises HasDeletions otherwise."""
        edges: list[Edge] = []
        for ev in self.events:
            if ev.kind == DELETE:
                raise HasDeletions("stream contains delete events")
            edges.append((ev.u, ev.v))
        return edges

    def live_edges(self) -> set[Edge]:
        """Edge set left after replaying every event."""
        live: set[Edge] = set()
        for ev in self.events:
            e = (ev.u, ev.v)
            if ev.kind == INSERT:
                live.add(e)
            else:
                live.discard(e)
        return live

    def validate(self) -> None:
        """Check endpoint ranges and liveness rules; raises StreamInvariantError."""
        live: set[Edge] = set()
        for idx, ev in enumerate(self.events, 1):
            if not (0 <= ev.u < ev.v < self.n):
                raise StreamInvariantError(
                    f"event {idx}: endpoints ({ev.u}, {ev.v}) invalid for n={self.n}"
                )
            e = (ev.u, ev.v)
            if ev.kind == INSERT:
                if e in live:
                    raise StreamInvariantError(f"event {idx}: insert of live edge {e}")
                live.add(e)
            elif ev.kind == DELETE:
                if e not in live:
                    raise StreamInvariantError(f"event {idx}: delete of non-live edge {e}")
                live.remove(e)
            else:
                raise StreamInvariantError(f"event {idx}: unknown kind {ev.kind!r}")


class OrderingPolicy(str, Enum):
    """Deterministic permutation procedures for streaming a graph's edges."""

    AS_GENERATED = "as-generated"
    UNIFORM_RANDOM = "uniform-random"
    STAR_BY_STAR = "star-by-star"
    LEAVES_LAST = "leaves-last"
    CENTERS_FIRST = "centers-first"


def order_stream(g: Graph, policy: OrderingPolicy | str, seed: int = 0) -> EdgeStream:
    """Insert-only stream of each edge of g exactly once, permuted per policy.

    Only UNIFORM_RANDOM consumes the seed; the other policies are
    degree-keyed deterministic sorts:

    * STAR_BY_STAR groups edges under their hub (the higher-degree endpoint,
      ties to the smaller id) so one hub's edges finish before the next start.
    * CENTERS_FIRST emits edges on the highest-degree endpoints first.
    * LEAVES_LAST pushes pendant-ish edges (small minimum endpoint degree)
      to the end of the stream.
    """
    policy = OrderingPolicy(policy)
    edges = list(g.edges)
    if policy is OrderingPolicy.UNIFORM_RANDOM:
        random.Random(seed).shuffle(edges)
    elif policy is not OrderingPolicy.AS_GENERATED:
        deg = g.degrees
        if policy is OrderingPolicy.STAR_BY_STAR:

            def hub_key(e: Edge) -> tuple[int, int]:
                u, v = e
                if deg[u] != deg[v]:
                    hub = u if deg[u] > deg[v] else v
                else:
                    hub = u  # u < v: ties go to the smaller id
                return (hub, v if hub == u else u)

            edges.sort(key=hub_key)
        elif policy is OrderingPolicy.CENTERS_FIRST:
            edges.sort(key=lambda e: (-max(deg[e[0]], deg[e[1]]), -min(deg[e[0]], deg[e[1]]), e))
        else:  # LEAVES_LAST
            edges.sort(key=lambda e: (-min(deg[e[0]], deg[e[1]]), -max(deg[e[0]], deg[e[1]]), e))
    return EdgeStream(
        n=g.n,
        events=tuple(StreamEvent(INSERT, u, v) for u, v in edges),
        c_declared=g.c_declared,
    )


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


class _UnionFind:
    __slots__ = ("parent", "rank")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def generate_union_of_forests(n: int, c: int, seed: int) -> Graph:
    """Union of c random spanning forests of the complete graph on n vertices.

    Each forest accepts uniformly random non-cycle pairs until it spans, which
    matches the acceptance distribution of scanning a shuffled list of all
    pairs without materializing the O(n^2) pair list. Edges duplicated across
    forests are skipped, so the arboricity is at most c by construction.
    """
    if n < 2:
        raise GraphError(f"n must be >= 2, got {n}")
    if c < 1:
        raise GraphError(f"c must be >= 1, got {c}")
    rng = random.Random(seed)
    seen: set[Edge] = set()
    edges: list[Edge] = []
    for _ in range(c):
        uf = _UnionFind(n)
        accepted = 0
        while accepted < n - 1:
            u = rng.randrange(n)
            v = rng.randrange(n - 1)
            if v >= u:
                v += 1
            if uf.union(u, v):
                accepted += 1
                e = (u, v) if u < v else (v, u)
                if e not in seen:
                    seen.add(e)
                    edges.append(e)
    return build_graph(n, edges, c_declared=c)


def generate_star_forest(k: int, s: int) -> Graph:
    """k disjoint stars with s leaves each.

    Star j occupies ids j*(s+1)..j*(s+1)+s with the center first, so
    n = k*(s+1), m = k*s and the maximum matching picks one edge per star.
    """
    if k < 1:
        raise GraphError(f"star count must be >= 1, got {k}")
    if s < 1:
        raise GraphError(f"star size must be >= 1, got {s}")
    edges: list[Edge] = []
    for j in range(k):
        center = j * (s + 1)
        edges.extend((center, center + i) for i in range(1, s + 1))
    return build_graph(k * (s + 1), edges, c_declared=1)


def pruefer_to_edges(seq: list[int]) -> list[Edge]:
    """Decode a Pruefer sequence over labels [0, len(seq)+2) into tree edges."""
    n = len(seq) + 2
    deg = [1] * n
    for x in seq:
        if not 0 <= x < n:
            raise GraphError(f"sequence value {x} outside [0, {n})")
        deg[x] += 1
    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    edges: list[Edge] = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x) if leaf < x else (x, leaf))
        deg[x] -= 1
        if deg[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v) if u < v else (v, u))
    return edges


def generate_random_tree(n: int, seed: int) -> Graph:
    """Uniform random labeled tree on n >= 2 vertices (decoded Pruefer sequence)."""
    if n < 2:
        raise GraphError(f"n must be >= 2, got {n}")
    if n == 2:
        return build_graph(2, [(0, 1)], c_declared=1)
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return build_graph(n, pruefer_to_edges(seq), c_declared=1)


def _edges_degeneracy(n: int, edges) -> int:
    return degeneracy(Graph(n=n, edges=tuple(edges)))


def generate_dynamic_stream(g: Graph, delete_fraction: float, seed: int) -> EdgeStream:
    """Insert/delete stream whose final live graph is exactly g.

    The real edges arrive in a random order, interleaved with decoy edges that
    are inserted and later deleted. A decoy share of ``delete_fraction`` of m
    is targeted, so the total length is at most (1 + 2*delete_fraction)*m.
    Decoys are rejection-sampled so every prefix keeps degeneracy within twice
    the arboricity bound; a real insert flushes live decoys first if they
    would push the prefix over that cap.
    """
    if not 0.0 <= delete_fraction <= 1.0:
        raise GraphError(f"delete_fraction must be in [0, 1], got {delete_fraction}")
    eff_c = g.c_declared if g.c_declared is not None else max(1, degeneracy(g))
    cap = 2 * eff_c
    if degeneracy(g) > cap:
        raise GraphError("graph degeneracy already exceeds twice the arboricity bound")
    m = g.m
    budget = 4 * eff_c * g.n
    target_decoys = int(delete_fraction * m)
    if m + 2 * target_decoys > budget:
        raise BudgetExceeded(
            f"stream of {m + 2 * target_decoys} events exceeds the budget {budget}"
        )
    rng = random.Random(seed)
    real = list(g.edges)
    rng.shuffle(real)
    real_idx = 0
    pending = target_decoys
    live: set[Edge] = set()
    live_decoys: deque[Edge] = deque()
    forbidden = set(g.edges)
    events: list[StreamEvent] = []

    def fits(e: Edge) -> bool:
        return _edges_degeneracy(g.n, list(live) + [e]) <= cap

    while real_idx < len(real) or pending > 0 or live_decoys:
        actions = []
        if real_idx < len(real):
            actions.append("real")
        if pending > 0:
            actions.append("decoy-in")
        if live_decoys:
            actions.append("decoy-out")
        act = actions[0] if len(actions) == 1 else rng.choice(actions)
        if act == "real":
            e = real[real_idx]
            real_idx += 1
            while live_decoys and not fits(e):
                d = live_decoys.popleft()
                live.remove(d)
                events.append(StreamEvent(DELETE, *d))
            live.add(e)
            events.append(StreamEvent(INSERT, *e))
        elif act == "decoy-in":
            pending -= 1
            for _ in range(50):
                u = rng.randrange(g.n)
                v = rng.randrange(g.n - 1)
                if v >= u:
                    v += 1
                e = (u, v) if u < v else (v, u)
                if e in live or e in forbidden or not fits(e):
                    continue
                live.add(e)
                live_decoys.append(e)
                events.append(StreamEvent(INSERT, *e))
                break
        else:
            d = live_decoys.popleft()
            live.remove(d)
            events.append(StreamEvent(DELETE, *d))
    return EdgeStream(n=g.n, events=tuple(events), c_declared=g.c_declared)


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

_ARBORICITY_COMMENT = re.compile(r"#\s*arboricity\s+(\d+)$")


def serialize_stream(s: EdgeStream) -> str:
    """Bit-exact text form; a declared arboricity bound rides in a comment."""
    lines = [f"n {s.n}"]
    if s.c_declared is not None:
        lines.append(f"# arboricity {s.c_declared}")
    lines.extend(f"{ev.kind} {ev.u} {ev.v}" for ev in s.events)
    return "\n".join(lines) + "\n"


def parse_stream(text: str) -> EdgeStream:
    """Inverse of serialize_stream.

    Raises ParseError (with the line number) on malformed lines and on
    liveness violations such as deleting an edge that was never inserted.
    """
    n: int | None = None
    c: int | None = None
    events: list[StreamEvent] = []
    live: set[Edge] = set()
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            found = _ARBORICITY_COMMENT.match(line)
            if found:
                c = int(found.group(1))
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ParseError(line_no, "expected 'n <count>' header")
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError(line_no, "vertex count is not an integer") from None
            if n < 0:
                raise ParseError(line_no, "vertex count must be non-negative")
            continue
        if len(parts) != 3 or parts[0] not in (INSERT, DELETE):
            raise ParseError(line_no, "expected '+ u v' or '- u v'")
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(line_no, "endpoints are not integers") from None
        if not 0 <= u < v < n:
            raise ParseError(line_no, f"endpoints ({u}, {v}) must satisfy 0 <= u < v < n")
        e = (u, v)
        if parts[0] == INSERT:
            if e in live:
                raise ParseError(line_no, f"insert of already-live edge {e}")
            live.add(e)
        else:
            if e not in live:
                raise ParseError(line_no, f"delete of edge {e} that is not live")
            live.remove(e)
        events.append(StreamEvent(parts[0], u, v))
    if n is None:
        raise ParseError(1, "missing 'n <count>' header")
    return EdgeStream(n=n, events=tuple(events), c_declared=c)
