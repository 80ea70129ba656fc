"""Two-terminal graphs, the named extremal families, and structural predicates.

Vertices are ``0..n-1``; the terminals are stored as ``s = 0`` and ``t = 1``.
Edge ``i`` keeps index ``i`` for the lifetime of a graph value, so edge
subsets can be passed around as plain integer bitmasks.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ConstructionInfeasible, ParameterOutOfRange, PreconditionError

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """Plain undirected simple graph (used for hat graphs)."""

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        edges = tuple(_norm(int(u), int(v)) for u, v in self.edges)
        seen = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} out of range for n={self.n}")
            if (u, v) in seen:
                raise ValueError(f"parallel edge {(u, v)}")
            seen.add((u, v))
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for u, v in self.edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return tuple(rows)

    def neighbors(self, v: int) -> list[int]:
        row = self.adjacency[v]
        return [w for w in range(self.n) if row >> w & 1]

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)


@dataclass(frozen=True)
class TwoTerminalGraph(SimpleGraph):
    """Simple graph with terminals ``s`` and ``t`` and stable edge indices."""

    s: int = 0
    t: int = 1

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("a two-terminal graph needs n >= 2")
        if self.s == self.t:
            raise ValueError("terminals must be distinct")
        if not (0 <= self.s < self.n and 0 <= self.t < self.n):
            raise ValueError("terminal out of range")
        super().__post_init__()

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "TwoTerminalGraph":
        return cls(n, tuple((int(u), int(v)) for u, v in edges))

    @cached_property
    def index_of(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def edge_index(self, u: int, v: int) -> int:
        return self.index_of[_norm(u, v)]

    def mask_of(self, pairs: Iterable[Sequence[int]]) -> int:
        """Edge-subset bitmask for the given vertex pairs."""
        mask = 0
        for u, v in pairs:
            mask |= 1 << self.edge_index(u, v)
        return mask

    @property
    def full_mask(self) -> int:
        return (1 << self.m) - 1

    # -- edits; all return new graphs -------------------------------------

    def replace_edge(self, index: int, new: Sequence[int]) -> "TwoTerminalGraph":
        """``G - e + f`` with ``f`` taking over the index of ``e``."""
        edges = list(self.edges)
        edges[index] = _norm(*new)
        return TwoTerminalGraph(self.n, tuple(edges), self.s, self.t)

    def without_edge(self, index: int) -> "TwoTerminalGraph":
        edges = self.edges[:index] + self.edges[index + 1:]
        return TwoTerminalGraph(self.n, edges, self.s, self.t)

    def with_edge(self, u: int, v: int) -> "TwoTerminalGraph":
        return TwoTerminalGraph(self.n, self.edges + (_norm(u, v),), self.s, self.t)

    def sorted(self) -> "TwoTerminalGraph":
        return TwoTerminalGraph(self.n, tuple(sorted(self.edges)), self.s, self.t)

    def same_graph(self, other: "TwoTerminalGraph") -> bool:
        """Equality as labeled graphs, ignoring edge order."""
        return (self.n, self.s, self.t, set(self.edges)) == (
            other.n, other.s, other.t, set(other.edges))

    def hat(self) -> SimpleGraph:
        """``G - s - t`` with the remaining vertices relabeled in increasing order."""
        keep = [v for v in range(self.n) if v not in (self.s, self.t)]
        relabel = {v: i for i, v in enumerate(keep)}
        edges = tuple((relabel[u], relabel[v]) for u, v in self.edges
                      if u in relabel and v in relabel)
        return SimpleGraph(len(keep), edges)


# -- named constructions -------------------------------------------------------

def construct_A(n: int, r: int) -> TwoTerminalGraph:
    """Terminals adjacent, ``n-2`` common neighbours, and a fan of ``r`` chords at v3."""
    if n < 3 or not 0 <= r <= n - 3:
        raise ParameterOutOfRange(f"A_(n,r) needs n >= 3 and 0 <= r <= n-3, got n={n}, r={r}")
    # v_i is stored as vertex i-1, so v3 -> 2
    edges: list[Edge] = [(0, 1)]
    for i in range(2, n):
        edges.append((0, i))
        edges.append((1, i))
    for j in range(1, r + 1):
        edges.append((2, 2 + j))
    return TwoTerminalGraph(n, tuple(edges))


def pad_isolated(G: TwoTerminalGraph, n: int) -> TwoTerminalGraph:
    if n < G.n:
        raise ValueError("cannot pad to fewer vertices")
    return TwoTerminalGraph(n, G.edges, G.s, G.t)


def construct_H(n: int, m: int) -> TwoTerminalGraph:
    if n < 5 or not 5 <= m <= 2 * n - 3:
        raise ParameterOutOfRange(f"H_(n,m) needs n >= 5 and 5 <= m <= 2n-3, got n={n}, m={m}")
    if m % 2 == 0:
        core = construct_A((m + 2) // 2, 1)
    else:
        core = construct_A((m + 3) // 2, 0)
    return pad_isolated(core, n)


def literal_counterexample_order(n: int) -> int:
    return math.ceil(n / 3) + 2


def construct_G_counterexample(n: int, m: int, n_prime: int | None = None) -> TwoTerminalGraph:
    """``A_(n', m-2n'+3)`` padded with isolated vertices up to ``n``.

    ``n_prime`` defaults to ``ceil(m/3) + 2``; pass
    ``literal_counterexample_order(n)`` to probe the ``ceil(n/3) + 2`` variant.
    """
    if n < 11 or not 20 <= m <= 3 * n - 9:
        raise ParameterOutOfRange(f"G_(n,m) needs n >= 11 and 20 <= m <= 3n-9, got n={n}, m={m}")
    if n_prime is None:
        n_prime = -(-m // 3) + 2
    r_prime = m - 2 * n_prime + 3
    if n_prime < 3 or n_prime > n or not 0 <= r_prime <= n_prime - 3:
        raise ConstructionInfeasible(
            f"n'={n_prime} gives r'={r_prime}, outside [0, {n_prime - 3}] (or n' > n={n})")
    return pad_isolated(construct_A(n_prime, r_prime), n)


def complete_ttg(n: int) -> TwoTerminalGraph:
    return TwoTerminalGraph(n, tuple(combinations(range(n), 2)))


# -- predicates ----------------------------------------------------------------

def closed_neighborhood(G: SimpleGraph, v: int) -> int:
    return G.adjacency[v] | (1 << v)


def terminals_true_twins(G: TwoTerminalGraph) -> bool:
    return closed_neighborhood(G, G.s) == closed_neighborhood(G, G.t)


def terminals_universal(G: TwoTerminalGraph) -> bool:
    everyone = (1 << G.n) - 1
    return (closed_neighborhood(G, G.s) == everyone
            and closed_neighborhood(G, G.t) == everyone)


def is_almost_regular(H: SimpleGraph) -> bool:
    degs = H.degrees
    return not degs or max(degs) - min(degs) <= 1


def component_of(G: SimpleGraph, v: int) -> int:
    """Vertex bitmask of the connected component containing ``v``."""
    seen = 1 << v
    frontier = seen
    while frontier:
        nxt = 0
        w = frontier
        while w:
            low = w & -w
            nxt |= G.adjacency[low.bit_length() - 1]
            w ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen


def is_complete_ttg(G: TwoTerminalGraph) -> bool:
    """True when the component holding both terminals is a complete graph."""
    comp = component_of(G, G.s)
    if not comp >> G.t & 1:
        return False
    for v in range(G.n):
        if comp >> v & 1 and (G.adjacency[v] | (1 << v)) & comp != comp:
            return False
    return True


@dataclass(frozen=True)
class StructureReport:
    terminals_true_twins: bool
    terminals_universal: bool
    degrees: tuple[int, ...]
    hat: SimpleGraph = field(repr=False)


def structural_predicates(G: TwoTerminalGraph) -> StructureReport:
    return StructureReport(
        terminals_true_twins=terminals_true_twins(G),
        terminals_universal=terminals_universal(G),
        degrees=G.degrees,
        hat=G.hat(),
    )


def count_p3(H: SimpleGraph) -> int:
    """Number of subgraphs isomorphic to the path on three vertices."""
    return sum(math.comb(d, 2) for d in H.degrees)


def _max_flow_unit(H: SimpleGraph, source: int, sink: int) -> int:
    # residual capacities on both arcs of every undirected edge
    cap: dict[tuple[int, int], int] = {}
    for u, v in H.edges:
        cap[(u, v)] = cap.get((u, v), 0) + 1
        cap[(v, u)] = cap.get((v, u), 0) + 1
    nbrs = [H.neighbors(v) for v in range(H.n)]
    flow = 0
    while True:
        parent = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            u = queue.popleft()
            for w in nbrs[u]:
                if w not in parent and cap[(u, w)] > 0:
                    parent[w] = u
                    queue.append(w)
        if sink not in parent:
            return flow
        w = sink
        while w != source:
            u = parent[w]
            cap[(u, w)] -= 1
            cap[(w, u)] += 1
            w = u
        flow += 1


def edge_connectivity(H: SimpleGraph) -> int:
    """Least number of edge removals that disconnect ``H``; 0 if already disconnected."""
    if H.n == 1:
        raise PreconditionError("edge connectivity is undefined on K1")
    if H.n == 0:
        raise PreconditionError("edge connectivity is undefined on the empty graph")
    return min(_max_flow_unit(H, 0, v) for v in range(1, H.n))
