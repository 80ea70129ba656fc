"""Canonical forms and isomorph-free enumeration of the classes T_(n,m).

Two two-terminal graphs are isomorphic when some vertex bijection maps edges
to edges and the terminal set {0, 1} to itself.  The canonical code of a graph
is the smallest upper-triangular adjacency bit string (pair ``(0, 1)`` is the
most significant bit) over that permutation group.  All codes for one graph,
or for every one-edge extension of a graph, are computed in a single numpy
reduction over a precomputed weight table.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, total_ordering
from itertools import combinations, permutations
from typing import Iterator

import numpy as np

from .errors import CapacityError
from .graph import TwoTerminalGraph

CANON_MAX_N = 10
ENUM_MAX_N = 8


@lru_cache(maxsize=None)
def pair_list(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(combinations(range(n), 2))


@lru_cache(maxsize=None)
def pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(pair_list(n))}


@lru_cache(maxsize=None)
def terminal_group(n: int) -> np.ndarray:
    """All vertex permutations of ``range(n)`` fixing {0, 1} as a set, one per row."""
    rest = list(range(2, n))
    rows = []
    for head in ((0, 1), (1, 0)):
        for tail in permutations(rest):
            rows.append(head + tail)
    return np.array(rows, dtype=np.int64)


@lru_cache(maxsize=None)
def _weights(n: int) -> np.ndarray:
    """``W[g, q]`` is the code weight of original pair ``q`` after relabeling by ``g``."""
    pairs = pair_list(n)
    npairs = len(pairs)
    group = terminal_group(n)
    lo = np.array([p[0] for p in pairs])
    hi = np.array([p[1] for p in pairs])
    a, b = group[:, lo], group[:, hi]
    u, v = np.minimum(a, b), np.maximum(a, b)
    # index of pair (u, v) in lexicographic order
    k = u * (2 * n - u - 1) // 2 + (v - u - 1)
    return (np.int64(1) << (npairs - 1 - k)).astype(np.int64)


@total_ordering
@dataclass(frozen=True)
class CanonicalCode:
    n: int
    value: int

    def __lt__(self, other: "CanonicalCode") -> bool:
        return (self.n, self.value) < (other.n, other.value)

    @property
    def bits(self) -> str:
        return format(self.value, f"0{len(pair_list(self.n))}b") if self.n > 1 else ""

    def __str__(self) -> str:
        return f"{self.n}:{self.value:x}"

    @classmethod
    def parse(cls, text: str) -> "CanonicalCode":
        n, value = text.split(":")
        return cls(int(n), int(value, 16))

    def graph(self) -> TwoTerminalGraph:
        pairs = pair_list(self.n)
        npairs = len(pairs)
        edges = tuple(pairs[k] for k in range(npairs) if self.value >> (npairs - 1 - k) & 1)
        return TwoTerminalGraph(self.n, edges)


def _check_n(n: int, cap: int) -> None:
    if n > cap:
        raise CapacityError(f"permutation search capped at n <= {cap}, got n={n}")


def _edge_ids(G: TwoTerminalGraph) -> list[int]:
    if (G.s, G.t) != (0, 1):
        raise ValueError("canonical codes expect terminals stored as 0 and 1")
    index = pair_index(G.n)
    return [index[e] for e in G.edges]


def canonical_code(G: TwoTerminalGraph, max_n: int = CANON_MAX_N) -> CanonicalCode:
    _check_n(G.n, max_n)
    if G.n < 2:
        return CanonicalCode(G.n, 0)
    ids = _edge_ids(G)
    if not ids:
        return CanonicalCode(G.n, 0)
    codes = _weights(G.n)[:, ids].sum(axis=1)
    return CanonicalCode(G.n, int(codes.min()))


def canonical_form(G: TwoTerminalGraph, max_n: int = CANON_MAX_N) -> TwoTerminalGraph:
    return canonical_code(G, max_n).graph()


def isomorphic(G: TwoTerminalGraph, H: TwoTerminalGraph) -> bool:
    return G.n == H.n and G.m == H.m and canonical_code(G) == canonical_code(H)


def _extensions(n: int, value: int) -> np.ndarray:
    """Canonical values of every graph obtained by adding one edge."""
    npairs = len(pair_list(n))
    present = [k for k in range(npairs) if value >> (npairs - 1 - k) & 1]
    absent = [k for k in range(npairs) if not value >> (npairs - 1 - k) & 1]
    W = _weights(n)
    base = W[:, present].sum(axis=1) if present else np.zeros(W.shape[0], dtype=np.int64)
    return (base[:, None] + W[:, absent]).min(axis=0)


@lru_cache(maxsize=None)
def _level(n: int, m: int) -> tuple[int, ...]:
    npairs = len(pair_list(n))
    if m == 0:
        return (0,)
    if 2 * m > npairs:
        # complements of the sparser level, re-canonicalized
        full = (1 << npairs) - 1
        W = _weights(n)
        out = set()
        for value in _level(n, npairs - m):
            comp = full ^ value
            ids = [k for k in range(npairs) if comp >> (npairs - 1 - k) & 1]
            out.add(int(W[:, ids].sum(axis=1).min()))
        return tuple(sorted(out))
    out: set[int] = set()
    for value in _level(n, m - 1):
        out.update(_extensions(n, value).tolist())
    return tuple(sorted(out))


def _check_class(n: int, m: int, max_n: int) -> None:
    if n < 2:
        raise ValueError("two-terminal graphs need n >= 2")
    if not 0 <= m <= n * (n - 1) // 2:
        raise ValueError(f"m={m} impossible for n={n}")
    if n > max_n:
        raise CapacityError(f"class enumeration capped at n <= {max_n}, got n={n}")


def enumerate_codes(n: int, m: int, max_n: int = ENUM_MAX_N) -> list[CanonicalCode]:
    _check_class(n, m, max_n)
    return [CanonicalCode(n, v) for v in _level(n, m)]


def enumerate_class(n: int, m: int, max_n: int = ENUM_MAX_N) -> Iterator[TwoTerminalGraph]:
    """One representative per isomorphism class of T_(n,m), in canonical-code order."""
    for code in enumerate_codes(n, m, max_n):
        yield code.graph()


def class_size(n: int, m: int, max_n: int = ENUM_MAX_N) -> int:
    _check_class(n, m, max_n)
    return len(_level(n, m))
