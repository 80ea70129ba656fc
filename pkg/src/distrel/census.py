"""Exact d-pathset censuses ``(N_1^d, ..., N_m^d)`` and derived cutset statistics.

Two independent backends:

* ``subset-enum`` walks all ``2^m`` edge subsets, bit-sliced: 64 subsets share
  one ``uint64`` word and a depth-``d`` breadth-first sweep runs on whole words.
* ``path-inclusion-exclusion`` lists every s-t path of length at most ``d`` as
  an edge mask and counts supersets of their union by inclusion-exclusion,
  merging terms with equal union masks.
"""
from __future__ import annotations

import math
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BackendInfeasible, CapacityError, PreconditionError
from .graph import TwoTerminalGraph

SUBSET_ENUM_MAX_M = 28
PATH_LIMIT = 2**20
UNION_TERM_LIMIT = 2**21
WORDS_PER_CHUNK = 2**16

BACKENDS = ("subset-enum", "path-inclusion-exclusion", "auto")


@dataclass(frozen=True)
class CensusVector:
    """``counts[i-1] = N_i^d``; index 0 of the list is the one-edge count."""

    d: int
    m: int
    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if len(self.counts) != self.m:
            raise ValueError(f"expected {self.m} counts, got {len(self.counts)}")

    def N(self, i: int) -> int:
        """1-based coefficient; ``N(0)`` is 0 (the empty set never joins s and t)."""
        if i == 0:
            return 0
        if not 1 <= i <= self.m:
            raise IndexError(i)
        return self.counts[i - 1]

    def to_json(self) -> dict:
        return {"d": self.d, "m": self.m, "counts": [str(c) for c in self.counts]}

    @classmethod
    def from_json(cls, obj: dict) -> "CensusVector":
        return cls(int(obj["d"]), int(obj["m"]), tuple(int(c) for c in obj["counts"]))


def _check_d(d: int) -> None:
    if d < 1:
        raise PreconditionError(f"distance bound must be positive, got {d}")


def is_d_pathset(G: TwoTerminalGraph, mask: int, d: int) -> bool:
    """Whether the spanning subgraph with edge set ``mask`` has an s-t path of length <= d."""
    _check_d(d)
    if mask >> G.m:
        raise ValueError("mask references edges outside the graph")
    rows = [0] * G.n
    for i, (u, v) in enumerate(G.edges):
        if mask >> i & 1:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    seen = frontier = 1 << G.s
    for _ in range(d):
        nxt = 0
        w = frontier
        while w:
            low = w & -w
            nxt |= rows[low.bit_length() - 1]
            w ^= low
        if nxt >> G.t & 1:
            return True
        frontier = nxt & ~seen
        if not frontier:
            return False
        seen |= nxt
    return False


# -- subset enumeration --------------------------------------------------------

_LOW_PATTERNS = [sum(1 << p for p in range(64) if p >> e & 1) for e in range(6)]
_POP_MASKS = np.array(
    [sum(1 << p for p in range(64) if p.bit_count() == k) for k in range(7)], dtype=np.uint64)


def _sweep_words(G: TwoTerminalGraph, d: int, w0: int, nwords: int) -> np.ndarray:
    """Per-size pathset counts for subsets ``64*w0 .. 64*(w0+nwords)-1``."""
    m = G.m
    widx = np.arange(w0, w0 + nwords, dtype=np.uint64)
    full = np.uint64(0xFFFFFFFFFFFFFFFF)
    present = []
    for e in range(m):
        if e < 6:
            present.append(np.full(nwords, _LOW_PATTERNS[e], dtype=np.uint64))
        else:
            bit = (widx >> np.uint64(e - 6)) & np.uint64(1)
            present.append(bit * full)
    zero = np.zeros(nwords, dtype=np.uint64)
    reach = [zero] * G.n
    reach[G.s] = np.full(nwords, full, dtype=np.uint64)
    for _ in range(d):
        nxt = list(reach)
        for e, (u, v) in enumerate(G.edges):
            pe = present[e]
            nxt[v] = nxt[v] | (reach[u] & pe)
            nxt[u] = nxt[u] | (reach[v] & pe)
        reach = nxt
    ok = reach[G.t]
    if m < 6:
        ok = ok & np.uint64((1 << (1 << m)) - 1)
    high = np.bitwise_count(widx).astype(np.int64)
    out = np.zeros(m + 7, dtype=np.int64)
    for k in range(7):
        c = np.bitwise_count(ok & _POP_MASKS[k]).astype(np.int64)
        out += np.bincount(high + k, weights=c, minlength=m + 7).astype(np.int64)[: m + 7]
    return out


def _census_subset_enum(G: TwoTerminalGraph, d: int, max_m: int, workers: int) -> list[int]:
    m = G.m
    if m > max_m:
        raise CapacityError(f"subset enumeration capped at m <= {max_m}, got m={m}")
    total_words = 1 << max(m - 6, 0)
    starts = list(range(0, total_words, WORDS_PER_CHUNK))

    def run(w0: int) -> np.ndarray:
        return _sweep_words(G, d, w0, min(WORDS_PER_CHUNK, total_words - w0))

    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, starts))
    else:
        parts = [run(w0) for w0 in starts]
    acc = [0] * (m + 7)
    for part in parts:  # partition order keeps the reduction deterministic
        for i, c in enumerate(part.tolist()):
            acc[i] += c
    return acc[1: m + 1]


# -- path inclusion-exclusion ----------------------------------------------------

def st_path_masks(G: TwoTerminalGraph, d: int, limit: int | None = None) -> list[int]:
    """Edge masks of all simple s-t paths with at most ``d`` edges."""
    _check_d(d)
    inc: list[list[tuple[int, int]]] = [[] for _ in range(G.n)]
    for i, (u, v) in enumerate(G.edges):
        inc[u].append((v, i))
        inc[v].append((u, i))
    out: list[int] = []

    def walk(v: int, visited: int, mask: int, length: int) -> None:
        for w, i in inc[v]:
            if visited >> w & 1:
                continue
            if w == G.t:
                out.append(mask | (1 << i))
                if limit is not None and len(out) > limit:
                    raise BackendInfeasible(f"more than {limit} paths of length <= {d}")
            elif length + 1 < d:
                walk(w, visited | (1 << w), mask | (1 << i), length + 1)

    walk(G.s, 1 << G.s, 0, 0)
    return out


def minimal_masks(masks: Sequence[int]) -> list[int]:
    """Drop duplicates and any mask that contains another mask."""
    kept: list[int] = []
    for mask in sorted(set(masks), key=lambda x: (x.bit_count(), x)):
        if not any(k & mask == k for k in kept):
            kept.append(mask)
    return kept


DENSE_UNION_MAX_M = 22
_COEFF_BOUND = 1 << 52


def _union_terms_dense(paths: list[int], m: int) -> dict[int, int]:
    # coefficient table indexed directly by union mask
    table = np.zeros(1 << m, dtype=np.int64)
    for p in paths:
        idx = np.flatnonzero(table)
        vals = table[idx]
        np.subtract.at(table, idx | p, vals)
        table[p] += 1
        if idx.size and np.abs(vals).max() > _COEFF_BOUND:
            raise BackendInfeasible("inclusion-exclusion coefficients outgrew int64 headroom")
    idx = np.flatnonzero(table)
    return dict(zip(idx.tolist(), table[idx].tolist()))


def _union_terms_sparse(paths: list[int], term_limit: int) -> dict[int, int]:
    terms: dict[int, int] = {}
    for p in paths:
        update: dict[int, int] = defaultdict(int)
        update[p] += 1
        for union, coeff in terms.items():
            update[union | p] -= coeff
        for union, coeff in update.items():
            c = terms.get(union, 0) + coeff
            if c:
                terms[union] = c
            else:
                terms.pop(union, None)
        if len(terms) > term_limit:
            raise BackendInfeasible(f"inclusion-exclusion exceeded {term_limit} distinct unions")
    return terms


def _census_path_ie(G: TwoTerminalGraph, d: int, path_limit: int, term_limit: int) -> list[int]:
    m = G.m
    paths = minimal_masks(st_path_masks(G, d, limit=path_limit))
    if m <= DENSE_UNION_MAX_M:
        terms = _union_terms_dense(paths, m)
    else:
        terms = _union_terms_sparse(paths, term_limit)
    by_size = [0] * (m + 1)
    for union, coeff in terms.items():
        by_size[union.bit_count()] += coeff
    counts = [0] * m
    for size, coeff in enumerate(by_size):
        if coeff:
            for i in range(max(size, 1), m + 1):
                counts[i - 1] += coeff * math.comb(m - size, i - size)
    return counts


def census(G: TwoTerminalGraph, d: int, backend: str = "auto", *,
           max_m: int = SUBSET_ENUM_MAX_M, path_limit: int = PATH_LIMIT,
           term_limit: int = UNION_TERM_LIMIT, workers: int = 1) -> CensusVector:
    _check_d(d)
    if backend == "auto":
        backend = "subset-enum" if G.m <= max_m else "path-inclusion-exclusion"
    if backend == "subset-enum":
        counts = _census_subset_enum(G, d, max_m, workers)
    elif backend == "path-inclusion-exclusion":
        counts = _census_path_ie(G, d, path_limit, term_limit)
    else:
        raise ValueError(f"unknown backend {backend!r}; choose from {BACKENDS}")
    return CensusVector(d, G.m, tuple(counts))


# -- evaluation ------------------------------------------------------------------

def as_probability(rho) -> Fraction:
    value = Fraction(rho)
    if not 0 <= value <= 1:
        raise ValueError(f"rho must lie in [0, 1], got {value}")
    return value


def evaluate_reliability(C: CensusVector, rho) -> Fraction:
    """``sum_i N_i (1-rho)^i rho^(m-i)`` as an exact rational."""
    rho = as_probability(rho)
    q = 1 - rho
    return sum((Fraction(c) * q**i * rho ** (C.m - i)
                for i, c in enumerate(C.counts, start=1) if c), Fraction(0))


def evaluate_unreliability(C: CensusVector, rho) -> Fraction:
    return 1 - evaluate_reliability(C, rho)


# -- relevance and cutsets ---------------------------------------------------------

def irrelevant_edges(G: TwoTerminalGraph, d: int) -> frozenset[int]:
    """Indices of edges lying on no s-t path of length at most ``d``."""
    used = 0
    for p in st_path_masks(G, d):
        used |= p
    return frozenset(i for i in range(G.m) if not used >> i & 1)


@dataclass(frozen=True)
class CutsetStats:
    d: int
    m: int
    B: tuple[int, ...]  # B[i] = number of i-edge d-cutsets, i = 0..m
    lambda_st: int
    minimum_cutsets_all_trivial: bool


def trivial_cutset_count(G: TwoTerminalGraph, k: int) -> int:
    """k-edge sets containing every edge at s or every edge at t."""
    at_s = {i for i, e in enumerate(G.edges) if G.s in e}
    at_t = {i for i, e in enumerate(G.edges) if G.t in e}
    both = len(at_s | at_t)

    def sup(size: int) -> int:
        return math.comb(G.m - size, k - size) if k >= size else 0

    return sup(len(at_s)) + sup(len(at_t)) - sup(both)


def cutset_stats(G: TwoTerminalGraph, d: int, C: CensusVector | None = None) -> CutsetStats:
    if C is None:
        C = census(G, d)
    m = G.m
    B = tuple(math.comb(m, i) - C.N(m - i) for i in range(m + 1))
    lam = next(j for j in range(1, m + 1) if B[j] > 0) if m else 0
    trivial = m > 0 and B[lam] == trivial_cutset_count(G, lam)
    return CutsetStats(d, m, B, lam, trivial)
