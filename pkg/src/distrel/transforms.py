"""Reliability-improving moves inside a class T_(n,m).

Every public transform returns the new graph together with a
:class:`StrongerCertificate` computed from two full censuses; the moves
themselves are never trusted.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .census import CensusVector, census, irrelevant_edges
from .errors import InternalInvariantError, PreconditionError
from .graph import TwoTerminalGraph, component_of, terminals_true_twins

CERT_D = 3


def is_d_stronger(after: CensusVector, before: CensusVector) -> bool:
    pairs = list(zip(after.counts, before.counts))
    return (after.m == before.m and all(a >= b for a, b in pairs)
            and any(a > b for a, b in pairs))


@dataclass(frozen=True)
class StrongerCertificate:
    before: CensusVector
    after: CensusVector
    d: int
    steps: tuple[str, ...] = field(default=())

    @property
    def verified(self) -> bool:
        return is_d_stronger(self.after, self.before)

    @property
    def noop(self) -> bool:
        return not self.steps

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "verified": self.verified,
            "noop": self.noop,
            "steps": list(self.steps),
            "before": self.before.to_json(),
            "after": self.after.to_json(),
        }


def _certify(before: TwoTerminalGraph, after: TwoTerminalGraph, d: int,
             steps: list[str]) -> StrongerCertificate:
    return StrongerCertificate(census(before, d), census(after, d), d, tuple(steps))


def in_Tstar(G: TwoTerminalGraph) -> bool:
    """True-twin terminals and no 3-irrelevant edge."""
    return terminals_true_twins(G) and not irrelevant_edges(G, 3)


def _size_check(G: TwoTerminalGraph) -> None:
    if G.n < 5 or G.m < 5:
        raise PreconditionError(f"transform needs n >= 5 and m >= 5, got n={G.n}, m={G.m}")


# -- single moves ----------------------------------------------------------------

def _insert_st(G: TwoTerminalGraph, e: int) -> TwoTerminalGraph:
    if G.has_edge(G.s, G.t):
        raise PreconditionError("st is already an edge")
    if not 0 <= e < G.m:
        raise PreconditionError(f"edge index {e} out of range")
    return G.replace_edge(e, (G.s, G.t))


def _common_neighbors(G: TwoTerminalGraph) -> list[int]:
    both = G.adjacency[G.s] & G.adjacency[G.t]
    return [v for v in range(G.n) if both >> v & 1]


def _hanging_move(G: TwoTerminalGraph, v: int, a: int, b: int) -> tuple[TwoTerminalGraph, str]:
    """Move for a vertex ``v`` whose only edge goes to terminal ``a``."""
    av = G.edge_index(a, v)
    others = [x for x in range(G.n) if x not in (a, b, v)]
    for x in others:
        if G.has_edge(a, x) and not G.has_edge(x, b):
            return G.replace_edge(av, (x, b)), f"hanging {v}: {a}{v} -> {x}{b}"
    for x in others:
        if not G.has_edge(a, x) and G.has_edge(x, b):
            return G.replace_edge(av, (a, x)), f"hanging {v}: {a}{v} -> {a}{x}"
    common = _common_neighbors(G)
    for i, x in enumerate(common):
        for y in common[i + 1:]:
            if not G.has_edge(x, y):
                return G.replace_edge(av, (x, y)), f"hanging {v}: {a}{v} -> {x}{y}"
    reduced = G.without_edge(av)
    comp = component_of(reduced, a)
    members = [x for x in range(G.n) if comp >> x & 1]
    complete = comp >> b & 1 and all(
        (reduced.adjacency[x] | 1 << x) & comp == comp for x in members)
    if complete and len(members) >= 4:
        x, y = [w for w in members if w not in (a, b)][:2]
        return G.replace_edge(G.edge_index(x, y), (v, b)), f"complete: {x}{y} -> {v}{b}"
    spare = sorted(i for i in irrelevant_edges(G, CERT_D) if i != av)
    if not spare:
        raise InternalInvariantError(f"no move applies to hanging vertex {v}")
    f = spare[0]
    return G.replace_edge(f, (v, b)), f"irrelevant {G.edges[f]} -> {v}{b}"


def _twin_step(G: TwoTerminalGraph) -> tuple[TwoTerminalGraph, str]:
    s, t = G.s, G.t
    for v in range(G.n):
        if v in (s, t):
            continue
        at_s, at_t = G.has_edge(s, v), G.has_edge(v, t)
        if at_s == at_t:
            continue
        a, b = (s, t) if at_s else (t, s)
        if G.degree(v) == 1:
            return _hanging_move(G, v, a, b)
        w = next(w for w in G.neighbors(v) if w != a)
        return G.replace_edge(G.edge_index(v, w), (v, b)), f"twin {v}: {v}{w} -> {v}{b}"
    raise InternalInvariantError("terminals are already true twins")


def _relevance_step(G: TwoTerminalGraph) -> tuple[TwoTerminalGraph, list[str]]:
    s, t = G.s, G.t
    irr = sorted(irrelevant_edges(G, CERT_D))
    x, y = G.edges[irr[0]]
    u = x if not G.has_edge(s, x) else y
    w = y if u == x else x
    if G.has_edge(s, u) or G.has_edge(t, u):
        raise InternalInvariantError(f"irrelevant edge {G.edges[irr[0]]} touches the terminal neighbourhood")
    if G.degree(u) == 1:
        # relocating a pendant irrelevant edge to s leaves the census unchanged
        moved = G.replace_edge(irr[0], (s, u))
        H, note = _hanging_move(moved, u, s, t)
        return H, [f"pendant {u}{w} -> {s}{u}", note]
    e1, e2 = sorted(i for i, e in enumerate(G.edges) if u in e)[:2]
    H = G.replace_edge(e1, (s, u)).replace_edge(e2, (u, t))
    return H, [f"relevance {u}: {G.edges[e1]}, {G.edges[e2]} -> {s}{u}, {u}{t}"]


# -- public transforms -------------------------------------------------------------

def st_swap(G: TwoTerminalGraph, e: int, d: int = CERT_D) -> tuple[TwoTerminalGraph, StrongerCertificate]:
    """``G - e + st``."""
    H = _insert_st(G, e)
    return H, _certify(G, H, d, [f"st-swap {G.edges[e]} -> {G.s}{G.t}"])


def _ensure_st(G: TwoTerminalGraph, steps: list[str]) -> TwoTerminalGraph:
    if G.has_edge(G.s, G.t):
        return G
    steps.append(f"st-swap {G.edges[0]} -> {G.s}{G.t}")
    return _insert_st(G, 0)


def _make_twins(G: TwoTerminalGraph, steps: list[str]) -> TwoTerminalGraph:
    budget = G.m
    while not terminals_true_twins(G):
        if budget == 0:
            raise InternalInvariantError("twin phase did not terminate within m moves")
        G, note = _twin_step(G)
        steps.append(note)
        budget -= 1
    return G


def _drop_irrelevant(G: TwoTerminalGraph, steps: list[str]) -> TwoTerminalGraph:
    budget = G.m
    while irrelevant_edges(G, CERT_D):
        if budget == 0:
            raise InternalInvariantError("relevance phase did not terminate within m moves")
        G, notes = _relevance_step(G)
        steps.extend(notes)
        budget -= 1
    return G


def twin_terminals(G: TwoTerminalGraph) -> tuple[TwoTerminalGraph, StrongerCertificate]:
    """Make the terminals true twins; a no-op certificate is returned if they already are."""
    _size_check(G)
    steps: list[str] = []
    if terminals_true_twins(G):
        return G, _certify(G, G, CERT_D, steps)
    H = _make_twins(_ensure_st(G, steps), steps)
    return H, _certify(G, H, CERT_D, steps)


def normalize_to_Tstar(G: TwoTerminalGraph) -> tuple[TwoTerminalGraph, StrongerCertificate]:
    _size_check(G)
    steps: list[str] = []
    if in_Tstar(G):
        return G, _certify(G, G, CERT_D, steps)
    H = _ensure_st(G, steps)
    H = _make_twins(H, steps)
    H = _drop_irrelevant(H, steps)
    if not in_Tstar(H):
        raise InternalInvariantError("normalization left T*")
    return H, _certify(G, H, CERT_D, steps)
