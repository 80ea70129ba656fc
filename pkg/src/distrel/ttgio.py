"""TTG text format and its JSON mirror.

    ttg <n> <m>
    terminals 0 1
    <u> <v>          (m lines, 0 <= u < v < n, lexicographically sorted)
"""
from __future__ import annotations

import json
from typing import Iterator

from .errors import FormatError
from .graph import TwoTerminalGraph


def format_ttg(G: TwoTerminalGraph) -> str:
    edges = sorted(G.edges)
    lines = [f"ttg {G.n} {G.m}", f"terminals {G.s} {G.t}"]
    lines += [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in tokens]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_ttg(text: str, first_line: int = 1) -> TwoTerminalGraph:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise FormatError("empty input", first_line)
    head = lines[0].split()
    if len(head) != 3 or head[0] != "ttg":
        raise FormatError("header must be 'ttg <n> <m>'", first_line)
    n, m = _ints(head[1:], first_line)
    if n < 2:
        raise FormatError("n must be at least 2", first_line)
    if m < 0 or m > n * (n - 1) // 2:
        raise FormatError(f"m={m} impossible for n={n}", first_line)
    if len(lines) < 2 or lines[1].split() != ["terminals", "0", "1"]:
        raise FormatError("second line must be 'terminals 0 1'", first_line + 1)
    body = lines[2:]
    if len(body) != m:
        raise FormatError(f"expected {m} edge lines, found {len(body)}", first_line + 2 + min(len(body), m))
    edges = []
    prev = None
    for k, raw in enumerate(body):
        lineno = first_line + 2 + k
        tokens = raw.split()
        if len(tokens) != 2:
            raise FormatError("edge line must be '<u> <v>'", lineno)
        u, v = _ints(tokens, lineno)
        if not 0 <= u < v < n:
            raise FormatError(f"edge ({u}, {v}) violates 0 <= u < v < {n}", lineno)
        if prev is not None and (u, v) <= prev:
            what = "duplicate" if (u, v) == prev else "unsorted"
            raise FormatError(f"{what} edge ({u}, {v})", lineno)
        prev = (u, v)
        edges.append((u, v))
    return TwoTerminalGraph(n, tuple(edges))


def iter_ttg(text: str) -> Iterator[TwoTerminalGraph]:
    """Parse a stream of TTG blocks separated by blank lines."""
    block: list[str] = []
    start = 1
    for lineno, raw in enumerate(text.splitlines() + [""], start=1):
        if raw.strip():
            if not block:
                start = lineno
            block.append(raw)
        elif block:
            yield parse_ttg("\n".join(block), first_line=start)
            block = []


def graph_to_json(G: TwoTerminalGraph) -> dict:
    return {"n": G.n, "terminals": [G.s, G.t], "edges": [list(e) for e in G.edges]}


def graph_from_json(obj: dict) -> TwoTerminalGraph:
    try:
        n = obj["n"]
        terminals = obj.get("terminals", [0, 1])
        edges = obj["edges"]
    except (KeyError, TypeError, AttributeError) as exc:
        raise FormatError(f"missing field: {exc}") from None
    if list(terminals) != [0, 1]:
        raise FormatError("terminals must be [0, 1]")
    if not isinstance(n, int) or n < 2:
        raise FormatError("n must be an integer >= 2")
    try:
        return TwoTerminalGraph.from_edges(n, edges)
    except (ValueError, TypeError) as exc:
        raise FormatError(str(exc)) from None


def parse_graph(text: str) -> TwoTerminalGraph:
    """Accept either TTG text or the JSON mirror."""
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(exc.msg, exc.lineno) from None
        return graph_from_json(obj)
    return parse_ttg(text)
