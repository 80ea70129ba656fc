"""Exact sign analysis of ``R_G - R_H`` on [0, 1].

Polynomials are lists of Python ints, lowest degree first.  Real roots in
(0, 1) are isolated by Descartes' rule of signs with dyadic bisection, after
stripping the factors ``rho`` and ``1 - rho`` and reducing to the square-free
part.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .census import CensusVector, as_probability
from .errors import DimensionMismatch

Poly = list[int]


# -- integer polynomial helpers ----------------------------------------------------

def _trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_eval(p: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_sign(p: Sequence, x) -> int:
    v = poly_eval(p, x)
    return (v > 0) - (v < 0)


def taylor_shift(p: Sequence[int], a: int = 1) -> Poly:
    """Coefficients of ``p(x + a)``."""
    q = list(p)
    n = len(q)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            q[j] += a * q[j + 1]
    return q


def sign_variations(p: Sequence[int]) -> int:
    signs = [c > 0 for c in p if c]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def unit_variations(p: Sequence[int]) -> int:
    """Descartes bound on the number of roots of ``p`` in (0, 1)."""
    return sign_variations(taylor_shift(list(reversed(p))))


def _primitive(p: Sequence[Fraction]) -> Poly:
    p = _trim(p)
    if not p:
        return []
    den = math.lcm(*(Fraction(c).denominator for c in p))
    ints = [int(Fraction(c) * den) for c in p]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    return [-c for c in ints] if ints[-1] < 0 else ints


def _divmod(a: Sequence, b: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    a = [Fraction(c) for c in a]
    b = _trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(_trim(a)) >= len(b):
        a = _trim(a)
        shift = len(a) - len(b)
        factor = a[-1] / b[-1]
        q[shift] = factor
        for i, c in enumerate(b):
            a[i + shift] -= factor * c
        a = _trim(a)
        if not a:
            break
    return q, _trim(a)


def poly_gcd(a: Sequence[int], b: Sequence[int]) -> Poly:
    a, b = _primitive(a), _primitive(b)
    while b:
        _, r = _divmod(a, b)
        a, b = b, _primitive(r)
    return a


def derivative(p: Sequence[int]) -> Poly:
    return [i * c for i, c in enumerate(p)][1:]


def squarefree(p: Sequence[int]) -> Poly:
    g = poly_gcd(p, derivative(p))
    if len(g) <= 1:
        return _primitive(p)
    q, r = _divmod(p, g)
    assert not r
    return _primitive(q)


def _strip_boundary_roots(p: Poly) -> tuple[Poly, int, int]:
    """``p = x^a (1-x)^b q`` with ``q(0) != 0`` and ``q(1) != 0``."""
    a = 0
    while p and p[0] == 0:
        p = p[1:]
        a += 1
    b = 0
    while p and sum(p) == 0:
        # synthetic division by (x - 1), then flip sign for (1 - x)
        q = [0] * (len(p) - 1)
        carry = 0
        for i in range(len(p) - 1, 0, -1):
            carry += p[i]
            q[i - 1] = carry
        p = [-c for c in q]
        b += 1
    return p, a, b


def isolate_unit_roots(p: Sequence[int]) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals for the roots of square-free ``p`` in (0, 1).

    An exact rational root ``r`` is returned as ``(r, r)``; otherwise the root
    lies strictly inside ``(lo, hi)``.
    """
    p = _trim(p)
    out: list[tuple[Fraction, Fraction]] = []
    if len(p) <= 1:
        return out
    # p restricted to [c/2^k, (c+1)/2^k], rescaled to (0, 1)
    stack = [(list(p), 0, 0)]
    while stack:
        q, c, k = stack.pop()
        while q and q[0] == 0:  # root at the left endpoint, recorded by the parent
            q = q[1:]
        v = unit_variations(q)
        if v == 0:
            continue
        lo, hi = Fraction(c, 2**k), Fraction(c + 1, 2**k)
        if v == 1:
            out.append((lo, hi))
            continue
        deg = len(q) - 1
        left = [coef * 2 ** (deg - i) for i, coef in enumerate(q)]
        right = taylor_shift(left)
        mid = Fraction(2 * c + 1, 2 ** (k + 1))
        if right[0] == 0:
            out.append((mid, mid))
            # drop the factor (x - 1) from the left half so it does not recount
            left = _divmod(left, [-1, 1])[0]
            left = _primitive(left)
        stack.append((right, 2 * c + 1, k + 1))
        stack.append((left, 2 * c, k + 1))
    return sorted(out)


def _sign_right_of(p: Sequence[int], x: Fraction) -> int:
    """Sign of ``p`` on ``(x, x + eps)`` for small enough ``eps``."""
    q = [Fraction(c) for c in p]
    n = len(q)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            q[j] += x * q[j + 1]
    for c in q:
        if c:
            return 1 if c > 0 else -1
    return 0


def refine(p: Sequence[int], lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Halve an isolating interval of a simple root, keeping the half that holds it."""
    mid = (lo + hi) / 2
    s_mid = poly_sign(p, mid)
    if s_mid == 0:
        return mid, mid
    return (lo, mid) if _sign_right_of(p, lo) != s_mid else (mid, hi)


# -- reliability polynomials -----------------------------------------------------

@dataclass(frozen=True)
class ReliabilityPolynomial:
    census: CensusVector

    @property
    def m(self) -> int:
        return self.census.m

    @cached_property
    def coefficients(self) -> Poly:
        """Standard-basis coefficients of ``sum_i N_i (1-x)^i x^(m-i)``."""
        m = self.m
        out = [0] * (m + 1)
        for i, n_i in enumerate(self.census.counts, start=1):
            if not n_i:
                continue
            for k in range(i + 1):
                out[m - i + k] += n_i * math.comb(i, k) * (-1) ** k
        return out

    def __call__(self, rho) -> Fraction:
        return poly_eval(self.coefficients, as_probability(rho))

    def __sub__(self, other: "ReliabilityPolynomial") -> Poly:
        if self.m != other.m:
            raise DimensionMismatch("polynomials over different edge counts")
        return [a - b for a, b in zip(self.coefficients, other.coefficients)]


# -- verdicts ----------------------------------------------------------------------

DOMINATES, DOMINATED, EQUAL, CROSSING = "dominates", "dominated", "equal", "crossing"
_MIRROR = {DOMINATES: DOMINATED, DOMINATED: DOMINATES, EQUAL: EQUAL, CROSSING: CROSSING}


def lexicographic_keys(C: CensusVector) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(near-1 key, near-0 key); a larger key means more reliable near that end."""
    return tuple(C.counts), tuple(reversed(C.counts))


def _winner(a, b) -> str:
    return "G" if a > b else "H" if b > a else "tie"


@dataclass(frozen=True)
class ComparisonVerdict:
    kind: str
    near_one_winner: str
    near_zero_winner: str
    witness_rho: Fraction | None = None  # exact point with R_G < R_H
    positive_rho: Fraction | None = None  # exact point with R_G > R_H
    interval: tuple[Fraction, Fraction] | None = None  # endpoints have opposite strict signs
    roots_in_unit_interval: int | None = None  # distinct roots in (0, 1); None on the fast path

    def mirror(self) -> "ComparisonVerdict":
        swap = {"G": "H", "H": "G", "tie": "tie"}
        return ComparisonVerdict(
            _MIRROR[self.kind], swap[self.near_one_winner], swap[self.near_zero_winner],
            self.positive_rho, self.witness_rho, self.interval, self.roots_in_unit_interval)

    def to_json(self) -> dict:
        frac = lambda x: None if x is None else f"{x.numerator}/{x.denominator}"
        out = {
            "kind": self.kind,
            "witness_rho": frac(self.witness_rho),
            "near_one_winner": self.near_one_winner,
            "near_zero_winner": self.near_zero_winner,
        }
        if self.kind == CROSSING:
            out["positive_rho"] = frac(self.positive_rho)
            out["interval"] = [frac(x) for x in self.interval]
        return out


def difference_sign_profile(diff: Sequence[int]):
    """Sample points strictly between consecutive roots of ``diff`` in (0, 1).

    Returns ``(samples, signs, roots)`` where ``signs[j]`` is the strict sign of
    ``diff`` on the j-th gap and ``roots`` are the separating isolating intervals.
    """
    q, _, _ = _strip_boundary_roots(_trim(diff))
    core = squarefree(q)
    items = [(Fraction(0), Fraction(0))] + isolate_unit_roots(core) + [(Fraction(1), Fraction(1))]
    # refine until neighbouring items leave a gap of positive length
    changed = True
    while changed:
        changed = False
        for j in range(len(items) - 1):
            (a_lo, a_hi), (b_lo, b_hi) = items[j], items[j + 1]
            if a_hi >= b_lo:
                if a_lo != a_hi:
                    items[j] = refine(core, a_lo, a_hi)
                    changed = True
                if b_lo != b_hi:
                    items[j + 1] = refine(core, b_lo, b_hi)
                    changed = True
                if a_lo == a_hi and b_lo == b_hi:
                    raise AssertionError("coincident exact roots")
    samples = [(items[j][1] + items[j + 1][0]) / 2 for j in range(len(items) - 1)]
    signs = [poly_sign(q, x) for x in samples]
    assert all(signs), "sample landed on a root"
    return samples, signs, items[1:-1]


def compare_on_unit_interval(C_G: CensusVector, C_H: CensusVector) -> ComparisonVerdict:
    if C_G.m != C_H.m or C_G.d != C_H.d:
        raise DimensionMismatch(
            f"cannot compare (m={C_G.m}, d={C_G.d}) against (m={C_H.m}, d={C_H.d})")
    one_g, zero_g = lexicographic_keys(C_G)
    one_h, zero_h = lexicographic_keys(C_H)
    near_one, near_zero = _winner(one_g, one_h), _winner(zero_g, zero_h)
    diffs = [a - b for a, b in zip(C_G.counts, C_H.counts)]
    if all(x == 0 for x in diffs):
        return ComparisonVerdict(EQUAL, near_one, near_zero)
    if all(x >= 0 for x in diffs):
        return ComparisonVerdict(DOMINATES, near_one, near_zero)
    if all(x <= 0 for x in diffs):
        return ComparisonVerdict(DOMINATED, near_one, near_zero)

    diff = ReliabilityPolynomial(C_G) - ReliabilityPolynomial(C_H)
    if not _trim(diff):
        return ComparisonVerdict(EQUAL, near_one, near_zero, roots_in_unit_interval=0)
    samples, signs, roots = difference_sign_profile(diff)
    nroots = len(roots)
    if all(s > 0 for s in signs):
        return ComparisonVerdict(DOMINATES, near_one, near_zero, roots_in_unit_interval=nroots)
    if all(s < 0 for s in signs):
        return ComparisonVerdict(DOMINATED, near_one, near_zero, roots_in_unit_interval=nroots)
    j = next(j for j in range(len(signs) - 1) if signs[j] != signs[j + 1])
    lo, hi = samples[j], samples[j + 1]
    positive = lo if signs[j] > 0 else hi
    negative = hi if signs[j] > 0 else lo
    return ComparisonVerdict(CROSSING, near_one, near_zero, witness_rho=negative,
                             positive_rho=positive, interval=(lo, hi),
                             roots_in_unit_interval=nroots)
