"""Class-level searches over T_(n,m): filtrations, UMRTTG decisions and audits."""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .census import CensusVector, census, cutset_stats, evaluate_reliability
from .classes import ENUM_MAX_N, CanonicalCode, canonical_code, enumerate_codes
from .errors import ConstructionInfeasible, ParameterOutOfRange
from .graph import (
    TwoTerminalGraph,
    construct_A,
    construct_G_counterexample,
    construct_H,
    count_p3,
    edge_connectivity,
    is_almost_regular,
    literal_counterexample_order,
    terminals_universal,
)
from .polycmp import CROSSING, DOMINATED, compare_on_unit_interval, lexicographic_keys

SCHEMA_VERSION = 1


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _census_of_code(args: tuple[int, int, int]) -> CensusVector:
    n, value, d = args
    return census(CanonicalCode(n, value).graph(), d)


@lru_cache(maxsize=256)
def _class_censuses(n: int, m: int, d: int, max_n: int) -> tuple[tuple[CanonicalCode, CensusVector], ...]:
    codes = enumerate_codes(n, m, max_n)
    return tuple((c, census(c.graph(), d)) for c in codes)


def class_censuses(n: int, m: int, d: int, *, workers: int = 1,
                   max_n: int = ENUM_MAX_N) -> tuple[tuple[CanonicalCode, CensusVector], ...]:
    """``(code, census)`` for every member of T_(n,m), in canonical-code order."""
    if workers <= 1:
        return _class_censuses(n, m, d, max_n)
    codes = enumerate_codes(n, m, max_n)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        vectors = list(pool.map(_census_of_code, [(n, c.value, d) for c in codes], chunksize=64))
    return tuple(zip(codes, vectors))


# -- filtrations -------------------------------------------------------------------

NEAR1, NEAR0 = "near1", "near0"


def filter_lexicographic(members, direction: str):
    """Successively keep the members maximizing N_1, N_2, ... (near1) or N_m, ... (near0)."""
    if direction not in (NEAR1, NEAR0):
        raise ValueError(f"direction must be {NEAR1!r} or {NEAR0!r}")
    survivors = list(members)
    if not survivors:
        return survivors
    m = survivors[0][1].m
    order = range(1, m + 1) if direction == NEAR1 else range(m, 0, -1)
    for i in order:
        best = max(C.N(i) for _, C in survivors)
        survivors = [(code, C) for code, C in survivors if C.N(i) == best]
    return survivors


def lmrttg_filtration(n: int, m: int, d: int, direction: str = NEAR1, *,
                      workers: int = 1, max_n: int = ENUM_MAX_N) -> list[TwoTerminalGraph]:
    members = class_censuses(n, m, d, workers=workers, max_n=max_n)
    return [code.graph() for code, _ in filter_lexicographic(members, direction)]


# -- UMRTTG decision -----------------------------------------------------------------

@dataclass
class ClassReport:
    n: int
    m: int
    d: int
    class_size: int
    lmrttg_near_1: list[str]
    lmrttg_near_0: list[str]
    status: str  # exists | not_exists | undecided
    winners: list[str] = field(default_factory=list)
    witness: dict | None = None
    reason: str | None = None
    timings: dict = field(default_factory=dict)

    def to_json(self, include_timings: bool = False) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "m": self.m,
            "d": self.d,
            "class_size": self.class_size,
            "lmrttg_near_1": self.lmrttg_near_1,
            "lmrttg_near_0": self.lmrttg_near_0,
            "umrttg": {"status": self.status, "winners": self.winners,
                       "witness": self.witness, "reason": self.reason},
        }
        if include_timings:
            out["timings"] = self.timings
        return out


def umrttg_decide(n: int, m: int, d: int, *, workers: int = 1,
                  max_n: int = ENUM_MAX_N) -> ClassReport:
    t0 = time.perf_counter()
    members = class_censuses(n, m, d, workers=workers, max_n=max_n)
    t1 = time.perf_counter()
    near1 = filter_lexicographic(members, NEAR1)
    near0 = filter_lexicographic(members, NEAR0)
    near0_codes = {code for code, _ in near0}
    candidates = [(code, C) for code, C in near1 if code in near0_codes]
    report = ClassReport(n, m, d, len(members), [str(c) for c, _ in near1],
                         [str(c) for c, _ in near0], status="undecided")
    if not candidates:
        (g_code, g_c), (h_code, h_c) = near1[0], near0[0]
        verdict = compare_on_unit_interval(g_c, h_c)
        report.status = "not_exists"
        report.witness = {"candidate": str(g_code), "rival": str(h_code),
                          "verdict": verdict.to_json(),
                          "note": "near-1 and near-0 optima differ"}
    else:
        cache: dict[tuple[int, ...], object] = {}
        for code, C in candidates:
            failure = None
            for other, D in members:
                verdict = cache.get((C.counts, D.counts))
                if verdict is None:
                    verdict = cache[(C.counts, D.counts)] = compare_on_unit_interval(C, D)
                if verdict.kind in (CROSSING, DOMINATED):
                    failure = (other, verdict)
                    break
            if failure is None:
                report.winners.append(str(code))
            elif report.witness is None:
                other, verdict = failure
                report.witness = {"candidate": str(code), "rival": str(other),
                                  "verdict": verdict.to_json()}
        report.status = "exists" if report.winners else "not_exists"
        if report.winners:
            report.witness = None
    report.timings = {"census_s": round(t1 - t0, 3),
                      "decide_s": round(time.perf_counter() - t1, 3)}
    return report


# -- the d >= 4 crossing witness --------------------------------------------------------

@dataclass
class CrossingReport:
    n: int
    m: int
    d: int
    rho: Fraction
    reference: str
    counterexample: str
    n_prime: int
    literal_n_prime: int
    literal_feasible: bool
    R_counterexample: Fraction
    R_reference: Fraction
    strict_inequality: bool
    reference_wins_near_1: bool

    @property
    def holds(self) -> bool:
        return self.strict_inequality and self.reference_wins_near_1

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.n, "m": self.m, "d": self.d, "rho": _frac(self.rho),
            "reference": self.reference, "counterexample": self.counterexample,
            "n_prime": self.n_prime, "literal_n_prime": self.literal_n_prime,
            "literal_n_prime_feasible": self.literal_feasible,
            "R_counterexample": _frac(self.R_counterexample),
            "R_reference": _frac(self.R_reference),
            "strict_inequality": self.strict_inequality,
            "reference_wins_near_1": self.reference_wins_near_1,
            "holds": self.holds,
            "scope": ("machine-checked: the strict inequality at rho and the lexicographic "
                      "near-1 comparison of this pair; assumed: that the reference graph is "
                      "the unique d-LMRTTG near 1 in the whole class"),
        }


def crossing_reference(n: int, m: int) -> tuple[str, TwoTerminalGraph]:
    if m <= 2 * n - 3:
        return f"H_{{{n},{m}}}", construct_H(n, m)
    return f"A_{{{n},{m - 2 * n + 3}}}", construct_A(n, m - 2 * n + 3)


def verify_crossing_witness(n: int, m: int, d: int, rho, *, n_prime: int | None = None,
                            workers: int = 1) -> CrossingReport:
    if d < 4:
        raise ParameterOutOfRange(f"crossing witness needs d >= 4, got {d}")
    rho = Fraction(rho)
    G = construct_G_counterexample(n, m, n_prime)
    used = G.n - sum(1 for deg in G.degrees if deg == 0)
    label, H = crossing_reference(n, m)
    literal = literal_counterexample_order(n)
    try:
        construct_G_counterexample(n, m, literal)
        literal_ok = True
    except ConstructionInfeasible:
        literal_ok = False
    C_G = census(G, d, workers=workers)
    C_H = census(H, d, workers=workers)
    R_G, R_H = evaluate_reliability(C_G, rho), evaluate_reliability(C_H, rho)
    return CrossingReport(
        n, m, d, rho, label, f"G_{{{n},{m}}} = A_{{{used},{m - 2 * used + 3}}} + {n - used} isolated",
        used, literal, literal_ok, R_G, R_H, R_G > R_H,
        lexicographic_keys(C_H)[0] > lexicographic_keys(C_G)[0])


# -- structural audits -------------------------------------------------------------------

@dataclass
class AuditReport:
    name: str
    params: dict
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "audit": self.name, **self.params,
                "checked": self.checked, "passed": self.passed,
                "violations": self.violations}


def audit_near0_structure(n: int, m: int, d: int, *, workers: int = 1,
                          max_n: int = ENUM_MAX_N) -> AuditReport:
    if d < 3 or n < 6 or not 3 * n - 5 <= m <= math.comb(n, 2):
        raise ParameterOutOfRange(f"near-0 audit needs d >= 3, n >= 6, 3n-5 <= m <= C(n,2); "
                                  f"got n={n}, m={m}, d={d}")
    report = AuditReport("near0-structure", {"n": n, "m": m, "d": d})
    members = class_censuses(n, m, d, workers=workers, max_n=max_n)
    survivors = {code for code, _ in filter_lexicographic(members, NEAR0)}
    for code, C in members:
        G = code.graph()
        stats = cutset_stats(G, d, C)
        universal = terminals_universal(G)
        report.checked += 1
        if stats.lambda_st > n - 1:
            report.violations.append(f"{code}: lambda_st={stats.lambda_st} > n-1")
        if (stats.lambda_st == n - 1) != universal:
            report.violations.append(
                f"{code}: lambda_st={stats.lambda_st} but universal terminals={universal}")
        if code in survivors:
            if not universal:
                report.violations.append(f"{code}: near-0 survivor without universal terminals")
            if not is_almost_regular(G.hat()):
                report.violations.append(f"{code}: near-0 survivor with non-almost-regular hat graph")
        if universal:
            lam = edge_connectivity(G.hat())
            for i in range(1, lam + 1):
                expected = 2 * math.comb(m - n + 1, i - 1)
                if stats.B[n - 2 + i] != expected:
                    report.violations.append(
                        f"{code}: B_{n - 2 + i}={stats.B[n - 2 + i]} != {expected}")
            bound = 2 * math.comb(m - n + 1, lam)
            if not stats.B[n - 1 + lam] > bound:
                report.violations.append(
                    f"{code}: B_{n - 1 + lam}={stats.B[n - 1 + lam]} not above {bound}")
    return report


def n4_closed_form(n: int, m: int, p3_hat: int) -> int:
    return (math.comb(m - 1, 3) + (n - 2) * math.comb(m - 3, 2) - math.comb(n - 2, 2)
            + 2 * (m - 2 * n + 3) * (m - 6) + 2 * p3_hat)


def verify_N4_formula(n: int, m: int, *, workers: int = 1, max_n: int = ENUM_MAX_N) -> AuditReport:
    if n < 6 or not 3 * n - 6 < m <= math.comb(n, 2) - 2:
        raise ParameterOutOfRange(f"N_4 closed form needs n >= 6 and 3n-6 < m <= C(n,2)-2; "
                                  f"got n={n}, m={m}")
    report = AuditReport("n4-formula", {"n": n, "m": m})
    for code, C in class_censuses(n, m, n - 1, workers=workers, max_n=max_n):
        G = code.graph()
        if not terminals_universal(G):
            continue
        report.checked += 1
        expected = n4_closed_form(n, m, count_p3(G.hat()))
        if C.N(4) != expected:
            report.violations.append(f"{code}: N_4={C.N(4)} but closed form gives {expected}")
    return report


def same_class(G: TwoTerminalGraph, code: str | CanonicalCode) -> bool:
    if isinstance(code, str):
        code = CanonicalCode.parse(code)
    return canonical_code(G) == code
