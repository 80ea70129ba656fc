"""Named, seeded verification suites; each returns a :class:`SuiteResult`."""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .census import census, evaluate_unreliability, irrelevant_edges
from .classes import CanonicalCode, canonical_code, enumerate_codes
from .graph import (
    TwoTerminalGraph,
    complete_ttg,
    construct_A,
    construct_H,
    pad_isolated,
)
from .search import (
    NEAR1,
    audit_near0_structure,
    lmrttg_filtration,
    umrttg_decide,
    verify_crossing_witness,
    verify_N4_formula,
)
from .transforms import in_Tstar, normalize_to_Tstar

DEFAULT_SEED = 20240611
SAMPLE_RHOS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


@dataclass
class SuiteResult:
    name: str
    seed: int
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.failures

    def check(self, ok: bool, message: str) -> None:
        self.checked += 1
        if not ok:
            self.failures.append(message)

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict} {self.name}: {self.checked} checks, {len(self.failures)} failures"

    def to_json(self) -> dict:
        return {"suite": self.name, "seed": self.seed, "passed": self.passed,
                "checked": self.checked, "failures": self.failures, "notes": self.notes}


def _codes(graphs) -> set[CanonicalCode]:
    return {canonical_code(G) for G in graphs}


def _common_count(G: TwoTerminalGraph) -> int:
    return (G.adjacency[G.s] & G.adjacency[G.t]).bit_count()


def _characterization(result: SuiteResult, d: int, workers: int,
                      expected_winner: Callable[[TwoTerminalGraph, int, int], bool]) -> None:
    for n in range(2, 6):
        for m in range(1, math.comb(n, 2) + 1):
            report = umrttg_decide(n, m, d, workers=workers)
            expected = {str(c) for c in enumerate_codes(n, m) if expected_winner(c.graph(), n, m)}
            result.check(report.status == "exists" and set(report.winners) == expected,
                         f"n={n} m={m}: status={report.status}, winners={sorted(report.winners)}, "
                         f"expected={sorted(expected)}")


def suite_d1(seed: int, workers: int = 1) -> SuiteResult:
    result = SuiteResult("d1-characterization", seed)
    _characterization(result, 1, workers, lambda G, n, m: G.has_edge(G.s, G.t))
    return result


def suite_d2(seed: int, workers: int = 1) -> SuiteResult:
    result = SuiteResult("d2-characterization", seed)

    def contains_double_star(G: TwoTerminalGraph, n: int, m: int) -> bool:
        # A_(n',0) is st plus n'-2 common neighbours of the terminals
        n_prime = min((m + 3) // 2, n)
        return G.has_edge(G.s, G.t) and _common_count(G) >= n_prime - 2

    _characterization(result, 2, workers, contains_double_star)
    return result


def suite_d3_uniqueness(seed: int, workers: int = 1) -> SuiteResult:
    result = SuiteResult("d3-uniqueness-n6", seed)
    for m in range(5, 10):
        report = umrttg_decide(6, m, 3, workers=workers)
        target = str(canonical_code(construct_H(6, m)))
        result.check(report.status == "exists" and report.winners == [target],
                     f"m={m}: status={report.status}, winners={report.winners}, H={target}")
    return result


def suite_d4_crossing(seed: int, workers: int = 1) -> SuiteResult:
    result = SuiteResult("d4-crossing", seed)
    for m in (20, 24):
        for d in (4, 5):
            rep = verify_crossing_witness(11, m, d, Fraction(1, 2), workers=workers)
            result.check(rep.strict_inequality,
                         f"m={m} d={d}: R_G={rep.R_counterexample} not above R_H={rep.R_reference}")
            result.check(rep.reference_wins_near_1,
                         f"m={m} d={d}: {rep.reference} does not beat G near 1")
            result.notes.append(f"m={m} d={d}: R_G={rep.R_counterexample} > R_{rep.reference}="
                                f"{rep.R_reference}; n'={rep.n_prime}")
    return result


def _U(G: TwoTerminalGraph, rho: Fraction, d: int = 3) -> Fraction:
    return evaluate_unreliability(census(G, d), rho)


def suite_um_recurrences(seed: int, workers: int = 1) -> SuiteResult:
    result = SuiteResult("um-recurrences", seed)
    n = 8
    U = {(m, rho): _U(construct_H(n, m), rho) for m in range(5, 14) for rho in SAMPLE_RHOS}
    for m in range(5, 12):
        for rho in SAMPLE_RHOS:
            result.check(U[m + 2, rho] == (2 * rho - rho * rho) * U[m, rho],
                         f"m={m} rho={rho}: U_(m+2)={U[m + 2, rho]} vs (2rho-rho^2)U_m")
            result.check(U[m + 1, rho] <= U[m, rho],
                         f"m={m} rho={rho}: U_(m+1)={U[m + 1, rho]} > U_m={U[m, rho]}")
    # the two K_5-based rivals of H at m = 9, 10
    k5 = pad_isolated(complete_ttg(5), n)
    k5_minus = TwoTerminalGraph(n, tuple(e for e in k5.edges if e != (3, 4)))
    for rho in SAMPLE_RHOS:
        result.check(U[9, rho] < _U(k5_minus, rho), f"rho={rho}: U_9 not below K5-e")
        result.check(U[10, rho] < _U(k5, rho), f"rho={rho}: U_10 not below K5")
    return result


def random_ttg(rng: random.Random, n: int, m: int) -> TwoTerminalGraph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return TwoTerminalGraph(n, tuple(sorted(rng.sample(pairs, m))))


def suite_coefficient_identities(seed: int, workers: int = 1, samples: int = 500) -> SuiteResult:
    result = SuiteResult("coefficient-identities", seed)
    rng = random.Random(seed)
    for k in range(samples):
        n = rng.randint(2, 7)
        m = rng.randint(0, min(16, math.comb(n, 2)))
        G = random_ttg(rng, n, m)
        d = rng.randint(1, max(n - 1, 1))
        tag = f"sample {k} (n={n}, m={m}, d={d}, edges={list(G.edges)})"
        a = census(G, d, "subset-enum")
        b = census(G, d, "path-inclusion-exclusion")
        result.check(a == b, f"{tag}: backends disagree")
        full = census(G, max(n - 1, 1))
        result.check(a.counts[:d] == full.counts[:d], f"{tag}: prefix differs from unconstrained")
        for e in sorted(irrelevant_edges(G, d)):
            R = census(G.without_edge(e), d)
            expected = [R.N(i - 1) + (R.N(i) if i < m else 0) for i in range(1, m + 1)]
            result.check(list(a.counts) == expected, f"{tag}: deletion identity fails at edge {G.edges[e]}")
    for n in range(5, 9):
        for m in range(5, 2 * n - 2):
            H = construct_H(n, m)
            result.check(census(H, 3).counts == census(H, n - 1).counts,
                         f"H_({n},{m}): d=3 census differs from unconstrained")
    return result


def suite_near0(seed: int, workers: int = 1) -> SuiteResult:
    result = SuiteResult("near0-structure", seed)
    for m in (13, 14, 15):
        for d in (3, 4):
            rep = audit_near0_structure(6, m, d, workers=workers)
            result.check(rep.passed, f"m={m} d={d}: {rep.violations[:5]}")
    return result


def suite_n4(seed: int, workers: int = 1) -> SuiteResult:
    result = SuiteResult("n4-formula", seed)
    for m in range(16, 20):
        rep = verify_N4_formula(7, m, workers=workers)
        result.check(rep.passed and rep.checked > 0,
                     f"m={m}: checked={rep.checked}, {rep.violations[:5]}")
    return result


def suite_transform_certificates(seed: int, workers: int = 1, samples: int = 200) -> SuiteResult:
    result = SuiteResult("transform-certificates", seed)
    rng = random.Random(seed)
    done = 0
    while done < samples:
        G = random_ttg(rng, 6, rng.randint(5, 9))
        if in_Tstar(G):
            continue
        done += 1
        H, cert = normalize_to_Tstar(G)
        result.check(in_Tstar(H) and cert.verified and H.m == G.m,
                     f"edges={list(G.edges)}: in T*={in_Tstar(H)}, verified={cert.verified}")
    return result


def suite_lmrttg_known(seed: int, workers: int = 1) -> SuiteResult:
    result = SuiteResult("lmrttg-known", seed)
    for n in (6, 7):
        for m in range(5, 3 * n - 5):
            if m <= 2 * n - 3:
                target, ds = construct_H(n, m), sorted({n - 1, 4})
            else:
                target, ds = construct_A(n, m - 2 * n + 3), [n - 1]
            for d in ds:
                got = _codes(lmrttg_filtration(n, m, d, NEAR1, workers=workers))
                want = {canonical_code(target)}
                result.check(got == want, f"n={n} m={m} d={d}: survivors {sorted(map(str, got))}, "
                                          f"expected {sorted(map(str, want))}")
    return result


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "d1-characterization": suite_d1,
    "d2-characterization": suite_d2,
    "d3-uniqueness-n6": suite_d3_uniqueness,
    "d4-crossing": suite_d4_crossing,
    "um-recurrences": suite_um_recurrences,
    "coefficient-identities": suite_coefficient_identities,
    "near0-structure": suite_near0,
    "n4-formula": suite_n4,
    "transform-certificates": suite_transform_certificates,
    "lmrttg-known": suite_lmrttg_known,
}


def run_suite(name: str, seed: int = DEFAULT_SEED, workers: int = 1) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    start = time.perf_counter()
    result = SUITES[name](seed, workers)
    result.seconds = time.perf_counter() - start
    return result
