from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
import hypothesis.strategies as st

from distrel.census import CensusVector, census, evaluate_reliability
from distrel.errors import DimensionMismatch
from distrel.graph import TwoTerminalGraph, construct_A, construct_G_counterexample
from distrel.polycmp import (
    CROSSING,
    DOMINATED,
    DOMINATES,
    EQUAL,
    ReliabilityPolynomial,
    compare_on_unit_interval,
    difference_sign_profile,
    isolate_unit_roots,
    lexicographic_keys,
    poly_eval,
    squarefree,
)

x = sympy.Symbol("x")


def _cv(counts, d=2):
    return CensusVector(d, len(counts), tuple(counts))


def _sympy_roots_in_unit(p):
    poly = sympy.Poly(list(reversed(p)), x)
    return sorted({r for r in sympy.real_roots(poly) if 0 < r < 1}, key=float)


@settings(max_examples=80)
@given(st.lists(st.integers(-30, 30), min_size=2, max_size=9))
def test_root_isolation_matches_sympy(p):
    if not any(p[1:]):
        return
    core = squarefree(p)
    intervals = isolate_unit_roots(core)
    roots = _sympy_roots_in_unit(p)
    assert len(intervals) == len(roots)
    for (lo, hi), r in zip(intervals, roots):
        if lo == hi:
            assert r == sympy.Rational(lo.numerator, lo.denominator)
        else:
            assert lo < r < hi


def test_exact_midpoint_roots():
    # (2x - 1)(4x - 1)(4x - 3)
    p = [3, -22, 48, -32]
    intervals = isolate_unit_roots(p)
    assert len(intervals) == 3
    assert (Fraction(1, 2), Fraction(1, 2)) in intervals


def test_equal_and_trivial_domination():
    C = _cv([1, 6, 10, 5, 1], 3)
    assert compare_on_unit_interval(C, C).kind == EQUAL
    G = TwoTerminalGraph(3, ((0, 1), (0, 2)))
    H = TwoTerminalGraph(3, ((0, 2), (1, 2)))
    assert census(G, 2).counts == (1, 1) and census(H, 2).counts == (0, 1)
    verdict = compare_on_unit_interval(census(G, 2), census(H, 2))
    assert verdict.kind == DOMINATES
    assert verdict.near_one_winner == "G" and verdict.near_zero_winner == "G"


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        compare_on_unit_interval(_cv([1, 2]), _cv([1, 2, 3]))
    with pytest.raises(DimensionMismatch):
        compare_on_unit_interval(_cv([1, 2], 2), _cv([1, 2], 3))


def test_lexicographic_keys():
    a, b = _cv([1, 6, 10, 5, 1]), _cv([0, 6, 10, 5, 1])
    assert lexicographic_keys(a)[0] > lexicographic_keys(b)[0]
    assert lexicographic_keys(_cv([0, 2, 3])) == lexicographic_keys(_cv([0, 2, 3]))
    p, q = _cv([1, 4, 6]), _cv([1, 5, 5])
    assert lexicographic_keys(q)[0] > lexicographic_keys(p)[0]
    assert lexicographic_keys(p)[1] > lexicographic_keys(q)[1]


def test_crossing_between_counterexample_and_reference():
    G = construct_G_counterexample(11, 20)
    H = construct_A(11, 1)
    verdict = compare_on_unit_interval(census(G, 4), census(H, 4))
    assert verdict.kind == CROSSING
    assert verdict.near_one_winner == "H"
    assert verdict.interval[0] < verdict.interval[1]
    RG, RH = census(G, 4), census(H, 4)
    assert evaluate_reliability(RG, verdict.witness_rho) < evaluate_reliability(RH, verdict.witness_rho)
    assert evaluate_reliability(RG, verdict.positive_rho) > evaluate_reliability(RH, verdict.positive_rho)
    assert evaluate_reliability(RG, Fraction(1, 2)) > evaluate_reliability(RH, Fraction(1, 2))


def test_polynomial_boundary_values():
    for G in (construct_A(5, 1), TwoTerminalGraph(4, ((0, 2), (2, 3), (1, 3)))):
        C = census(G, 3)
        R = ReliabilityPolynomial(C)
        assert R(0) == C.N(G.m)
        assert R(1) == 0
        for rho in (Fraction(1, 5), Fraction(2, 3)):
            assert R(rho) == evaluate_reliability(C, rho)


def _sample_signs(C_G, C_H):
    diff = ReliabilityPolynomial(C_G) - ReliabilityPolynomial(C_H)
    values = [poly_eval(diff, Fraction(k, 1024)) for k in range(1025)]
    return {(v > 0) - (v < 0) for v in values}


@settings(max_examples=150)
@given(st.integers(2, 14), st.integers(2, 4), st.data())
def test_verdicts_survive_dense_sampling(m, d, data):
    graphs = []
    for _ in range(2):
        n = data.draw(st.integers(4, 7).filter(lambda k: k * (k - 1) // 2 >= m))
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        edges = data.draw(st.lists(st.sampled_from(pairs), min_size=m, max_size=m, unique=True))
        graphs.append(TwoTerminalGraph(n, tuple(sorted(edges))))
    C_G, C_H = census(graphs[0], d), census(graphs[1], d)
    verdict = compare_on_unit_interval(C_G, C_H)
    signs = _sample_signs(C_G, C_H)
    if verdict.kind == DOMINATES:
        assert -1 not in signs
    elif verdict.kind == DOMINATED:
        assert 1 not in signs
    elif verdict.kind == EQUAL:
        assert signs == {0}
    else:
        assert evaluate_reliability(C_G, verdict.witness_rho) < evaluate_reliability(C_H, verdict.witness_rho)
        assert evaluate_reliability(C_G, verdict.positive_rho) > evaluate_reliability(C_H, verdict.positive_rho)
    if {-1, 1} <= signs:
        assert verdict.kind == CROSSING
    mirrored = compare_on_unit_interval(C_H, C_G)
    assert mirrored.kind == verdict.mirror().kind
    assert mirrored.near_one_winner == verdict.mirror().near_one_winner
    assert mirrored.near_zero_winner == verdict.mirror().near_zero_winner
    # near-end winners follow the lexicographic keys
    (one_g, zero_g), (one_h, zero_h) = lexicographic_keys(C_G), lexicographic_keys(C_H)
    expected_one = "G" if one_g > one_h else "H" if one_h > one_g else "tie"
    assert verdict.near_one_winner == expected_one
    expected_zero = "G" if zero_g > zero_h else "H" if zero_h > zero_g else "tie"
    assert verdict.near_zero_winner == expected_zero


@given(st.lists(st.integers(0, 40), min_size=3, max_size=8), st.lists(st.integers(0, 40), min_size=3, max_size=8))
def test_synthetic_crossings_are_certified(a, b):
    k = min(len(a), len(b))
    C_G, C_H = _cv(a[:k]), _cv(b[:k])
    verdict = compare_on_unit_interval(C_G, C_H)
    diff = ReliabilityPolynomial(C_G) - ReliabilityPolynomial(C_H)
    if verdict.kind == CROSSING:
        lo, hi = verdict.interval
        assert poly_eval(diff, lo) * poly_eval(diff, hi) < 0
    elif verdict.kind in (DOMINATES, DOMINATED) and any(diff):
        samples, signs, _ = difference_sign_profile(diff)
        assert len(set(signs)) == 1


def test_verdict_json_uses_fractions():
    verdict = compare_on_unit_interval(_cv([0, 0, 3, 1]), _cv([0, 1, 0, 1]))
    obj = verdict.to_json()
    assert set(obj) >= {"kind", "witness_rho", "near_one_winner", "near_zero_winner"}
    if obj["witness_rho"] is not None:
        assert "/" in obj["witness_rho"] and "." not in obj["witness_rho"]
