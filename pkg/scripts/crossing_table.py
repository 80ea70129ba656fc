"""Tabulate R_G and R_H for the d >= 4 crossing pair over a grid of exact rho.

Writes CSV rows ``m,d,rho,R_G,R_H,sign`` where sign is the sign of R_G - R_H.
"""
import argparse
import csv
import sys
from fractions import Fraction

from distrel.census import census, evaluate_reliability
from distrel.graph import construct_G_counterexample
from distrel.polycmp import compare_on_unit_interval
from distrel.search import crossing_reference


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=11)
    parser.add_argument("--m", type=int, nargs="+", default=[20, 24])
    parser.add_argument("--d", type=int, nargs="+", default=[4, 5])
    parser.add_argument("--steps", type=int, default=16, help="grid k/steps for k = 0..steps")
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    out = csv.writer(sys.stdout)
    out.writerow(["m", "d", "rho", "R_G", "R_H", "sign"])
    for m in args.m:
        G = construct_G_counterexample(args.n, m)
        label, H = crossing_reference(args.n, m)
        for d in args.d:
            C_G, C_H = census(G, d, workers=args.workers), census(H, d, workers=args.workers)
            verdict = compare_on_unit_interval(C_G, C_H)
            print(f"# m={m} d={d} reference={label} verdict={verdict.kind} "
                  f"roots_in_(0,1)={verdict.roots_in_unit_interval}", file=sys.stderr)
            for k in range(args.steps + 1):
                rho = Fraction(k, args.steps)
                a, b = evaluate_reliability(C_G, rho), evaluate_reliability(C_H, rho)
                out.writerow([m, d, f"{rho.numerator}/{rho.denominator}",
                              f"{a.numerator}/{a.denominator}", f"{b.numerator}/{b.denominator}",
                              (a > b) - (a < b)])


if __name__ == "__main__":
    main()
