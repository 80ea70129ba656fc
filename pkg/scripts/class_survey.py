"""UMRTTG status for every class T_(n,m) over a range of n and d."""
import argparse
import math

from distrel.search import umrttg_decide


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, nargs="+", default=[4, 5, 6])
    parser.add_argument("--d", type=int, nargs="+", default=[1, 2, 3, 4])
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    print("n,m,d,class_size,status,winners")
    for n in args.n:
        for d in args.d:
            for m in range(1, math.comb(n, 2) + 1):
                rep = umrttg_decide(n, m, d, workers=args.workers)
                print(f"{n},{m},{d},{rep.class_size},{rep.status},{' '.join(rep.winners)}")


if __name__ == "__main__":
    main()
