"""Run every named suite and write one JSON report per suite."""
import argparse
import json
from pathlib import Path

from distrel.suites import DEFAULT_SEED, SUITES, run_suite


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("results/suites"))
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("names", nargs="*", default=list(SUITES))
    args = parser.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    failed = []
    for name in args.names:
        result = run_suite(name, args.seed, args.workers)
        print(f"{result.summary()} ({result.seconds:.1f}s)")
        (args.out / f"{name}.json").write_text(json.dumps(result.to_json(), indent=2) + "\n")
        if not result.passed:
            failed.append(name)
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
