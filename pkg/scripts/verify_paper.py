"""Replay every fixture and run the full theorem suite; write the machine report.

    python scripts/verify_paper.py --output report.json
"""
import argparse
import sys

from orelab.harness import HarnessConfig, default_workers, verify_paper


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dmax", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=default_workers())
    ap.add_argument("--output", help="machine report path (timings omitted for byte-stable output)")
    args = ap.parse_args()
    report = verify_paper(HarnessConfig(dmax=args.dmax, seed=args.seed, workers=args.workers))
    print(report.to_text())
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(report.to_json(timings=False) + "\n")
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
