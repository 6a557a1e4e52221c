"""Run the acceptance suite and write the JSON report."""
import argparse
import time
from pathlib import Path

from hopfcyc.reports import dumps
from hopfcyc.verify import TITLES, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--level", choices=["quick", "full"], default="quick")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", default="acceptance.json")
    args = ap.parse_args()
    t = time.time()
    res = run_suite(args.level, threads=args.threads)
    Path(args.out).write_text(dumps(res))
    for i, r in res["criteria"].items():
        print(f"{i:2d} {'PASS' if r['ok'] else 'FAIL'}  {TITLES[i]}")
    print(f"{time.time() - t:.1f}s, report in {args.out}")


if __name__ == "__main__":
    main()
