"""Where does the uniqueness argument break for F4?

Runs the certifier over an evenly spread sample of reduced words of the
longest element and prints the histogram of the first failing prefix.
Pass ``--k`` to change the sample size (``--k 0`` scans every word).
"""
import argparse
import time

from flagcalc.scan import f4_scan


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--k", type=int, default=10_000)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    t = time.perf_counter()
    if args.k:
        rep = f4_scan("sample", k=args.k, workers=args.workers)
    else:
        rep = f4_scan("full", workers=args.workers)
    dt = time.perf_counter() - t
    print(f"{rep.processed} of {rep.total_words} words in {dt:.1f}s: "
          f"certified {rep.certified}, failed {rep.failed}, budget exceeded {rep.budget_exceeded}")
    top = max(rep.fail_index.values(), default=1)
    for m in sorted(rep.fail_index):
        n = rep.fail_index[m]
        print(f"  prefix {m:2d}: {n:8d} {'#' * max(1, 60 * n // top)}")


if __name__ == "__main__":
    main()
