"""Structured vs dense timing over a range of factor orders.

    python scripts/bench_sweep.py --l 8 --orders 32 64 128 256 --trials 3
"""

import argparse

from hprodspec.cli import run_bench


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--l", type=int, default=8, help="number of factors")
    parser.add_argument("--orders", type=int, nargs="+", default=[32, 64, 128, 256])
    parser.add_argument("--trials", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"{'n':>6} {'dim':>6} {'structured ms':>14} {'dense ms':>10} {'ratio':>7} {'max diff':>10}")
    for n in args.orders:
        r = run_bench(n, args.l, args.trials, args.seed)
        print(f"{n:>6} {n * args.l:>6} {r['structured_ms']:>14.1f} {r['oracle_ms']:>10.1f} "
              f"{r['ratio']:>7.2f} {r['max_abs_diff']:>10.2e}")


if __name__ == "__main__":
    main()
