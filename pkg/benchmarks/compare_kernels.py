"""Time the compiled and pure-Python kernels on the same synthetic data.

    python3 benchmarks/compare_kernels.py --transactions 20000 --minsup 0.02

Both kernels must produce identical itemsets; the script exits 1 if not.
"""

import argparse
import sys
import time

from hiermine import kernels
from hiermine.miner import MiningConfig
from hiermine.multilevel import mine_level
from hiermine.synth import generate


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--transactions", type=int, default=20_000)
    p.add_argument("--minsup", type=float, default=0.02)
    p.add_argument("--levels", default="1,2,3")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    names = kernels.available()
    if "cython" not in names:
        print("compiled kernel not built; only the Python fallback is available", file=sys.stderr)
    data = generate(n_transactions=args.transactions, seed=args.seed)
    print(f"{args.transactions} transactions, minsup {args.minsup:g}, best of {args.repeats}")
    print("level\titemsets\t" + "\t".join(f"{n}_s" for n in names) + "\tspeedup")
    ok = True
    for level in (int(x) for x in args.levels.split(",")):
        config = MiningConfig(args.minsup, level=level)
        best, results = {}, {}
        for name in names:
            kernel = kernels.get(name)
            times = []
            for _ in range(args.repeats):
                t0 = time.perf_counter()
                results[name] = mine_level(data, config, kernel=kernel)
                times.append(time.perf_counter() - t0)
            best[name] = min(times)
        if len({frozenset(r.items()) for r in results.values()}) != 1:
            print(f"level {level}: kernels disagree", file=sys.stderr)
            ok = False
        speedup = (f"{best['python'] / best['cython']:.1f}x" if "cython" in best else "-")
        print(f"{level}\t{len(results['python'])}\t"
              + "\t".join(f"{best[n]:.3f}" for n in names) + f"\t{speedup}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
