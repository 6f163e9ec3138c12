"""Compare the numba and numpy kernel backends.

    python benchmarks/bench_kernels.py --sizes 8 12 16 --repeat 3
"""
import argparse
import random
import time

from chirotree import _kernels
from chirotree.chirotope import find_axiom_violation
from chirotree.generate import random_chirotope
from chirotree.triangulations import enumerate_triangulations


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 12, 16, 20])
    ap.add_argument("--enum-size", type=int, default=10)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    cases = {n: random_chirotope(n, rng)[0] for n in args.sizes}
    enum_chi = random_chirotope(args.enum_size, rng)[0]
    small = min(cases, key=lambda n: n)

    rows = []
    for backend in ("numba", "numpy"):
        _kernels.use_backend(backend)
        # warm-up so compilation is not timed
        find_axiom_violation(cases[small])
        _kernels.all_modules(cases[small].table)
        enumerate_triangulations(random_chirotope(6, random.Random(0))[0])
        for n, chi in cases.items():
            rows.append((backend, f"axioms n={n}", timed(lambda: find_axiom_violation(chi), args.repeat)))
            if n <= 16:
                rows.append((backend, f"all_modules n={n}",
                             timed(lambda: _kernels.all_modules(chi.table), args.repeat)))
        rows.append((backend, f"triangulations n={args.enum_size}",
                     timed(lambda: enumerate_triangulations(enum_chi), args.repeat)))

    by_task = {}
    for backend, task, t in rows:
        by_task.setdefault(task, {})[backend] = t
    print(f"{'task':<24}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for task, t in by_task.items():
        print(f"{task:<24}{t['numba']:>12.5f}{t['numpy']:>12.5f}{t['numpy'] / t['numba']:>10.1f}")


if __name__ == "__main__":
    main()
