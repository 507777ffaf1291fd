"""Compare the compiled and pure-numpy split kernels.

Times both backends directly on the kernel functions, then end to end
through random-forest training. Run from the repository root:

    python benchmarks/bench_kernels.py [--rows 4000] [--repeats 5]
"""

import argparse
import time

import numpy as np

from cricpred.kernels import _split_py

try:
    from cricpred.kernels import _split as _split_c
except ImportError:
    _split_c = None


def time_kernel(fn, cases, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for values, crit, min_leaf in cases:
            fn(values, crit, min_leaf)
        best = min(best, time.perf_counter() - start)
    return best


def make_cases(rows, n_cases, seed):
    rng = np.random.default_rng(seed)
    cases = []
    for _ in range(n_cases):
        values = np.sort(rng.normal(size=rows))
        labels = rng.integers(0, 2, rows).astype(np.float64)
        cases.append((values, labels, 1))
    return cases


def time_forest(rows, repeats, pure):
    import importlib
    import os

    os.environ["CRICPRED_PURE_PYTHON"] = "1" if pure else "0"
    import cricpred.kernels
    importlib.reload(cricpred.kernels)
    import cricpred.models.tree
    importlib.reload(cricpred.models.tree)
    import cricpred.models.ensemble
    importlib.reload(cricpred.models.ensemble)
    from cricpred.models.ensemble import train_random_forest

    rng = np.random.default_rng(0)
    X = rng.normal(size=(rows, 15))
    y = (X[:, 0] + X[:, 1] > 0).astype(np.float64)
    hp = {"n_trees": 25, "min_leaf": 1, "max_depth": None, "bootstrap": True}
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        train_random_forest(X, y, hp, 0)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rows", type=int, default=4000)
    parser.add_argument("--cases", type=int, default=200)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    if _split_c is None:
        print("compiled backend not built; only timing the numpy fallback")

    cases = make_cases(args.rows, args.cases, seed=1)
    print(f"kernel microbenchmark: {args.cases} columns x {args.rows} rows, "
          f"best of {args.repeats}")
    py_gini = time_kernel(_split_py.best_split_gini, cases, args.repeats)
    print(f"  best_split_gini  numpy    {py_gini * 1e3:8.1f} ms")
    if _split_c is not None:
        c_gini = time_kernel(_split_c.best_split_gini, cases, args.repeats)
        print(f"  best_split_gini  compiled {c_gini * 1e3:8.1f} ms "
              f"({py_gini / c_gini:.2f}x)")
    targets = [(v, np.random.default_rng(2).normal(size=len(v)), m)
               for v, _, m in cases]
    py_sse = time_kernel(_split_py.best_split_sse, targets, args.repeats)
    print(f"  best_split_sse   numpy    {py_sse * 1e3:8.1f} ms")
    if _split_c is not None:
        c_sse = time_kernel(_split_c.best_split_sse, targets, args.repeats)
        print(f"  best_split_sse   compiled {c_sse * 1e3:8.1f} ms "
              f"({py_sse / c_sse:.2f}x)")

    print(f"end to end: 25-tree forest on {args.rows} x 15, best of "
          f"{args.repeats}")
    t_py = time_forest(args.rows, args.repeats, pure=True)
    print(f"  forest training  numpy    {t_py:8.2f} s")
    if _split_c is not None:
        t_c = time_forest(args.rows, args.repeats, pure=False)
        print(f"  forest training  compiled {t_c:8.2f} s ({t_py / t_c:.2f}x)")


if __name__ == "__main__":
    main()
