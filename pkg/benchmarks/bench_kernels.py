"""Compare the compiled and pure-Python kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each row reports the best wall time over the repeats and the speedup.  Results
are also checked for equality, so a benchmark run doubles as a smoke test.
"""

import argparse
import timeit

import numpy as np

from coarsecolor import kernels
from coarsecolor.generators import cycle_graph, dl_graph, regular_tree_ball


def cases():
    tree = regular_tree_ball(3, 12)
    cyc = cycle_graph(20_000)
    dl = dl_graph(3, 3, 8)
    rot = tuple((v + 1) % cyc.n for v in range(cyc.n))
    srcs = np.arange(0, cyc.n, 37, dtype=np.int32)
    return [
        (f"bfs tree-ball(3,12) n={tree.n}", "bfs_distances", (tree.indptr, tree.indices, 0)),
        (f"bfs dl(3,3,8) n={dl.n}", "bfs_distances", (dl.indptr, dl.indices, 0)),
        (f"multi-source bfs C_{cyc.n}, {len(srcs)} sources", "multi_source_bfs", (cyc.indptr, cyc.indices, srcs)),
        (f"is_automorphism rotation of C_{cyc.n}", "is_automorphism", (rot, cyc.indptr, cyc.indices)),
        ("min_product_search (3, 6, 33)", "min_product_search", (3, 6, 33)),
        ("min_product_search (4, 6, 40)", "min_product_search", (4, 6, 40)),
    ]


def same(a, b):
    if isinstance(a, tuple) and isinstance(b, tuple):
        return len(a) == len(b) and all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled extension not built; only the Python kernels are available")
    print(f"{'case':52s} " + " ".join(f"{k:>10s}" for k in impls) + "   speedup")
    for label, fn, argv in cases():
        times, results = {}, {}
        for name, mod in impls.items():
            f = getattr(mod, fn)
            results[name] = f(*argv)
            times[name] = min(timeit.repeat(lambda: f(*argv), number=1, repeat=args.repeat))
        ok = all(same(results["python"], r) for r in results.values())
        speed = f"{times['python'] / times['cython']:8.1f}x" if "cython" in times else ""
        cols = " ".join(f"{times[k] * 1e3:8.2f}ms" for k in impls)
        print(f"{label:52s} {cols} {speed}{'' if ok else '  MISMATCH'}")


if __name__ == "__main__":
    main()
