"""Compare the numba and pure-numpy kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both backends are called directly, so one process times both; the
OLSE_DISABLE_NUMBA flag only picks which one the solvers use.
"""
import argparse
import time

import numpy as np

from olse import _accel, kernels


def best_of(fn, repeat):
    fn()  # compile / warm caches
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases(rng):
    n = 2000
    lists = [sorted(set(rng.integers(0, n, 3).tolist())) for _ in range(n)]
    ptr, idx = kernels.lists_to_csr(lists)
    yield "dp_table 2000x2000", (n, n, ptr, idx), kernels.dp_table_numpy, kernels.dp_table_numba

    n_g, n_h = 40, 40
    lists = [sorted(set(rng.integers(0, n_h, 2).tolist())) for _ in range(n_g)]
    edges = [(i, j) for i in range(n_g) for j in range(i + 1, n_g) if rng.random() < 0.04]
    ap, ai = kernels.edges_to_csr(n_g, edges)
    member = kernels.membership_matrix(lists, n_h)
    colors = rng.integers(0, 2, (4096, n_g)).astype(np.uint8)
    yield ("masked dp 4096 colourings, 40x40", (colors, ap, ai, member),
           kernels.batch_masked_dp_numpy, kernels.batch_masked_dp_numba)

    m = 60
    h_by_g = rng.permutation(m).astype(np.int64)
    edges = [(i, j) for i in range(m) for j in range(i + 1, m) if rng.random() < 0.03]
    cp, ci = kernels.edges_to_csr(m, edges)
    colors = rng.integers(0, 2, (4096, m)).astype(np.uint8)
    yield ("separation MIS 4096 colourings, 60 segments", (colors, cp, ci, h_by_g),
           kernels.batch_separation_mis_numpy, kernels.batch_separation_mis_numba)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(f"default backend: {_accel.BACKEND}")
    print(f"{'kernel':<46}{'numpy':>10}{'numba':>10}{'speedup':>9}")
    for name, argv, np_fn, nb_fn in cases(np.random.default_rng(args.seed)):
        t_np = best_of(lambda: np_fn(*argv), args.repeat)
        if nb_fn is None:
            print(f"{name:<46}{t_np:>9.4f}s{'n/a':>10}{'':>9}")
            continue
        assert np.array_equal(np_fn(*argv), nb_fn(*argv)), name
        t_nb = best_of(lambda: nb_fn(*argv), args.repeat)
        print(f"{name:<46}{t_np:>9.4f}s{t_nb:>9.4f}s{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
