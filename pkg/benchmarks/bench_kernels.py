"""Time the numpy and numba kernel backends on identical inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each row reports the best-of-N wall time per backend and checks that both
backends return the same integers.
"""

import argparse
import time

import numpy as np

from instanton_f2 import _kernels as k


def best_of(fn, args, repeat):
    fn(*args)  # warm-up; for numba this includes compilation
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases(rng):
    rows = rng.integers(0, 2**62, size=2000, dtype=np.int64)
    basis = rng.integers(0, 2**40, size=16, dtype=np.int64)
    vecs = rng.integers(0, 2**30, size=200_000, dtype=np.int64)
    images = rng.integers(0, 2**30, size=30, dtype=np.int64)
    n = 1_000_000
    p = rng.integers(-500, 500, size=n)
    q = rng.integers(1, 40, size=n)
    triv = rng.integers(0, 2, size=n).astype(bool)
    return [
        ("gf2_rank 2000x62", k.gf2_rank_np, getattr(k, "gf2_rank_nb", None), (rows,)),
        ("span_elements 2^16", k.span_elements_np, getattr(k, "span_elements_nb", None), (basis,)),
        ("apply_linear 2e5 vecs", k.apply_linear_np, getattr(k, "apply_linear_nb", None), (vecs, images)),
        ("dim_f2_grid 1e6 slopes", k.dim_f2_grid_np, getattr(k, "dim_f2_grid_nb", None), (p, q, triv, 8, -4)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<26}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for name, f_np, f_nb, inputs in cases(rng):
        t_np, out_np = best_of(f_np, inputs, args.repeat)
        if f_nb is None:
            print(f"{name:<26}{t_np * 1e3:>12.3f}{'n/a':>12}{'':>10}")
            continue
        t_nb, out_nb = best_of(f_nb, inputs, args.repeat)
        assert np.array_equal(np.asarray(out_np), np.asarray(out_nb)), name
        print(f"{name:<26}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
