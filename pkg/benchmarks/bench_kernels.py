"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat N]

Also times a full Example 3 fit (alpha=0.9) under whichever backend the
current process selected; rerun with GLSHP_DISABLE_NUMBA=1 to compare.
"""

import argparse
import timeit

import numpy as np

from glshp import _kernels as k
from glshp.pipeline import solve
from glshp.problems import example3


def cases(rng):
    n_terms, n_pts = 40, 200_000
    mono = (
        rng.normal(size=n_terms),
        rng.uniform(0, 4, n_terms),
        rng.uniform(0, 4, n_terms),
        rng.uniform(0, 1, n_pts),
        rng.uniform(0, 1, n_pts),
    )
    a, b = rng.uniform(0, 6, 400), rng.uniform(0, 6, 400)
    gram = (a, b, a, b)
    exps = rng.integers(0, 5, (120, 4))
    poly = (exps, rng.normal(size=120), rng.uniform(-3, 3, (5000, 4)))
    return {
        "eval_monomials": (k.eval_monomials_numpy, k.eval_monomials_numba, mono),
        "gram_matrix": (k.gram_matrix_numpy, k.gram_matrix_numba, gram),
        "poly_eval": (k.poly_eval_numpy, k.poly_eval_numba, poly),
    }


def best(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    opts = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"numba available: {k.HAVE_NUMBA}, active backend: {k.BACKEND}")
    print(f"{'kernel':<16}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}{'max |diff|':>14}")
    for name, (f_np, f_nb, args) in cases(rng).items():
        f_nb(*args)  # compile outside the timed region
        diff = float(np.max(np.abs(f_np(*args) - f_nb(*args))))
        t_np, t_nb = best(f_np, args, opts.repeat), best(f_nb, args, opts.repeat)
        print(f"{name:<16}{1e3 * t_np:>12.2f}{1e3 * t_nb:>12.2f}{t_np / t_nb:>10.1f}{diff:>14.2e}")
    spec = example3(0.9, 0.9)
    solve(spec)
    t = best(lambda: solve(spec), (), max(1, opts.repeat // 2))
    print(f"example 3 fit ({k.BACKEND}): {1e3 * t:.1f} ms")


if __name__ == "__main__":
    main()
