"""Compiled vs pure-Python eigen kernels on random symmetric matrices.

    python benchmarks/bench_kernels.py [--sizes 40,80,160] [--repeat 3]

Prints one line per (kernel, size) with the best wall time of each backend,
the speedup and the largest eigenvalue difference between the two.
"""

import argparse
import time

import numpy as np

from confosc import _kernels_py

try:
    from confosc import _kernels_ext
except ImportError:  # extension not built
    _kernels_ext = None


def _best(fn, A, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(A)
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--sizes", default="40,80,160")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _kernels_ext is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<8} {'n':>5} {'cython s':>10} {'python s':>10} {'speedup':>8} {'max |dw|':>10}")
    for n in (int(s) for s in args.sizes.split(",")):
        M = rng.standard_normal((n, n))
        A = (M + M.T) / 2
        for name in ("jacobi", "ql"):
            fext = _kernels_ext.jacobi_eigh if name == "jacobi" else _kernels_ext.tridiag_ql_eigh
            fpy = _kernels_py.jacobi_eigh if name == "jacobi" else _kernels_py.tridiag_ql_eigh
            t_ext, r_ext = _best(fext, A, args.repeat)
            t_py, r_py = _best(fpy, A, 1 if name == "jacobi" and n > 80 else args.repeat)
            dw = np.max(np.abs(np.sort(r_ext[0]) - np.sort(r_py[0])))
            print(f"{name:<8} {n:>5} {t_ext:>10.4f} {t_py:>10.4f} {t_py / t_ext:>8.1f} {dw:>10.1e}")


if __name__ == "__main__":
    main()
