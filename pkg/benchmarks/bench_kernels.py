"""Compare the compiled and numpy pair kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Times ``legendre_kernel`` (value + gradient) on random designs and a full
``construct`` run (t=7, n=24, 10 starts) under each backend.
"""
import argparse
import os
import subprocess
import sys
import timeit

from sphdes import _pykernels
from sphdes.sphere import random_design

try:
    from sphdes import _ckernels
except ImportError:
    _ckernels = None

CASES = [(24, 7), (100, 7), (100, 14), (400, 14), (1000, 20)]

CONSTRUCT = (
    "import time; from sphdes.construct import ConstructOptions, minimize; "
    "t0 = time.perf_counter(); o = minimize(ConstructOptions(t=7, n=24, starts=10)); "
    "print(f'{time.perf_counter() - t0:.3f} {o.residual:.2e}')"
)


def per_call(fn, X, t, repeat):
    number = max(1, int(2000 / X.shape[0]))
    return min(timeit.repeat(lambda: fn(X, t), number=number, repeat=repeat)) / number


def construct_time(pure: bool) -> str:
    env = dict(os.environ, SPHDES_PURE_PYTHON="1" if pure else "0")
    res = subprocess.run([sys.executable, "-c", CONSTRUCT], env=env, capture_output=True, text=True, check=True)
    return res.stdout.strip()


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled extension not built; only the numpy backend is available")
    print(f"{'n':>5} {'t':>3} {'numpy [ms]':>11} {'cython [ms]':>12} {'speed-up':>9}")
    for n, t in CASES:
        X = random_design(n, n).xyz
        py = per_call(_pykernels.legendre_kernel, X, t, args.repeat)
        if _ckernels is None:
            print(f"{n:>5} {t:>3} {1e3 * py:>11.3f} {'-':>12} {'-':>9}")
            continue
        cy = per_call(_ckernels.legendre_kernel, X, t, args.repeat)
        print(f"{n:>5} {t:>3} {1e3 * py:>11.3f} {1e3 * cy:>12.3f} {py / cy:>8.1f}x")
    print("\nconstruct t=7 n=24, 10 starts  [seconds, best residual]")
    print(f"  numpy : {construct_time(True)}")
    if _ckernels is not None:
        print(f"  cython: {construct_time(False)}")


if __name__ == "__main__":
    main()
