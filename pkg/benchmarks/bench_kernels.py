"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--campaign]

Kernel timings call both modules directly in one process.  ``--campaign``
additionally times the default campaign end to end in a subprocess per
backend, selected with OSTROWSKI_PURE_PYTHON.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from ostrowski import _pykernels
from ostrowski.funcmodel import FunctionSpec

try:
    from ostrowski import _ckernels
except ImportError:
    _ckernels = None


def workloads():
    exp = FunctionSpec.parse("exp")
    sqrt = FunctionSpec.parse("pow_s:0.5")
    xs = np.linspace(0.0, 1.0, 21)
    return {
        "simpson exp, tol 1e-11": lambda k: k.simpson_family(
            exp.code, exp.params, 0, False, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1e-11, 60),
        "simpson t^2 |f''| of sqrt": lambda k: k.simpson_family(
            sqrt.code, sqrt.params, 2, True, 1.0, 2.0, 0.0, 0.75, 0.25, 0.0, 1.0, 1e-11, 60),
        "lattice 21^3, |exp''|^2": lambda k: k.lattice_extrema(
            exp.code, exp.params, 2, True, 2.0, 0.5, xs, xs),
        "scan 10001 points": lambda k: k.scan_abs(sqrt.code, sqrt.params, 2, 0.25, 1.0, 10001),
    }


def bench(repeat: int) -> None:
    print(f"{'workload':32s} {'python ms':>11s} {'cython ms':>11s} {'speedup':>8s}")
    for name, fn in workloads().items():
        py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=repeat)) * 1e3
        if _ckernels is None:
            print(f"{name:32s} {py:11.3f} {'n/a':>11s}")
            continue
        cy = min(timeit.repeat(lambda: fn(_ckernels), number=1, repeat=repeat)) * 1e3
        print(f"{name:32s} {py:11.3f} {cy:11.3f} {py / cy:7.1f}x")


def bench_campaign() -> None:
    code = ("import time; from ostrowski import run_campaign, VerificationCampaign, BACKEND; "
            "t = time.perf_counter(); r = run_campaign(VerificationCampaign()); "
            "print(BACKEND, r.summary['cells'], f'{time.perf_counter() - t:.2f}')")
    print(f"\n{'default campaign':32s} {'cells':>11s} {'seconds':>11s}")
    for pure in ("1", "0"):
        env = {**os.environ, "OSTROWSKI_PURE_PYTHON": pure}
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        backend, cells, secs = out.stdout.split()
        print(f"{backend:32s} {cells:>11s} {secs:>11s}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--campaign", action="store_true")
    args = ap.parse_args()
    bench(args.repeat)
    if args.campaign:
        bench_campaign()


if __name__ == "__main__":
    main()
