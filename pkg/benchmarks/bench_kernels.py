"""Time the numba and numpy kernel backends side by side.

    python benchmarks/bench_kernels.py [--trunc 20000] [--repeat 5]

Each workload is run once per backend to warm up (numba compiles on first
call), then timed; results from both backends must agree.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from falsetheta import _kernels
from falsetheta.theta import ThetaSpec, false_theta_psi


def workloads(trunc: int, rng: np.random.Generator) -> dict:
    m = (1 << 31) - 1
    a = rng.integers(0, m, trunc + 1, dtype=np.int64)
    b = rng.integers(0, m, trunc + 1, dtype=np.int64)
    psi = false_theta_psi(ThetaSpec("false_theta", -1, 5, 1, 1), trunc)
    s = np.array([c % 4 for c in psi.coeffs], dtype=np.int64)
    c5 = _kernels.reciprocal_mod(s, trunc, 4, 1)
    return {
        "mul_mod (dense, m=2^31-1)": lambda: _kernels.mul_mod(a, b, trunc, m),
        "reciprocal_mod (c5 mod 4)": lambda: _kernels.reciprocal_mod(s, trunc, 4, 1),
        "zero_classes (A <= 64)": lambda: [_kernels.zero_classes(c5, A) for A in range(1, 65)],
    }


def _same(x, y) -> bool:
    if isinstance(x, list):
        return all(np.array_equal(u, v) for u, v in zip(x, y))
    return np.array_equal(x, y)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trunc", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    backends = ["numpy"] + (["numba"] if _kernels.numba is not None else [])
    if len(backends) == 1:
        print("numba not installed; timing numpy only")
    jobs = workloads(args.trunc, np.random.default_rng(0))
    original = _kernels.backend()
    print(f"trunc={args.trunc}, best of {args.repeat}")
    print(f"{'workload':<30}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    try:
        for name, fn in jobs.items():
            times, outputs = [], []
            for b in backends:
                _kernels.use_backend(b)
                outputs.append(fn())
                times.append(min(timeit.repeat(fn, number=1, repeat=args.repeat)))
            if len(outputs) == 2 and not _same(*outputs):
                raise SystemExit(f"backends disagree on {name}")
            speed = f"{times[0] / times[1]:>9.1f}x" if len(times) == 2 else ""
            print(f"{name:<30}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times) + speed)
    finally:
        _kernels.use_backend(original)


if __name__ == "__main__":
    main()
