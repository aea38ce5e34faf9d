"""Compare the compiled and pure-numpy relaxation backends.

Runs minplus_closure on seeded random symmetric matrices at several
sizes, times each backend after a warm-up pass, and confirms the two
produce bitwise identical results. Invoke as

    python3 benchmarks/bench_kernels.py --sizes 50,100,200,400
"""
import argparse
import time

import numpy as np

from fmetric import _kernels


def bench_once(dist: np.ndarray, backend: str, repeats: int) -> tuple:
    _kernels.set_backend(backend)
    out = _kernels.minplus_closure(dist)  # warm pass, also the comparison copy
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        _kernels.minplus_closure(dist)
        best = min(best, time.perf_counter() - t0)
    return out, best


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="50,100,200,400", help="comma-separated matrix sizes")
    ap.add_argument("--repeats", type=int, default=3, help="timed runs per size (best is kept)")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]

    backends = ["numpy"]
    if _kernels.HAS_NUMBA:
        _kernels.set_backend("numba")
        _kernels.warmup()
        backends.append("numba")
    else:
        print("numba unavailable; timing the numpy backend only")

    rng = np.random.default_rng(args.seed)
    prior = _kernels.active_backend()
    print(f"{'size':>6} {'numpy (s)':>12} {'numba (s)':>12} {'speedup':>9}  identical")
    try:
        for n in sizes:
            raw = rng.uniform(0.1, 10.0, (n, n))
            dist = np.triu(raw, 1)
            dist = dist + dist.T
            results = {}
            times = {}
            for b in backends:
                results[b], times[b] = bench_once(dist, b, args.repeats)
            if "numba" in results:
                same = np.array_equal(results["numpy"], results["numba"])
                ratio = times["numpy"] / times["numba"] if times["numba"] > 0 else float("inf")
                print(
                    f"{n:>6} {times['numpy']:>12.4f} {times['numba']:>12.4f} "
                    f"{ratio:>8.1f}x  {'yes' if same else 'NO'}"
                )
                if not same:
                    return 1
            else:
                print(f"{n:>6} {times['numpy']:>12.4f} {'-':>12} {'-':>9}  -")
    finally:
        _kernels.set_backend(prior)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
