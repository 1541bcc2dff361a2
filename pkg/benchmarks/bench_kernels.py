"""Benchmark the compiled kernels against the numpy fallback.

Workloads mirror the real hot paths: the exhaustive bad-value sweep
(line_value_stats on large polynomial batches), exact incidence counting
on tabled product groups, and repeated pairwise set operations in F_p.

Run:  python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from fflab._kernels import numpy_impl
from fflab import _kernels
from fflab.expanders import line_tables
from fflab.field import build_field

try:
    from fflab._kernels import _ckernels
except ImportError:
    _ckernels = None


def timeit(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_line_stats(impl, q=7, batch=200_000):
    ctx = build_field(q)
    lines = np.ascontiguousarray(line_tables(ctx))
    rng = np.random.default_rng(0)
    values = rng.integers(0, q, size=(batch, q * q)).astype(np.uint8)
    return timeit(impl.line_value_stats, values, lines)


def bench_incidence(impl, n=169, size=85, reps=300):
    rng = np.random.default_rng(1)
    combine = rng.integers(0, n, size=(n, n)).astype(np.int32)
    pmask = (rng.random(n) < 0.3).astype(np.uint8)
    xs = rng.integers(0, n, size=size)
    ys = rng.integers(0, n, size=size)

    def loop():
        total = 0
        for _ in range(reps):
            total += impl.incidence_count(xs, ys, combine, pmask)
        return total

    return timeit(loop)


def bench_pairwise(impl, p=1009, reps=400):
    rng = np.random.default_rng(2)
    a = rng.integers(0, p, size=820)
    b = rng.integers(0, p, size=40)

    def loop():
        out = None
        for _ in range(reps):
            out = impl.pairwise_zp(a, b, p, 0)
        return out

    return timeit(loop)


def main():
    print(f"active backend: {_kernels.BACKEND}")
    impls = [("numpy", numpy_impl)]
    if _ckernels is not None:
        impls.append(("compiled", _ckernels))
    else:
        print("compiled extension not built; showing the fallback only")

    benches = [
        ("line_value_stats q=7 B=200k", bench_line_stats),
        ("incidence_count n=169 x300", bench_incidence),
        ("pairwise_zp p=1009 x400", bench_pairwise),
    ]
    print(f"{'kernel':<32} " + " ".join(f"{name:>12}" for name, _ in impls) +
          ("      speedup" if len(impls) == 2 else ""))
    for label, bench in benches:
        times = []
        outputs = []
        for _, impl in impls:
            t, out = bench(impl)
            times.append(t)
            outputs.append(out)
        if len(outputs) == 2:
            a, b = outputs
            if isinstance(a, tuple):
                same = all(np.array_equal(x, y) for x, y in zip(a, b))
            else:
                same = np.array_equal(a, b) if isinstance(a, np.ndarray) else a == b
            assert same, f"backend outputs differ on {label}"
        line = f"{label:<32} " + " ".join(f"{t:>11.4f}s" for t in times)
        if len(times) == 2:
            line += f"   {times[0] / times[1]:>9.2f}x"
        print(line)


if __name__ == "__main__":
    main()
