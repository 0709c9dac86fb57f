"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Both backends are called through ``sosmt.kernels`` with an explicit
``backend`` argument, so one process measures both. Outputs are checked
for agreement before timing.
"""

import argparse
import timeit

import numpy as np

from sosmt import kernels


def fronts(rng, n):
    f1 = np.sort(rng.random(n))
    return np.column_stack([f1, np.sort(rng.random(n))[::-1]])


def cases(rng):
    yield "nondominated_ranks", "n=100 (one population)", kernels.nondominated_ranks, (rng.random((100, 2)),)
    yield "nondominated_ranks", "n=200", kernels.nondominated_ranks, (rng.random((200, 2)),)
    yield "crowding_distance", "n=100", kernels.crowding_distance, (fronts(rng, 100),)
    yield "hv2d", "n=50", lambda P, backend: kernels.hv2d(P, (1, 1), backend), (fronts(rng, 50),)
    yield "hv2d", "n=5000", lambda P, backend: kernels.hv2d(P, (1, 1), backend), (fronts(rng, 5000),)
    yield "mean_min_distance", "50x50, d=4", kernels.mean_min_distance, (rng.random((50, 4)), rng.random((50, 4)))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if kernels.BACKEND != "cython":
        print("compiled kernels not available; only the fallback can be timed")
    backends = ["python", "cython"] if kernels.BACKEND == "cython" else ["python"]
    rng = np.random.default_rng(0)

    print(f"{'kernel':<20}{'case':<24}" + "".join(f"{b + ' (us)':>14}" for b in backends) + f"{'speedup':>10}")
    for name, label, fn, inputs in cases(rng):
        outs = [np.asarray(fn(*inputs, backend=b)) for b in backends]
        for o in outs[1:]:
            assert np.allclose(o, outs[0], rtol=0, atol=1e-12), name
        times = []
        for b in backends:
            t = timeit.Timer(lambda: fn(*inputs, backend=b))
            number, _ = t.autorange()
            best = min(t.repeat(repeat=args.repeat, number=number)) / number
            times.append(best * 1e6)
        speed = f"{times[0] / times[-1]:9.1f}x" if len(times) > 1 else ""
        print(f"{name:<20}{label:<24}" + "".join(f"{t:14.1f}" for t in times) + speed)


if __name__ == "__main__":
    main()
