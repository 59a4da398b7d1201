"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Reports per-call times for the simplex min-norm solver (m = 3..8) and the
nondominated filter (K = 100..1000), plus a full multistart solve.
"""

import argparse
import timeit

import numpy as np

from nmmg import SolverConfig, kernels
from nmmg.harness.front import multistart, start_points
from nmmg.problems import get_entry
from nmmg.criticality import DEFAULT_MAX_ITER, RELATIVE_GAP, ROUNDOFF_GAP

backends = {"python": kernels.python_backend}
if kernels.compiled_backend is not None:
    backends["cython"] = kernels.compiled_backend


def bench(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.2:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)

    print(f"{'kernel':<28}" + "".join(f"{b:>14}" for b in backends) + f"{'speedup':>10}")
    for m in (3, 5, 8):
        Gs = []
        for _ in range(20):
            J = rng.uniform(-1, 1, size=(m, 6))
            Gs.append(J @ J.T)
        times = {}
        for name, mod in backends.items():
            def call(mod=mod):
                for G in Gs:
                    scale = max(1.0, float(np.max(np.diag(G))))
                    mod.min_norm_simplex(G, 1e-10 * scale, RELATIVE_GAP, ROUNDOFF_GAP * scale,
                                         DEFAULT_MAX_ITER)
            times[name] = bench(call, args.repeat) / len(Gs)
        row(f"min_norm_simplex m={m}", times)

    for K in (100, 300, 1000):
        P = rng.uniform(size=(K, 3))
        times = {name: bench(lambda mod=mod: mod.nondominated_mask(P), args.repeat)
                 for name, mod in backends.items()}
        row(f"nondominated_mask K={K}", times)

    entry = get_entry("quad3", 5)
    X0 = start_points(entry.problem, 20, 0)
    cfg = SolverConfig(algorithm="avg")
    times = {}
    for name in backends:
        kernels.set_backend(name)
        times[name] = bench(lambda: multistart(entry.problem, cfg, X0), 1)
    row("solve quad3-n5 x20 starts", times)


def row(label, times):
    line = f"{label:<28}" + "".join(f"{times[b] * 1e6:>12.1f}us" for b in backends)
    if "cython" in times:
        line += f"{times['python'] / times['cython']:>9.1f}x"
    print(line)


if __name__ == "__main__":
    main()
