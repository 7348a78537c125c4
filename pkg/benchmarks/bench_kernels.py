"""Time the compiled and pure Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--n 6] [--repeat 3]

Each kernel runs on identical data under both backends; outputs are compared
so a speedup is only reported for matching results.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from gromovclass import kernels
from gromovclass.enumerate import subtree_masks


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def enumerate_all(backend, n):
    return np.concatenate([backend.enumerate_codes(n, m) for m in subtree_masks(n)])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--sample", type=int, default=20000,
                    help="structures fed to the invariant and canonical-form kernels")
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled backend not built; only the Python timings are shown")

    reference = enumerate_all(backends["python"], args.n)
    rng = np.random.default_rng(0)
    pick = rng.choice(len(reference), size=min(args.sample, len(reference)), replace=False)
    sample = np.ascontiguousarray(reference[np.sort(pick)])

    tasks = {
        "enumerate": lambda b: enumerate_all(b, args.n),
        "invariants": lambda b: b.invariant_table(sample, args.n),
        "canonical": lambda b: b.canonical_codes(sample, args.n),
    }
    print(f"n={args.n}: {len(reference)} allowable structures, sample of {len(sample)}")
    print(f"{'kernel':12} " + " ".join(f"{name:>10}" for name in backends) + "   speedup  same")
    for task, fn in tasks.items():
        results = {name: best_of(lambda b=b: fn(b), args.repeat) for name, b in backends.items()}
        cells = " ".join(f"{results[name][0]:>9.3f}s" for name in backends)
        if "cython" in results:
            speed = results["python"][0] / results["cython"][0]
            same = np.array_equal(results["python"][1], results["cython"][1])
            print(f"{task:12} {cells}   {speed:7.1f}x  {'yes' if same else 'NO'}")
        else:
            print(f"{task:12} {cells}")


if __name__ == "__main__":
    main()
