"""Compare the compiled and pure-Python cycle kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Times ``has_cycle_flat`` on the workloads the verifier actually runs (3x3 block
witnesses, mid-size composed grids, a large grid), and the 2x3 exhaustive block
sweep end to end under each backend.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from gridcycle import _pykernels

try:
    from gridcycle import _ckernels
except ImportError:
    _ckernels = None


def workloads():
    rng = random.Random(0)
    for rows, cols, label in [(3, 3, "3x3 block"), (7, 7, "7x7 composed"), (40, 40, "40x40")]:
        grids = ["".join(rng.choice("ab") for _ in range(rows * cols)) for _ in range(200)]
        yield label, rows, cols, grids


def bench_kernel(fn, rows, cols, grids, repeat):
    def run():
        for g in grids:
            fn(g, rows, cols)

    return min(timeit.repeat(run, number=10, repeat=repeat)) / (10 * len(grids))


SWEEP = (
    "import time; from gridcycle.verifier import verify_block_exhaustive; from gridcycle.blocks import BlockKind;"
    "from gridcycle.kernels import BACKEND; t=time.perf_counter(); r=verify_block_exhaustive(BlockKind.B2x3,'both');"
    "print(BACKEND, r.summary(), f'{time.perf_counter()-t:.3f}s')"
)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = [("python", _pykernels.has_cycle_flat)]
    if _ckernels is not None:
        backends.append(("cython", _ckernels.has_cycle_flat))
    else:
        print("compiled kernel not built; only the fallback is timed")

    print(f"{'workload':<14} " + " ".join(f"{name:>12}" for name, _ in backends) + "   speedup")
    for label, rows, cols, grids in workloads():
        times = [bench_kernel(fn, rows, cols, grids, args.repeat) for _, fn in backends]
        speedup = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else ""
        print(f"{label:<14} " + " ".join(f"{t * 1e6:10.2f}us" for t in times) + f"  {speedup}")

    print("\nexhaustive 2x3 block sweep (mode both):")
    for pure in (True, False):
        env = dict(os.environ)
        if pure:
            env["GRIDCYCLE_PURE_PYTHON"] = "1"
        else:
            env.pop("GRIDCYCLE_PURE_PYTHON", None)
        out = subprocess.run([sys.executable, "-c", SWEEP], env=env, capture_output=True, text=True, check=True)
        print("  " + out.stdout.strip())


if __name__ == "__main__":
    main()
