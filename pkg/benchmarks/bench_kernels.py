"""Time category validation with the compiled kernels against the pure-Python ones.

Run: python benchmarks/bench_kernels.py [--count N] [--seed S] [--repeat R]
"""
import argparse
import time

from omegacat import kernels
from omegacat.cylinders import gamma
from omegacat.fixtures import random_categories
from omegacat.validate import validate_category


def workload(seed: int, count: int):
    """Random categories plus their cylinder categories, which are larger."""
    cats = random_categories(seed, count, max_cells=12, max_cap=3)
    return cats + [gamma(C).category for C in cats]


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.compiled_backend is None:
        raise SystemExit("compiled kernels are not built; run pip install -e . --no-build-isolation")
    cats = workload(args.seed, args.count)
    cells = sum(sum(len(C.cells(k)) for k in range(C.cap + 1)) for C in cats)
    print(f"{len(cats)} categories, {cells} cells in total")
    times = {}
    for name, kb in (("python", kernels.python_backend), ("compiled", kernels.compiled_backend)):
        reports = [validate_category(C, backend=kb).to_json() for C in cats]
        times[name] = best_of(lambda kb=kb: [validate_category(C, backend=kb) for C in cats], args.repeat)
        times[name + "-reports"] = reports
        print(f"{name:>9}: {times[name]:.3f} s")
    assert times["python-reports"] == times["compiled-reports"], "backends disagree"
    print(f"  speedup: {times['python'] / times['compiled']:.1f}x, identical reports")


if __name__ == "__main__":
    main()
