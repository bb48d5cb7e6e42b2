"""Benchmark the compiled polynomial kernel against the pure-Python fallback.

Drives both kernel modules directly on raw term maps, so the numbers are
independent of which kernel lmc.arith selected at import.  Workloads mirror
the two hot paths of the verification harness: truncated products of dense
random polynomials, and the bracket-style storm of linear-form products
with accumulation.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import time
from fractions import Fraction

from lmc import _kernel_py

try:
    from lmc import _kernel_cy
except ImportError:
    _kernel_cy = None

from lmc.arith import all_monomials


def rand_terms(rnd, nv, cap, density=0.8, bound=9):
    terms = {}
    for e in all_monomials(nv, cap):
        if rnd.random() < density:
            terms[e] = Fraction(rnd.randint(1, bound), rnd.randint(1, 4))
    return terms


def workload_products(kernel, polys, cap):
    acc = {}
    for a, b in zip(polys, polys[1:]):
        acc = kernel.padd(acc, kernel.pmul(a, b, cap))
    return acc


def workload_bracket_storm(kernel, polys, nv, cap):
    acc = {}
    for p in polys:
        for j in range(nv):
            acc = kernel.padd(acc, kernel.pmulvar(p, j, cap))
        acc = kernel.psub(acc, kernel.pscale(p, Fraction(1, 2)))
    return acc


def time_workload(fn, repeat):
    best = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    kernels = [("python", _kernel_py)]
    if _kernel_cy is not None:
        kernels.append(("cython", _kernel_cy))
    else:
        print("compiled kernel not available; timing the fallback only")

    scenarios = []
    rnd = random.Random(1234)
    for nv, cap, count in [(3, 4, 60), (4, 5, 40)]:
        polys = [rand_terms(rnd, nv, cap) for _ in range(count)]
        scenarios.append(
            (f"products nv={nv} cap={cap}", lambda k, p=polys, c=cap: workload_products(k, p, c))
        )
        scenarios.append(
            (
                f"bracket storm nv={nv} cap={cap}",
                lambda k, p=polys, n=nv, c=cap: workload_bracket_storm(k, p, n, c),
            )
        )

    print(f"{'scenario':<28} " + " ".join(f"{name:>12}" for name, _ in kernels) + "  speedup")
    for label, workload in scenarios:
        times = []
        results = []
        for _name, kernel in kernels:
            best, result = time_workload(lambda k=kernel: workload(k), args.repeat)
            times.append(best)
            results.append(result)
        assert all(r == results[0] for r in results[1:]), "kernels disagree"
        speedup = times[0] / times[-1] if len(times) > 1 else 1.0
        cells = " ".join(f"{t * 1000:>9.2f} ms" for t in times)
        print(f"{label:<28} {cells}  {speedup:>6.2f}x")


if __name__ == "__main__":
    main()
