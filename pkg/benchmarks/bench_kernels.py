"""Time the compiled and pure-Python kernel backends on the same workloads.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

from xilab.kernels import available_backends
from xilab.specfun import _em_coefficients

BERN = _em_coefficients(12)

WORKLOADS = {
    "zeta_em t=100": lambda m: m.zeta_em(0.5, 100.0, 220, BERN),
    "eta_borwein t=50": lambda m: m.eta_borwein(0.5, 50.0, 79),
    "bessel_k nu=0.75 x=0.01": lambda m: m.bessel_k_scaled(0.75, 0.01, 0.5, 1e-14, 10),
    "radial_dp45 lambda=2 kR=400": lambda m: m.radial_dp45(2.0, 1.0, 1e-6, 400.0, 1e-15, 1.5e-9, 1e-10, 1e-8),
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = available_backends()
    names = list(backends)
    print(f"{'workload':<30}" + "".join(f"{n:>14}" for n in names) + ("   speedup" if len(names) > 1 else ""))
    for label, fn in WORKLOADS.items():
        times = []
        for name in names:
            mod = backends[name]
            n = 1
            while timeit.timeit(lambda: fn(mod), number=n) < 0.05:
                n *= 2
            best = min(timeit.repeat(lambda: fn(mod), number=n, repeat=args.repeat)) / n
            times.append(best)
        row = f"{label:<30}" + "".join(f"{t * 1e3:>12.3f}ms" for t in times)
        if len(times) > 1:
            row += f"   {times[names.index('python')] / times[names.index('cython')]:7.1f}x"
        print(row)
    if len(names) == 1:
        print("compiled backend not built; only the Python kernels were timed")


if __name__ == "__main__":
    main()
