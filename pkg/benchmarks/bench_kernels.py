"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--n 4096] [--repeat 50]

Times each kernel on random data, then a full 512-step integrator run with
each backend swapped in.
"""
import argparse
import timeit

import numpy as np

from diracpulse import DiracParams, chi_from_current, free_propagate, make_gaussian_packet, make_grid
from diracpulse import _kernels_np, kernels
from diracpulse.evolve import IntegratorConfig, RampSpec, run


def kernel_cases(n, rng):
    U = rng.normal(size=n) + 1j * rng.normal(size=n)
    V = rng.normal(size=n) + 1j * rng.normal(size=n)
    k = rng.normal(size=n) * 5
    a, b = rng.normal(size=n), rng.normal(size=n)
    return {
        "propagate_modes": (U, V, k, 1.0, 0.3),
        "h0_modes": (U, V, k, 1.0),
        "project_modes": (U, V, k, 1.0, 1),
        "potential_half_step": (U, V, a, b, 0.01),
        "gauge_phase": (U, V, a, 1.0),
        "densities": (U, V, 1.0),
    }


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=4096)
    ap.add_argument("--repeat", type=int, default=50)
    args = ap.parse_args(argv)

    backends = {"numpy": _kernels_np}
    if kernels.compiled_available():
        backends["cython"] = kernels._compiled
    else:
        print("compiled extension not built; timing numpy only")

    rng = np.random.default_rng(0)
    cases = kernel_cases(args.n, rng)
    print(f"per-kernel best of {args.repeat}, n = {args.n} (microseconds)")
    print(f"{'kernel':>22} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for name, call_args in cases.items():
        times = [best(lambda m=m: getattr(m, name)(*call_args), args.repeat) * 1e6
                 for m in backends.values()]
        speed = f"{times[0] / times[1]:8.2f}x" if len(times) == 2 else ""
        print(f"{name:>22} " + " ".join(f"{t:10.1f}" for t in times) + f"  {speed}")

    p = DiracParams()
    grid = make_grid(args.n, 64.0)
    psi = make_gaussian_packet(grid, 1.0, 4.0, 32.0, "+", p)
    chi = chi_from_current(free_propagate(psi, 1.0, p), 8.0, 1.0, p)
    cfg = IntegratorConfig(512)
    saved = kernels._impl
    results = {}
    try:
        for label, module in backends.items():
            kernels._impl = module
            results[label] = run(psi, chi, RampSpec(1.0), cfg, p)
            t = best(lambda: run(psi, chi, RampSpec(1.0), cfg, p), max(1, args.repeat // 10))
            print(f"integrator 512 steps [{label}]: {t * 1e3:.1f} ms")
    finally:
        kernels._impl = saved
    if len(results) == 2:
        diff = (results["numpy"] - results["cython"]).norm()
        print(f"backend difference after 512 steps: {diff:.2e}")


if __name__ == "__main__":
    main()
