"""Compare the compiled path-search kernel against the plain numpy fallback.

Builds one dense highway snapshot and sweeps every victim radar through
both backends, so the numbers reflect the real per-snapshot workload of
interferer counting. The compiled path is warmed once before timing to
keep jit compilation out of the loop.

    python benchmarks/bench_kernels.py --density 150 --length 4000
"""

import argparse
import time

from fmcwsim import accel, interferers
from fmcwsim.scenario import HighwayConfig, front_layout, generate_highway


def run_backend(pack, d_max, backend, repeats):
    n = len(pack.radars)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for vi in range(n):
            pack.find_paths(vi, d_max, 10.0, False, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--density", type=float, default=150.0,
                    help="vehicles per km across all lanes")
    ap.add_argument("--length", type=float, default=4000.0,
                    help="highway length in m")
    ap.add_argument("--d-max", type=float, default=2000.0,
                    help="maximum equivalent distance in m")
    ap.add_argument("--repeats", type=int, default=3,
                    help="timed repetitions per backend, best of")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    cfg = HighwayConfig(length_m=args.length, density_veh_km=args.density,
                        seed=args.seed)
    snap = generate_highway(cfg)[0]
    pack = interferers._ScenePack(snap, front_layout(), None)
    n = len(pack.radars)
    print("snapshot: %d vehicles, %d victim radars, d_max %.0f m"
          % (len(snap.vehicles), n, args.d_max))

    if not accel.NUMBA_ENABLED:
        print("compiled backend unavailable (%s); timing numpy only"
              % accel.active_backend())
        t = run_backend(pack, args.d_max, "numpy", args.repeats)
        print("numpy:  %8.1f ms  (%.3f ms per victim)" % (t * 1e3, t / n * 1e3))
        return

    pack.find_paths(0, args.d_max, 10.0, False, backend="numba")  # jit warm-up
    t_nb = run_backend(pack, args.d_max, "numba", args.repeats)
    t_np = run_backend(pack, args.d_max, "numpy", args.repeats)
    print("numba:  %8.1f ms  (%.3f ms per victim)" % (t_nb * 1e3, t_nb / n * 1e3))
    print("numpy:  %8.1f ms  (%.3f ms per victim)" % (t_np * 1e3, t_np / n * 1e3))
    print("speedup: %.1fx" % (t_np / t_nb))


if __name__ == "__main__":
    main()
