"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Both backends are imported directly, so the WALKCOVER_PURE_NUMPY flag is
irrelevant here. Results are checked for bit-identity before timing.
"""

import argparse
import time

import numpy as np

from walkcover import _kernels_numba as nb
from walkcover import _kernels_numpy as ref
from walkcover.grid import TorusGrid, neighbor_table
from walkcover.markov import absorbing_chain
from walkcover.movement import MovementModel
from walkcover.oracle import run_stream, sampling_table


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def coverage_case(size, p):
    grid = TorusGrid.torus(size)
    chain = absorbing_chain(grid, MovementModel.biased(p))
    M = chain.matrix
    args = (M.indptr, M.indices, M.data, chain.v0.entries,
            chain.indexing.node_states(chain.start), 0.99 * grid.N, 200 * grid.N * 8)
    return f"absorbed chain {size}x{size} p={p}", args, "absorbed_start_mass"


def simulation_case(runs, steps):
    grid = TorusGrid.torus(5)
    model = MovementModel.biased_random(0.5, 0.2)
    uniforms = np.stack([run_stream(0, i).random(steps) for i in range(runs)])
    args = (neighbor_table(grid), sampling_table(model, grid), 12, 0, uniforms, 0.99 * grid.N)
    return f"simulation 5x5 {runs} runs x {steps} steps", args, "simulate_batch"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    opts = ap.parse_args()

    cases = [coverage_case(5, 0.95), coverage_case(15, 0.5), coverage_case(15, 0.95),
             simulation_case(1024, 120), simulation_case(1024, 1000)]
    print(f"{'case':<42} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for name, args, fn_name in cases:
        f_ref, f_nb = getattr(ref, fn_name), getattr(nb, fn_name)
        out_ref, out_nb = f_ref(*args), f_nb(*args)  # also warms the JIT
        for a, b in zip(out_ref, out_nb):
            assert np.array_equal(a, b), f"{name}: backends disagree"
        t_ref = best_of(lambda: f_ref(*args), opts.repeat)
        t_nb = best_of(lambda: f_nb(*args), opts.repeat)
        print(f"{name:<42} {t_ref * 1e3:>8.1f}ms {t_nb * 1e3:>8.1f}ms {t_ref / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
