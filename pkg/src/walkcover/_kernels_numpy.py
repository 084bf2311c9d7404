"""Reference kernels in plain numpy.

Accumulation order matches the compiled kernels so both paths return
bit-identical results.
"""

from __future__ import annotations

import numpy as np

REACHED, EXHAUSTED, STUCK = 0, 1, 2


def vecmat(indptr, indices, data, v):
    """Row vector `v` times the CSR matrix (indptr, indices, data)."""
    counts = np.diff(indptr)
    weights = np.repeat(v, counts) * data
    return np.bincount(indices, weights=weights, minlength=v.shape[0])


def absorbed_start_mass(indptr, indices, data, v0, start_states, need, max_steps):
    """Iterate the absorbed chain, recording the mass parked on the start states.

    Entry k of the returned array is the start mass of the k-th distribution,
    the one whose complement adds to the covered count at step k + 1.
    Stops once the running count 1 + sum(1 - mass) reaches `need`.
    """
    masses = np.empty(max_steps)
    v = v0.copy()
    covered = 1.0
    for k in range(max_steps):
        m = 0.0
        for s in start_states:
            m += v[s]
        masses[k] = m
        covered += 1.0 - m
        if covered >= need:
            return masses[: k + 1], REACHED
        if 1.0 - m == 0.0:
            return masses[: k + 1], STUCK
        v = vecmat(indptr, indices, data, v)
    return masses, EXHAUSTED


def simulate_batch(nbr, cdf, start, d0, uniforms, need):
    """Run one agent per row of `uniforms` (one draw per step).

    Returns (returned_count[k], distinct_sum[k], distinct_sumsq[k], cover_time[run]).
    returned_count[k] counts runs back at `start` within k + 1 steps;
    distinct statistics are indexed by step count, 0..steps.
    """
    runs, steps = uniforms.shape
    n_nodes = nbr.shape[0]
    idx = np.arange(runs)
    node = np.full(runs, start, dtype=np.int64)
    heading = np.full(runs, d0, dtype=np.int64)
    visited = np.zeros((runs, n_nodes), dtype=np.bool_)
    visited[:, start] = True
    distinct = np.ones(runs, dtype=np.int64)
    returned = np.zeros(runs, dtype=np.bool_)
    cover = np.full(runs, 0 if need <= 1.0 else -1, dtype=np.int64)

    returned_count = np.zeros(steps, dtype=np.int64)
    distinct_sum = np.zeros(steps + 1, dtype=np.int64)
    distinct_sumsq = np.zeros(steps + 1, dtype=np.int64)
    distinct_sum[0] = runs
    distinct_sumsq[0] = runs

    for k in range(steps):
        heading = np.argmax(uniforms[:, k, None] < cdf[heading], axis=1)
        node = nbr[node, heading]
        fresh = ~visited[idx, node]
        visited[idx, node] = True
        distinct += fresh
        returned |= node == start
        returned_count[k] = returned.sum()
        distinct_sum[k + 1] = distinct.sum()
        distinct_sumsq[k + 1] = (distinct * distinct).sum()
        newly = (cover < 0) & (distinct >= need)
        cover[newly] = k + 1
    return returned_count, distinct_sum, distinct_sumsq, cover
