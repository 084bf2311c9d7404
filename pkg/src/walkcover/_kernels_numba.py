"""Compiled kernels; same signatures and results as ``_kernels_numpy``."""

from __future__ import annotations

import numpy as np
from numba import njit

REACHED, EXHAUSTED, STUCK = 0, 1, 2

_opts = dict(cache=True, nogil=True)


@njit(**_opts)
def vecmat(indptr, indices, data, v):
    out = np.zeros(v.shape[0])
    for i in range(v.shape[0]):
        vi = v[i]
        if vi == 0.0:
            continue
        for t in range(indptr[i], indptr[i + 1]):
            out[indices[t]] += vi * data[t]
    return out


@njit(**_opts)
def _vecmat_into(indptr, indices, data, v, out):
    out[:] = 0.0
    for i in range(v.shape[0]):
        vi = v[i]
        if vi == 0.0:
            continue
        for t in range(indptr[i], indptr[i + 1]):
            out[indices[t]] += vi * data[t]


@njit(**_opts)
def absorbed_start_mass(indptr, indices, data, v0, start_states, need, max_steps):
    masses = np.empty(max_steps)
    v = v0.copy()
    w = np.empty_like(v)
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
        _vecmat_into(indptr, indices, data, v, w)
        v, w = w, v
    return masses, EXHAUSTED


@njit(**_opts)
def simulate_batch(nbr, cdf, start, d0, uniforms, need):
    runs, steps = uniforms.shape
    n_nodes = nbr.shape[0]
    degree = cdf.shape[1]
    returned_count = np.zeros(steps, dtype=np.int64)
    distinct_sum = np.zeros(steps + 1, dtype=np.int64)
    distinct_sumsq = np.zeros(steps + 1, dtype=np.int64)
    cover = np.full(runs, -1, dtype=np.int64)
    visited = np.zeros(n_nodes, dtype=np.bool_)

    for run in range(runs):
        visited[:] = False
        visited[start] = True
        node = start
        heading = d0
        distinct = 1
        returned = False
        if 1.0 >= need:
            cover[run] = 0
        distinct_sum[0] += 1
        distinct_sumsq[0] += 1
        for k in range(steps):
            u = uniforms[run, k]
            nxt = degree - 1
            for j in range(degree):
                if u < cdf[heading, j]:
                    nxt = j
                    break
            heading = nxt
            node = nbr[node, heading]
            if not visited[node]:
                visited[node] = True
                distinct += 1
            if node == start:
                returned = True
            if returned:
                returned_count[k] += 1
            distinct_sum[k + 1] += distinct
            distinct_sumsq[k + 1] += distinct * distinct
            if cover[run] < 0 and distinct >= need:
                cover[run] = k + 1
    return returned_count, distinct_sum, distinct_sumsq, cover
