from fractions import Fraction

import numpy as np
import pytest

from conftest import RING_M_ABSORBED
from walkcover.coverage import (
    bias_model, coverage_trace, crossover_bias, default_max_steps, sweep_bias,
)
from walkcover.errors import DomainError
from walkcover.grid import TorusGrid
from walkcover.markov import absorbing_chain, start_mass, step
from walkcover.movement import MovementModel

UNIFORM = MovementModel.uniform()


def rational_coverage_time(target_count):
    # Exact arithmetic over the printed 1-D absorbing chain, start node 2.
    v = [Fraction(0), Fraction(1, 2), Fraction(0), Fraction(1, 2), Fraction(0)]
    C, k = Fraction(1), 0
    while C < target_count:
        assert k < 200, "target not reachable"
        k += 1
        C += 1 - v[2]
        v = [sum(v[i] * RING_M_ABSORBED[i][j] for i in range(5)) for j in range(5)]
    return k, C


def test_ring_fixture_coverage_time(ring5):
    k, C = rational_coverage_time(Fraction(3))
    assert (k, C) == (3, 3)
    res = coverage_trace(ring5, UNIFORM, s=2, target_fraction=0.6)
    assert res.coverage_time == k
    assert res.trace.C.tolist() == [1.0, 2.0, 2.5, 3.0]
    assert res.trace.gamma.tolist() == [1.0, 1.0, 0.5, 0.5]
    assert np.isnan(res.trace.start_mass[0])
    assert res.trace.start_mass[1:].tolist() == [0.0, 0.5, 0.5]


@pytest.mark.parametrize("target", [0.8, 0.9])
def test_ring_against_rational(ring5, target):
    k, _ = rational_coverage_time(Fraction(target).limit_denominator() * 5)
    assert coverage_trace(ring5, UNIFORM, s=2, target_fraction=target).coverage_time == k


def test_trace_matches_stepwise_chain(torus5):
    model = MovementModel.biased_random(0.4, 0.3)
    res = coverage_trace(torus5, model, s=6, d0=5)
    chain = absorbing_chain(torus5, model, 6, 5)
    v, C = chain.v0, 1.0
    for k in range(1, len(res.trace)):
        m = start_mass(v, chain.indexing, 6)
        C += 1.0 - m
        assert res.trace.start_mass[k] == m
        assert res.trace.C[k] == C
        v = step(v, chain.matrix)


@pytest.mark.parametrize("grid", [TorusGrid.ring(5), TorusGrid.torus(5), TorusGrid.torus(4, 7)],
                         ids=str)
def test_tiny_target_is_zero(grid):
    res = coverage_trace(grid, UNIFORM, target_fraction=1 / grid.N)
    assert res.coverage_time == 0
    assert res.trace.C.tolist() == [1.0]


def test_bad_arguments(torus5):
    for t in (0.0, -0.5, 1.01):
        with pytest.raises(DomainError):
            coverage_trace(torus5, UNIFORM, target_fraction=t)
    with pytest.raises(DomainError):
        coverage_trace(torus5, UNIFORM, max_steps=0)
    with pytest.raises(DomainError):
        sweep_bias(torus5, [])
    with pytest.raises(DomainError):
        sweep_bias(torus5, [0.5, 1.2])


def test_max_steps_exhausted(torus5):
    res = coverage_trace(torus5, UNIFORM, max_steps=10)
    assert res.coverage_time is None and res.truncated and not res.trace.stalled
    assert len(res.trace) == 11


def test_straight_walk_stalls(torus5):
    res = coverage_trace(torus5, MovementModel.biased(1.0))
    assert res.coverage_time is None and res.trace.stalled
    # five steps east close the loop through the start row
    assert res.trace.C[-1] == 5.0


def test_default_max_steps():
    assert default_max_steps(TorusGrid.torus(5)) == 200 * 25 * 8


def test_trace_monotone(torus5):
    for model in (UNIFORM, MovementModel.biased(0.0), MovementModel.biased(0.9),
                  MovementModel.biased_random(0.7, 0.1)):
        tr = coverage_trace(torus5, model).trace
        assert (np.diff(tr.C) > 0).all()
        assert (np.diff(tr.gamma) <= 0).all()
        assert tr.gamma[0] == 1 and ((tr.gamma >= 0) & (tr.gamma <= 1)).all()


@pytest.mark.parametrize("p", [0, 0.25, 0.5, 0.75, 1])
def test_model_reductions(torus5, p):
    full = coverage_trace(torus5, MovementModel.biased_random(p, 1.0)).trace
    uni = coverage_trace(torus5, UNIFORM).trace
    assert len(full) == len(uni)
    assert np.abs(full.C - uni.C).max() <= 1e-9
    none = coverage_trace(torus5, MovementModel.biased_random(p, 0.0), max_steps=2000).trace
    biased = coverage_trace(torus5, MovementModel.biased(p), max_steps=2000).trace
    assert np.array_equal(none.C, biased.C)


MODELS = [UNIFORM, MovementModel.biased(0.3), MovementModel.biased_random(0.8, 0.2)]


@pytest.mark.parametrize("model", MODELS, ids=lambda m: m.label())
@pytest.mark.parametrize("grid", [TorusGrid.torus(5), TorusGrid.torus(4, 5)], ids=str)
def test_start_node_invariance(grid, model):
    ref = coverage_trace(grid, model, max_steps=3000)
    for s in range(grid.N):
        res = coverage_trace(grid, model, s=s, max_steps=3000)
        assert res.coverage_time == ref.coverage_time
        assert np.abs(res.trace.C - ref.trace.C).max() <= 1e-9


# Heading classes related by a symmetry of the torus: rotations by 90 degrees
# need a square grid; reflections keep axis headings apart from diagonal ones.
ORBITS = {
    "5x5": [(0, 2, 4, 6), (1, 3, 5, 7)],
    "4x5": [(0, 4), (2, 6), (1, 3, 5, 7)],
}


@pytest.mark.parametrize("model", MODELS[1:], ids=lambda m: m.label())
@pytest.mark.parametrize("grid", [TorusGrid.torus(5), TorusGrid.torus(4, 5)], ids=str)
def test_heading_invariance_within_orbits(grid, model):
    for orbit in ORBITS[str(grid)]:
        ref = coverage_trace(grid, model, d0=orbit[0], max_steps=3000)
        for d0 in orbit[1:]:
            res = coverage_trace(grid, model, d0=d0, max_steps=3000)
            assert res.coverage_time == ref.coverage_time
            assert np.abs(res.trace.C - ref.trace.C).max() <= 1e-9


def test_axis_and_diagonal_headings_differ(torus5):
    east = coverage_trace(torus5, MovementModel.biased(0.9), d0=0)
    northeast = coverage_trace(torus5, MovementModel.biased(0.9), d0=1)
    assert east.coverage_time != northeast.coverage_time


def test_sweep_full_random_equals_baseline(torus5):
    sw = sweep_bias(torus5, [0.3], r=1.0)
    assert sw.points == [(0.3, sw.baseline)]


def test_sweep_uses_plain_bias_when_r_zero():
    assert bias_model(0.4, 0) == MovementModel.biased(0.4)
    assert bias_model(0.4, 0.1) == MovementModel.biased_random(0.4, 0.1)


def test_sweep_parallel_same_as_serial(torus5):
    biases = np.arange(0, 1.0, 0.05)
    assert sweep_bias(torus5, biases, workers=4) == sweep_bias(torus5, biases)


def test_sweep_truncated_entry(torus5):
    sw = sweep_bias(torus5, [0.5, 1.0])
    assert sw.times[0] is not None and sw.times[1] is None


def test_crossover_no_bracket(torus5):
    res = crossover_bias(torus5, lo=0.0, hi=0.5)
    assert not res.found and res.reason == "no cross-over in range"


def test_crossover_bracket_width(torus5):
    res = crossover_bias(torus5, tolerance=0.01)
    lo, hi = res.bracket
    assert lo <= res.p_star <= hi
    times = dict(res.iterates)
    # the bracket only widens beyond the tolerance around an exact tie
    assert hi - lo <= 0.01 or res.baseline in times.values()
    assert not res.ambiguous
    assert all(p > res.p_star for p, t in times.items() if t > res.baseline)
    assert all(p < res.p_star for p, t in times.items() if t < res.baseline)


def test_crossover_plateau_midpoint(monkeypatch, torus5):
    # Fake a coverage-time curve that equals the baseline on [0.4, 0.6].
    import walkcover.coverage as cov

    real = cov.coverage_trace

    def fake(grid, model, **kw):
        res = real(grid, UNIFORM, s=kw.get("s"), target_fraction=kw["target_fraction"],
                   max_steps=kw["max_steps"])
        if model.directional:
            offset = 0 if 0.4 <= model.p <= 0.6 else (-5 if model.p < 0.4 else 5)
            object.__setattr__(res, "coverage_time", res.coverage_time + offset)
        return res

    monkeypatch.setattr(cov, "coverage_trace", fake)
    res = cov.crossover_bias(torus5, lo=0.0, hi=1.0, tolerance=0.001)
    assert res.p_star == pytest.approx(0.5, abs=0.002)


def test_bad_tolerance(torus5):
    with pytest.raises(DomainError):
        crossover_bias(torus5, tolerance=0)
