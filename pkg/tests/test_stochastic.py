from __future__ import annotations

import math

import numpy as np
import pytest

from relaywalk.stochastic import (
    ChunkTimeModel,
    StepTimeModel,
    WalkStream,
    constant_steps,
    derive_u64,
    sample_chunk_time,
    sample_step_time,
    sample_warden_arrival,
    scenario_seed,
    trial_streams,
    walking_time,
)

scipy_stats = pytest.importorskip("scipy.stats")


def test_trial_streams_are_reproducible():
    a = trial_streams(42, 7)
    b = trial_streams(42, 7)
    assert a.walk.state == b.walk.state
    assert list(a.rng.integers(0, 1000, 5)) == list(b.rng.integers(0, 1000, 5))
    assert [a.walk.next_u64() for _ in range(3)] == [b.walk.next_u64() for _ in range(3)]


def test_trial_streams_differ_across_trials_and_seeds():
    base = trial_streams(42, 0)
    other_trial = trial_streams(42, 1)
    other_seed = trial_streams(43, 0)
    assert base.walk.state != other_trial.walk.state
    assert base.walk.state != other_seed.walk.state


def test_trial_index_must_be_non_negative():
    with pytest.raises(ValueError):
        trial_streams(42, -1)


def test_scenario_seed_slots_are_independent():
    assert scenario_seed(42, 0) != scenario_seed(42, 1)
    assert scenario_seed(42, 0) == scenario_seed(42, 0)
    assert derive_u64(7, 1, 2) != derive_u64(7, 2, 1)


def test_walk_stream_mixes_and_masks():
    stream = WalkStream(2**64 + 5)  # wraps into 64 bits
    assert stream.state == 5
    value = stream.next_u64()
    assert 0 <= value < 2**64
    with pytest.raises(ValueError):
        stream.next_below(0)


def test_step_time_model_validation():
    assert constant_steps() == StepTimeModel("constant", 1.0)
    with pytest.raises(ValueError):
        StepTimeModel("constant", 2.0)
    with pytest.raises(ValueError):
        StepTimeModel("gaussian", 1.0)
    with pytest.raises(ValueError):
        StepTimeModel("exponential", 0.0)


def test_walking_time_deterministic_models():
    rng = np.random.default_rng(0)
    assert walking_time(constant_steps(), 17, rng) == 17.0
    assert walking_time(StepTimeModel("deterministic", 2.5), 4, rng) == 10.0
    assert walking_time(constant_steps(), 0, rng) == 0.0
    with pytest.raises(ValueError):
        walking_time(constant_steps(), -1, rng)


def test_exponential_walking_time_distribution():
    # one step: exactly exponential; many steps: mean steps * mean
    model = StepTimeModel("exponential", 2.0)
    rng = np.random.default_rng(11)
    singles = np.array([walking_time(model, 1, rng) for _ in range(4000)])
    _, p = scipy_stats.kstest(singles, "expon", args=(0, 2.0))
    assert p > 1e-3
    tens = np.array([walking_time(model, 10, rng) for _ in range(4000)])
    se = tens.std(ddof=1) / math.sqrt(tens.size)
    assert abs(tens.mean() - 20.0) < 3 * se
    # sum of 10 exponentials(mean 2) is gamma(shape 10, scale 2)
    _, p = scipy_stats.kstest(tens, "gamma", args=(10, 0, 2.0))
    assert p > 1e-3


def test_sample_step_time_kinds():
    rng = np.random.default_rng(2)
    assert sample_step_time(constant_steps(), rng) == 1.0
    assert sample_step_time(StepTimeModel("deterministic", 3.0), rng) == 3.0
    draws = [sample_step_time(StepTimeModel("exponential", 1.5), rng) for _ in range(2000)]
    assert abs(np.mean(draws) - 1.5) < 0.15


def test_chunk_time_is_shifted_exponential():
    model = ChunkTimeModel(shift=25.0, rate=0.5)
    assert model.mean == 27.0
    rng = np.random.default_rng(3)
    draws = np.array([sample_chunk_time(model, rng) for _ in range(4000)])
    assert draws.min() >= 25.0
    _, p = scipy_stats.kstest(draws - 25.0, "expon", args=(0, 2.0))
    assert p > 1e-3


def test_chunk_time_tail_vanishes_at_high_rate():
    model = ChunkTimeModel(shift=4.0, rate=1e12)
    rng = np.random.default_rng(4)
    assert sample_chunk_time(model, rng) == pytest.approx(4.0, abs=1e-9)


def test_chunk_time_validation():
    with pytest.raises(ValueError):
        ChunkTimeModel(shift=-1.0, rate=1.0)
    with pytest.raises(ValueError):
        ChunkTimeModel(shift=1.0, rate=0.0)


def test_warden_arrival_is_uniform_on_window():
    rng = np.random.default_rng(5)
    draws = np.array([sample_warden_arrival(30.0, rng) for _ in range(4000)])
    assert draws.min() >= 0.0 and draws.max() < 30.0
    _, p = scipy_stats.kstest(draws, "uniform", args=(0, 30.0))
    assert p > 1e-3
    with pytest.raises(ValueError):
        sample_warden_arrival(0.0, rng)
