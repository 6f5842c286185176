"""Random-variate models and reproducible stream derivation.

Every experiment is driven by one 64-bit master seed.  Each trial gets
two independent streams derived from (master seed, trial index) through
numpy's SeedSequence spawning:

* a PCG64 generator for placements, start positions, transmission times
  and warden draws, and
* a splitmix64 stream that drives walk steps inside the kernel.

Keeping walk randomness on its own stream means the compiled and
pure-Python kernels consume randomness identically, so per-trial results
are bit-reproducible regardless of which kernel is active.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernel

# spawn-key domains under the master seed
_DOMAIN_SCENARIO = 0  # graph structure, message bytes
_DOMAIN_TRIAL = 1  # per-trial streams


class WalkStream:
    """Mutable splitmix64 stream; the state is handed to walk kernels."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = int(seed) & ((1 << 64) - 1)

    def next_u64(self) -> int:
        value, self.state = _kernel.next_u64(self.state)
        return value

    def next_below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n


@dataclass
class TrialStreams:
    """The two per-trial randomness sources."""

    rng: np.random.Generator
    walk: WalkStream


def derive_u64(master_seed: int, *key: int) -> int:
    """Stable 64-bit sub-seed for (master seed, key path)."""
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=tuple(key))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def scenario_seed(master_seed: int, slot: int) -> int:
    """Sub-seed for per-experiment structure (graph, message bytes)."""
    return derive_u64(master_seed, _DOMAIN_SCENARIO, slot)


def trial_streams(master_seed: int, trial_index: int) -> TrialStreams:
    """Independent streams for one trial; same inputs give same streams."""
    if trial_index < 0:
        raise ValueError("trial_index must be non-negative")
    root = np.random.SeedSequence(
        entropy=master_seed, spawn_key=(_DOMAIN_TRIAL, trial_index)
    )
    time_child, walk_child = root.spawn(2)
    rng = np.random.Generator(np.random.PCG64(time_child))
    walk_seed = int(walk_child.generate_state(1, dtype=np.uint64)[0])
    return TrialStreams(rng=rng, walk=WalkStream(walk_seed))


# ---------------------------------------------------------------------------
# time models


@dataclass(frozen=True)
class StepTimeModel:
    """Time spent on a single walk step.

    kind 'constant' pins every step to one time unit (the unit-step
    delay model); 'deterministic' pins it to ``mean``; 'exponential'
    draws i.i.d. exponentials with that mean.
    """

    kind: str
    mean: float = 1.0

    def __post_init__(self):
        if self.kind not in ("constant", "deterministic", "exponential"):
            raise ValueError(f"unknown step-time kind {self.kind!r}")
        if self.kind == "constant" and self.mean != 1.0:
            raise ValueError("constant step time is fixed at 1")
        if not self.mean > 0:
            raise ValueError("step-time mean must be positive")


def constant_steps() -> StepTimeModel:
    return StepTimeModel("constant", 1.0)


def sample_step_time(model: StepTimeModel, rng: np.random.Generator) -> float:
    if model.kind == "exponential":
        return float(rng.exponential(model.mean))
    return model.mean


def walking_time(model: StepTimeModel, steps: int, rng: np.random.Generator) -> float:
    """Total time for `steps` walk steps.

    For the exponential model the sum of i.i.d. exponentials is drawn as
    a single gamma variate, which has exactly the right distribution.
    """
    if steps < 0:
        raise ValueError("steps must be non-negative")
    if steps == 0:
        return 0.0
    if model.kind == "exponential":
        return float(rng.gamma(shape=steps, scale=model.mean))
    return steps * model.mean


@dataclass(frozen=True)
class ChunkTimeModel:
    """Per-chunk transmission time: shift + Exp(rate).

    The shift is the chunk length in time units (one unit per payload
    symbol) and the exponential tail models the random handshake.
    """

    shift: float
    rate: float

    def __post_init__(self):
        if self.shift < 0:
            raise ValueError("chunk-time shift must be non-negative")
        if not self.rate > 0:
            raise ValueError("chunk-time rate must be positive")

    @property
    def mean(self) -> float:
        return self.shift + 1.0 / self.rate


def sample_chunk_time(model: ChunkTimeModel, rng: np.random.Generator) -> float:
    return model.shift + float(rng.exponential(1.0 / model.rate))


def sample_warden_arrival(window: float, rng: np.random.Generator) -> float:
    """Warden arrival time, uniform on [0, window)."""
    if not window > 0:
        raise ValueError("window must be positive")
    return float(rng.uniform(0.0, window))
