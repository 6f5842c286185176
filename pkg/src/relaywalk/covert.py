"""Warden detection models and covertness probabilities.

Each chunk transfer is one detection opportunity.  Three warden models
are supported:

* patrolling-constant: wardens walk the same graph; the chance that one
  co-arrives during a transfer is wardens / (theta(d) * v), independent
  of chunk length;
* patrolling-linear: detection also scales with the time on air, giving
  chunk_len * wardens / (m * theta(d) * v);
* surveillance: a single watcher arrives uniformly in an observation
  window [0, W) at each transfer and detects it if the transfer (of
  shift-plus-exponential duration) is still running, i.e. if the arrival
  lands before the transfer ends.

Patrolling detections are sampled as independent Bernoulli events with
the closed-form probability rather than by co-simulating warden walks;
surveillance detections compare the warden arrival to the actual
transfer duration.  The whole message stays covert only if none of the
n + k transfers is detected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .graph import degree_correction


@dataclass(frozen=True)
class PatrollingConstant:
    wardens: int
    d: int | str
    v: int

    def __post_init__(self):
        if self.wardens < 1:
            raise ValueError("patrolling needs at least one warden")
        if self.v < 2:
            raise ValueError("need at least 2 vertices")
        degree_correction(self.d)  # validates d


@dataclass(frozen=True)
class PatrollingLinear:
    wardens: int
    d: int | str
    v: int
    m: int

    def __post_init__(self):
        if self.wardens < 1:
            raise ValueError("patrolling needs at least one warden")
        if self.v < 2:
            raise ValueError("need at least 2 vertices")
        if self.m < 1:
            raise ValueError("message length must be positive")
        degree_correction(self.d)


@dataclass(frozen=True)
class Surveillance:
    window: float
    rate: float

    def __post_init__(self):
        if not self.window > 0:
            raise ValueError("observation window must be positive")
        if not self.rate > 0:
            raise ValueError("transmission rate must be positive")


DetectionModel = Union[PatrollingConstant, PatrollingLinear, Surveillance]


def _clamp01(x: float) -> float:
    return min(1.0, max(0.0, x))


def detect_prob(model: DetectionModel, chunk_len: float) -> float:
    """Probability that one chunk transfer of the given (real-valued)
    length is detected, clamped to [0, 1]."""
    if not chunk_len > 0:
        raise ValueError("chunk length must be positive")
    if isinstance(model, PatrollingConstant):
        return _clamp01(model.wardens / (degree_correction(model.d) * model.v))
    if isinstance(model, PatrollingLinear):
        return _clamp01(
            chunk_len * model.wardens / (model.m * degree_correction(model.d) * model.v)
        )
    if isinstance(model, Surveillance):
        w, lam = model.window, model.rate
        if w < chunk_len:
            return 1.0
        value = (
            1.0 / (lam * w)
            + chunk_len / w
            - math.exp(-lam * (w - chunk_len)) / (lam * w)
        )
        return _clamp01(value)
    raise TypeError(f"unknown detection model {model!r}")


def covertness(p_d: float, n: int, k: int) -> float:
    """Probability that none of the n + k transfers is detected."""
    if not 0.0 <= p_d <= 1.0:
        raise ValueError("detection probability must be in [0, 1]")
    if n < 1 or k < 1:
        raise ValueError("chunk counts must be positive")
    return (1.0 - p_d) ** (n + k)


@dataclass(frozen=True)
class CovertnessReport:
    p_d: float
    p_c: float
    transmissions: int


def evaluate(model: DetectionModel, n: int, k: int, m: float) -> CovertnessReport:
    """Detection and covertness probabilities for one (n, k) choice."""
    p_d = detect_prob(model, m / k)
    return CovertnessReport(p_d=p_d, p_c=covertness(p_d, n, k), transmissions=n + k)


def argmax_k_covertness(model: DetectionModel, n: int, m: float) -> int:
    """The k in [1, n] that maximizes covertness (chunk length m/k).

    Patrolling models have closed-form answers (k=1 for constant, k=n
    for linear); those are returned after verifying against exhaustive
    evaluation.  Surveillance has no closed form and is searched
    exhaustively, ties to the smaller k.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not m > 0:
        raise ValueError("message length must be positive")
    values = [covertness(detect_prob(model, m / k), n, k) for k in range(1, n + 1)]
    peak = max(values)
    if isinstance(model, PatrollingConstant):
        best = 1
    elif isinstance(model, PatrollingLinear):
        best = n
    else:
        return 1 + values.index(peak)
    if values[best - 1] != peak:
        raise AssertionError("closed-form optimum missed the exhaustive maximum")
    return best


def sample_detection(
    model: DetectionModel,
    chunk_len: float,
    rng: np.random.Generator,
    transfer_time: float | None = None,
) -> bool:
    """Sample whether one chunk transfer is detected.

    Patrolling models draw a Bernoulli with the closed-form probability.
    Surveillance draws the warden arrival uniformly over the window and
    compares it to the transfer duration (drawn here as shift m/k plus
    an exponential unless the caller supplies the actual duration).
    Draw order is pinned: transfer time first (if drawn), arrival
    second.
    """
    if isinstance(model, Surveillance):
        if transfer_time is None:
            transfer_time = chunk_len + float(rng.exponential(1.0 / model.rate))
        arrival = float(rng.uniform(0.0, model.window))
        return arrival <= transfer_time
    return bool(rng.random() < detect_prob(model, chunk_len))
