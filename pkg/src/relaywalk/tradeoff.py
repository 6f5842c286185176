"""Delay-versus-covertness sweeps and the Pareto frontier.

A sweep walks n over a range, picks k per strategy, and evaluates the
expected delay and covertness of each (n, k) pair either from the closed
forms (default) or by Monte Carlo.

Strategies:

* min-delay: k minimizing expected delay for that n;
* max-prob: k maximizing covertness for that n;
* fixed-k(c): always k = c (points with c > n are skipped);
* fixed-offset(c): k = n - c (points with k < 1 are skipped).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import analytic, covert, protocol, stochastic
from .covert import DetectionModel, PatrollingConstant, PatrollingLinear, Surveillance
from .stochastic import ChunkTimeModel, StepTimeModel


@dataclass(frozen=True)
class Strategy:
    kind: str  # min-delay | max-prob | fixed-k | fixed-offset
    value: int | None = None

    def __post_init__(self):
        if self.kind in ("min-delay", "max-prob"):
            if self.value is not None:
                raise ValueError(f"{self.kind} takes no parameter")
        elif self.kind in ("fixed-k", "fixed-offset"):
            if self.value is None or self.value < (1 if self.kind == "fixed-k" else 0):
                raise ValueError(f"{self.kind} needs a non-negative parameter")
        else:
            raise ValueError(f"unknown strategy {self.kind!r}")

    @property
    def label(self) -> str:
        if self.value is None:
            return self.kind
        return f"{self.kind}={self.value}"


@dataclass(frozen=True)
class SweepConfig:
    """Scenario shared by all sweep points; chunk counts vary per point.

    rate=None selects the unit-step delay model; setting it selects the
    random-transmission model with the given step-time model.
    """

    v: int
    d: int | str
    r: int
    m: int
    detection: DetectionModel
    rate: float | None = None
    step_time: StepTimeModel | None = None
    trials: int = 1000
    seed: int = 42

    def __post_init__(self):
        if isinstance(self.detection, (PatrollingConstant, PatrollingLinear)):
            if self.rate is not None:
                raise ValueError("patrolling pairs with the unit-step model only")
        if isinstance(self.detection, Surveillance):
            if self.rate is None:
                raise ValueError("surveillance needs the random-transmission model")
            if self.rate != self.detection.rate:
                raise ValueError("transmission rates disagree between time and warden models")
        if self.rate is not None and self.step_time is None:
            object.__setattr__(self, "step_time", StepTimeModel("deterministic", 1.0))

    @property
    def step_mean(self) -> float:
        return 1.0 if self.step_time is None else self.step_time.mean


@dataclass(frozen=True)
class SweepPoint:
    strategy: str
    n: int
    k: int
    delay: float
    delay_ci: float
    p_c: float
    p_c_ci: float


def choose_k(cfg: SweepConfig, strategy: Strategy, n: int) -> int | None:
    """The k a strategy picks at this n, or None to skip the point."""
    if strategy.kind == "min-delay":
        if cfg.rate is None:
            return min(
                range(1, n + 1),
                key=lambda k: analytic.expected_delay_const(cfg.v, cfg.d, cfg.r, n, k).value,
            )
        return analytic.optimal_k_random(cfg.v, cfg.d, cfg.r, n, cfg.m, cfg.rate, cfg.step_mean)
    if strategy.kind == "max-prob":
        return covert.argmax_k_covertness(cfg.detection, n, cfg.m)
    if strategy.kind == "fixed-k":
        return strategy.value if strategy.value <= n else None
    k = n - strategy.value
    return k if k >= 1 else None


def _analytic_point(cfg: SweepConfig, strategy: Strategy, n: int, k: int) -> SweepPoint:
    if cfg.rate is None:
        delay = analytic.expected_delay_const(cfg.v, cfg.d, cfg.r, n, k).value
    else:
        delay = analytic.expected_delay_random(
            cfg.v, cfg.d, cfg.r, n, k, cfg.m, cfg.rate, cfg.step_mean
        ).value
    p_c = covert.covertness(covert.detect_prob(cfg.detection, cfg.m / k), n, k)
    return SweepPoint(strategy.label, n, k, delay, 0.0, p_c, 0.0)


def _simulated_point(cfg: SweepConfig, strategy: Strategy, n: int, k: int) -> SweepPoint:
    chunk_time = None if cfg.rate is None else ChunkTimeModel(shift=cfg.m / k, rate=cfg.rate)
    step_time = cfg.step_time if cfg.step_time is not None else stochastic.constant_steps()
    scenario = protocol.ScenarioConfig(
        v=cfg.v, d=cfg.d, r=cfg.r, m=cfg.m, k=k, n=n,
        step_time=step_time, chunk_time=chunk_time, detection=cfg.detection,
        trials=cfg.trials, seed=cfg.seed,
    )
    stats = protocol.run_trials(scenario)
    return SweepPoint(
        strategy.label, n, k, stats.total_time.mean, stats.total_time.ci95,
        stats.covertness.mean, stats.covertness.ci95,
    )


def sweep(
    cfg: SweepConfig,
    strategy: Strategy,
    n_range: range,
    *,
    simulate: bool = False,
) -> list[SweepPoint]:
    """Evaluate one strategy over the n range (points ordered by n)."""
    points = []
    for n in n_range:
        if not 1 <= n <= cfg.r:
            raise ValueError("swept n must lie in [1, r]")
        k = choose_k(cfg, strategy, n)
        if k is None:
            continue
        build = _simulated_point if simulate else _analytic_point
        points.append(build(cfg, strategy, n, k))
    return points


def pareto(points: list[SweepPoint]) -> list[SweepPoint]:
    """Points not dominated in (lower delay, higher covertness).

    A point is dominated if another point is at least as good on both
    axes and strictly better on one.  Input order is preserved, so
    coincident points from different strategies all survive.
    """
    keep = []
    for p in points:
        dominated = any(
            q.delay <= p.delay and q.p_c >= p.p_c and (q.delay < p.delay or q.p_c > p.p_c)
            for q in points
        )
        if not dominated:
            keep.append(p)
    return keep
