"""Monte Carlo simulation of the two-phase relay protocol.

Phase one: the source walks the graph and deposits coded chunk i on the
i-th distinct unoccupied relay it meets (occupied relays are walked
through).  Phase two: the collector walks the same graph, draining k of
the n occupied relays, then decodes.  Phases run sequentially and only
one walker moves at a time; a transmitter is stationary while a chunk
transfer is running, so global time advances during a transfer but walk
steps do not.

Two delay models:

* unit-step (no chunk-time model): each step costs one time unit and
  transfers are instantaneous, so phase time equals phase steps;
* random-transmission (chunk-time model set): steps cost i.i.d. times
  from the step-time model and each transfer costs an independent
  shift-plus-exponential duration.

Wardens observe transfers only.  Patrolling wardens pair with the
unit-step model and surveillance pairs with the random-transmission
model; the cross pairings are rejected.

Per-trial draw order (fixed for reproducibility): relay placement,
source start, then per deposit [transfer time,] [detection,] then the
phase walking-time draw, then the same pattern for the collector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import coding, covert, mobility, stochastic
from .coding import CodeParams, CodedChunk
from .covert import DetectionModel, PatrollingConstant, PatrollingLinear, Surveillance
from .graph import COMPLETE, Graph, RelayPlacement, gen_complete, gen_random_regular, place_relays
from .stochastic import ChunkTimeModel, StepTimeModel, TrialStreams

_GRAPH_SLOT = 0
_MESSAGE_SLOT = 1


class DecodeMismatch(RuntimeError):
    """Collected chunks failed to reproduce the message (codec or
    bookkeeping bug)."""


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything one experiment needs, plus trial count and seed.

    d is an integer degree or the COMPLETE marker.  chunk_time=None
    selects the unit-step model (step_time must then be 'constant');
    setting it selects the random-transmission model, and its shift must
    equal m/k.
    """

    v: int
    d: int | str
    r: int
    m: int
    k: int
    n: int
    step_time: StepTimeModel = field(default_factory=stochastic.constant_steps)
    chunk_time: ChunkTimeModel | None = None
    detection: DetectionModel | None = None
    trials: int = 1000
    seed: int = 42

    def __post_init__(self):
        if self.v < 2:
            raise ValueError("need at least 2 vertices")
        if not 1 <= self.k <= self.n:
            raise ValueError("chunk counts must satisfy 1 <= k <= n")
        if self.n > self.r:
            raise ValueError("coded chunks cannot exceed relays (n <= r)")
        if self.r > self.v:
            raise ValueError("relays cannot exceed vertices (r <= v)")
        if self.m < 1:
            raise ValueError("message length must be at least 1")
        if self.trials < 1:
            raise ValueError("need at least one trial")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        if self.chunk_time is None:
            if self.step_time.kind != "constant":
                raise ValueError(
                    "the unit-step model requires constant step time; "
                    "set a chunk-time model for random transmissions"
                )
        else:
            if not math.isclose(self.chunk_time.shift, self.m / self.k, rel_tol=1e-9):
                raise ValueError("chunk-time shift must equal m / k")
        if isinstance(self.detection, (PatrollingConstant, PatrollingLinear)):
            if self.chunk_time is not None:
                raise ValueError(
                    "patrolling wardens pair with the unit-step model only"
                )
        if isinstance(self.detection, Surveillance):
            if self.chunk_time is None:
                raise ValueError(
                    "surveillance pairs with the random-transmission model only"
                )

    @property
    def code_params(self) -> CodeParams:
        return CodeParams(m=self.m, k=self.k, n=self.n)

    @property
    def chunk_len(self) -> float:
        """Ideal chunk length in time units (the analytic m/k)."""
        return self.m / self.k


def build_graph(cfg: ScenarioConfig) -> Graph:
    """The scenario's graph, derived deterministically from the seed."""
    if cfg.d == COMPLETE:
        return gen_complete(cfg.v)
    return gen_random_regular(cfg.v, cfg.d, stochastic.scenario_seed(cfg.seed, _GRAPH_SLOT))


def scenario_message(cfg: ScenarioConfig) -> bytes:
    """The scenario's random message bytes, derived from the seed."""
    rng = np.random.default_rng(stochastic.scenario_seed(cfg.seed, _MESSAGE_SLOT))
    return rng.integers(0, 256, size=cfg.m, dtype=np.uint8).tobytes()


@dataclass(frozen=True)
class TransmissionEvent:
    """One chunk transfer: where, which chunk, how long, whether seen."""

    vertex: int
    chunk: int
    duration: float
    detected: bool


@dataclass(frozen=True)
class PhaseRecord:
    steps: int
    time: float
    events: tuple[TransmissionEvent, ...]


@dataclass(frozen=True)
class TrialResult:
    disseminate_steps: int
    collect_steps: int
    disseminate_time: float
    collect_time: float
    total_time: float
    detected: bool
    detections: int


def _transfer(
    cfg: ScenarioConfig, rng: np.random.Generator
) -> tuple[float, bool]:
    """Sample one transfer's duration and detection outcome."""
    if cfg.chunk_time is not None:
        duration = stochastic.sample_chunk_time(cfg.chunk_time, rng)
    else:
        duration = 0.0
    det = cfg.detection
    if det is None:
        detected = False
    elif isinstance(det, Surveillance):
        detected = covert.sample_detection(det, cfg.chunk_len, rng, transfer_time=duration)
    else:
        detected = covert.sample_detection(det, cfg.chunk_len, rng)
    return duration, detected


def simulate_dissemination(
    cfg: ScenarioConfig,
    streams: TrialStreams,
    g: Graph,
    placement: RelayPlacement,
) -> PhaseRecord:
    """Walk the source until all n chunks sit on distinct relays."""
    if placement.occupancy:
        raise ValueError("dissemination needs a fresh, unoccupied placement")
    if len(placement.relays) != cfg.r:
        raise ValueError("placement relay count does not match the scenario")
    mask = bytearray(cfg.v)
    for u in placement.relays:
        mask[u] = 1
    position = int(streams.rng.integers(cfg.v))
    budget = mobility.STEP_BUDGET
    total_steps = 0
    events = []
    for chunk_idx in range(cfg.n):
        steps, position = mobility.walk_until(g, position, mask, streams.walk, budget)
        budget -= steps
        total_steps += steps
        mask[position] = 0
        placement.occupy(position, chunk_idx)
        duration, detected = _transfer(cfg, streams.rng)
        events.append(TransmissionEvent(position, chunk_idx, duration, detected))
    time = stochastic.walking_time(cfg.step_time, total_steps, streams.rng)
    time += sum(e.duration for e in events)
    return PhaseRecord(steps=total_steps, time=time, events=tuple(events))


def simulate_collection(
    cfg: ScenarioConfig,
    streams: TrialStreams,
    g: Graph,
    placement: RelayPlacement,
    chunks: list[CodedChunk],
    message: bytes,
) -> PhaseRecord:
    """Walk the collector over k occupied relays and verify the decode."""
    if len(placement.occupancy) != cfg.n:
        raise ValueError("collection needs exactly n occupied relays")
    mask = bytearray(cfg.v)
    for u in placement.occupancy:
        mask[u] = 1
    position = int(streams.rng.integers(cfg.v))
    budget = mobility.STEP_BUDGET
    total_steps = 0
    events = []
    gathered: list[CodedChunk] = []
    for _ in range(cfg.k):
        steps, position = mobility.walk_until(g, position, mask, streams.walk, budget)
        budget -= steps
        total_steps += steps
        mask[position] = 0
        chunk_idx = placement.occupancy[position]
        gathered.append(chunks[chunk_idx])
        duration, detected = _transfer(cfg, streams.rng)
        events.append(TransmissionEvent(position, chunk_idx, duration, detected))
    decoded = coding.decode(gathered, cfg.code_params)
    if decoded != message:
        raise DecodeMismatch("collected chunks decoded to the wrong message")
    time = stochastic.walking_time(cfg.step_time, total_steps, streams.rng)
    time += sum(e.duration for e in events)
    return PhaseRecord(steps=total_steps, time=time, events=tuple(events))


def simulate_message_passing(
    cfg: ScenarioConfig,
    trial_index: int,
    *,
    graph: Graph | None = None,
    message: bytes | None = None,
    chunks: list[CodedChunk] | None = None,
) -> TrialResult:
    """Run one full trial: fresh placement, both phases, decode check."""
    if graph is None:
        graph = build_graph(cfg)
    if message is None:
        message = scenario_message(cfg)
    if chunks is None:
        chunks = coding.encode(message, cfg.code_params)
    streams = stochastic.trial_streams(cfg.seed, trial_index)
    placement = place_relays(graph, cfg.r, streams.rng)
    diss = simulate_dissemination(cfg, streams, graph, placement)
    coll = simulate_collection(cfg, streams, graph, placement, chunks, message)
    detections = sum(e.detected for e in diss.events + coll.events)
    return TrialResult(
        disseminate_steps=diss.steps,
        collect_steps=coll.steps,
        disseminate_time=diss.time,
        collect_time=coll.time,
        total_time=diss.time + coll.time,
        detected=detections > 0,
        detections=detections,
    )


def simulate_trials(cfg: ScenarioConfig) -> list[TrialResult]:
    """All trials of a scenario; trial i is independent of trial j."""
    graph = build_graph(cfg)
    message = scenario_message(cfg)
    chunks = coding.encode(message, cfg.code_params)
    return [
        simulate_message_passing(cfg, i, graph=graph, message=message, chunks=chunks)
        for i in range(cfg.trials)
    ]


@dataclass(frozen=True)
class MetricStats:
    mean: float
    stderr: float
    ci95: float


@dataclass(frozen=True)
class Stats:
    """Aggregates over the trials of one scenario."""

    trials: int
    disseminate_steps: MetricStats
    collect_steps: MetricStats
    disseminate_time: MetricStats
    collect_time: MetricStats
    total_time: MetricStats
    covertness: MetricStats


def _metric(values: np.ndarray) -> MetricStats:
    mean = float(values.mean())
    if values.size > 1:
        stderr = float(values.std(ddof=1) / math.sqrt(values.size))
    else:
        stderr = 0.0
    return MetricStats(mean=mean, stderr=stderr, ci95=1.96 * stderr)


def summarize(results: list[TrialResult]) -> Stats:
    if not results:
        raise ValueError("no trials to summarize")
    cols = {
        name: np.array([getattr(t, name) for t in results], dtype=float)
        for name in (
            "disseminate_steps",
            "collect_steps",
            "disseminate_time",
            "collect_time",
            "total_time",
        )
    }
    covert_rate = sum(not t.detected for t in results) / len(results)
    covert_stderr = math.sqrt(covert_rate * (1.0 - covert_rate) / len(results))
    return Stats(
        trials=len(results),
        disseminate_steps=_metric(cols["disseminate_steps"]),
        collect_steps=_metric(cols["collect_steps"]),
        disseminate_time=_metric(cols["disseminate_time"]),
        collect_time=_metric(cols["collect_time"]),
        total_time=_metric(cols["total_time"]),
        covertness=MetricStats(
            mean=covert_rate, stderr=covert_stderr, ci95=1.96 * covert_stderr
        ),
    )


def run_trials(cfg: ScenarioConfig) -> Stats:
    """Simulate the scenario and aggregate; same config gives same Stats."""
    return summarize(simulate_trials(cfg))
