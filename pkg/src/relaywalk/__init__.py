"""Coded message passing between random walkers on regular graphs.

A sender walks a d-regular (or complete) mobility graph, depositing n
erasure-coded chunks of an m-byte message on the first n free relays it
meets; a receiver then walks until it has collected any k of them,
enough to decode.  The package pairs a Monte Carlo simulator for this
protocol with the matching closed-form delay expectations, detection
models for patrolling and surveilling wardens, and strategy sweeps that
trade expected delay against covertness.

Hot walk loops run in a compiled extension when it is available and in
pure Python otherwise; results are bit-identical either way (see
`relaywalk.kernel_name`).
"""

from __future__ import annotations

__version__ = "0.1.0"

from ._kernel import KERNEL as kernel_name
from .analytic import (
    DelayEstimate,
    expected_collection_random,
    expected_delay_const,
    expected_delay_random,
    expected_dissemination_random,
    harmonic,
    optimal_k_random,
    optimal_n_const,
    optimal_n_random,
)
from .coding import CodedChunk, CodeParams, decode, encode
from .config import ConfigError, ExperimentConfig, load_config
from .covert import (
    CovertnessReport,
    PatrollingConstant,
    PatrollingLinear,
    Surveillance,
    argmax_k_covertness,
    covertness,
    detect_prob,
    evaluate,
    sample_detection,
)
from .graph import (
    COMPLETE,
    Graph,
    RelayPlacement,
    degree_correction,
    gen_complete,
    gen_random_regular,
    load_edgelist,
    place_relays,
    save_edgelist,
)
from .mobility import StepBudgetExceeded, WalkerState, steps_to_next_meeting, walk_until
from .protocol import (
    DecodeMismatch,
    ScenarioConfig,
    Stats,
    TrialResult,
    run_trials,
    simulate_message_passing,
    simulate_trials,
    summarize,
)
from .stochastic import ChunkTimeModel, StepTimeModel, constant_steps, trial_streams
from .tradeoff import Strategy, SweepConfig, SweepPoint, choose_k, pareto, sweep

__all__ = [
    "__version__",
    "kernel_name",
    # graph
    "COMPLETE",
    "Graph",
    "RelayPlacement",
    "degree_correction",
    "gen_complete",
    "gen_random_regular",
    "load_edgelist",
    "place_relays",
    "save_edgelist",
    # mobility
    "StepBudgetExceeded",
    "WalkerState",
    "steps_to_next_meeting",
    "walk_until",
    # coding
    "CodeParams",
    "CodedChunk",
    "encode",
    "decode",
    # stochastic
    "ChunkTimeModel",
    "StepTimeModel",
    "constant_steps",
    "trial_streams",
    # protocol
    "DecodeMismatch",
    "ScenarioConfig",
    "Stats",
    "TrialResult",
    "run_trials",
    "simulate_message_passing",
    "simulate_trials",
    "summarize",
    # analytic
    "DelayEstimate",
    "harmonic",
    "expected_delay_const",
    "expected_delay_random",
    "expected_dissemination_random",
    "expected_collection_random",
    "optimal_n_const",
    "optimal_n_random",
    "optimal_k_random",
    # covert
    "CovertnessReport",
    "PatrollingConstant",
    "PatrollingLinear",
    "Surveillance",
    "detect_prob",
    "covertness",
    "evaluate",
    "argmax_k_covertness",
    "sample_detection",
    # tradeoff
    "Strategy",
    "SweepConfig",
    "SweepPoint",
    "choose_k",
    "sweep",
    "pareto",
    # config
    "ConfigError",
    "ExperimentConfig",
    "load_config",
]
