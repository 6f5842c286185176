"""Experiment configuration: flat INI files, strictly validated.

Physical parameters (vertices, degree/complete, relays, message length,
chunk counts) must be explicit; only operational knobs (trials, seed,
output paths) have defaults.  Unknown sections or keys are rejected with
the file and line number.  The environment variables RELAYWALK_SEED,
RELAYWALK_TRIALS and RELAYWALK_OUT override the corresponding config
values; command-line flags override both.
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field
from pathlib import Path

from .covert import DetectionModel, PatrollingConstant, PatrollingLinear, Surveillance
from .graph import COMPLETE
from .protocol import ScenarioConfig
from .stochastic import ChunkTimeModel, StepTimeModel, constant_steps
from .tradeoff import Strategy, SweepConfig

MODES = ("simulate", "analytic", "covert", "sweep")

ENV_PREFIX = "RELAYWALK_"


class ConfigError(ValueError):
    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:" if line is None else f"{path}:{line}: "
        super().__init__(f"{where}{message}")


# section -> key -> parser name; used both to validate and to convert
_SCHEMA: dict[str, dict[str, str]] = {
    "graph": {"vertices": "int", "degree": "int", "complete": "bool", "relays": "int"},
    "code": {"message_len": "int", "data_chunks": "intlist", "coded_chunks": "intlist"},
    "time": {"model": "str", "step_dist": "str", "step_mean": "float", "rate": "float"},
    "warden": {"model": "str", "wardens": "int", "window": "float"},
    "run": {
        "mode": "str",
        "trials": "int",
        "seed": "int",
        "out": "str",
        "per_trial_out": "str",
        "strategies": "strlist",
        "n_range": "intlist",
        "fixed_k": "int",
        "fixed_offset": "int",
    },
}


def _parse_int(text: str) -> int:
    return int(text, 10)


def _parse_float(text: str) -> float:
    return float(text)


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "yes", "on", "1"):
        return True
    if low in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_int_list(text: str) -> list[int]:
    """Accepts '6', '2,4,6', and 'a..b' inclusive ranges."""
    values: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo_s, hi_s = part.split("..", 1)
            lo, hi = int(lo_s, 10), int(hi_s, 10)
            if hi < lo:
                raise ValueError(f"empty range {part!r}")
            values.extend(range(lo, hi + 1))
        elif part:
            values.append(int(part, 10))
    if not values:
        raise ValueError("empty list")
    return values


def _parse_str_list(text: str) -> list[str]:
    values = [part.strip() for part in text.split(",") if part.strip()]
    if not values:
        raise ValueError("empty list")
    return values


_PARSERS = {
    "int": _parse_int,
    "float": _parse_float,
    "bool": _parse_bool,
    "intlist": _parse_int_list,
    "strlist": _parse_str_list,
    "str": str.strip,
}


def _locate(lines: list[str], section: str, key: str | None = None) -> int | None:
    """Best-effort line number of a section header or of a key in it."""
    current = None
    for idx, raw in enumerate(lines, start=1):
        text = raw.strip()
        if text.startswith("[") and text.endswith("]"):
            if current == section and key is None:
                break
            current = text[1:-1].strip()
            if key is None and current == section:
                return idx
        elif current == section and key is not None:
            name = text.split("=", 1)[0].split(":", 1)[0].strip()
            if name == key:
                return idx
    return None


@dataclass
class ExperimentConfig:
    """A fully validated experiment description."""

    mode: str | None
    v: int
    d: int | str
    r: int
    m: int
    k_values: list[int] | None
    n_values: list[int] | None
    time_model: str  # constant | random
    step_dist: str  # deterministic | exponential
    step_mean: float
    rate: float | None
    warden_model: str  # none | patrolling-constant | patrolling-linear | surveillance
    wardens: int | None
    window: float | None
    trials: int = 1000
    seed: int = 42
    out: str | None = None
    per_trial_out: str | None = None
    strategies: list[str] = field(default_factory=lambda: ["min-delay", "max-prob"])
    n_range: list[int] | None = None
    fixed_k: int | None = None
    fixed_offset: int | None = None
    source: str = "<config>"

    # ------------------------------------------------------------------
    # derived model objects

    def detection_model(self) -> DetectionModel | None:
        if self.warden_model == "none":
            return None
        if self.warden_model == "patrolling-constant":
            return PatrollingConstant(wardens=self.wardens, d=self.d, v=self.v)
        if self.warden_model == "patrolling-linear":
            return PatrollingLinear(wardens=self.wardens, d=self.d, v=self.v, m=self.m)
        return Surveillance(window=self.window, rate=self.rate)

    def step_time_model(self) -> StepTimeModel:
        if self.time_model == "constant":
            return constant_steps()
        return StepTimeModel(self.step_dist, self.step_mean)

    def chunk_time_model(self, k: int) -> ChunkTimeModel | None:
        if self.time_model == "constant":
            return None
        return ChunkTimeModel(shift=self.m / k, rate=self.rate)

    def grid(self) -> list[tuple[int, int]]:
        """All (k, n) combos with k <= n, ordered by (k, n)."""
        pairs = [
            (k, n)
            for k in sorted(set(self.k_values))
            for n in sorted(set(self.n_values))
            if k <= n
        ]
        if not pairs:
            raise ConfigError(
                "no valid (data_chunks, coded_chunks) pairs: "
                "chunk counts must satisfy k <= n",
                self.source,
            )
        return pairs

    def scenario(self, k: int, n: int) -> ScenarioConfig:
        return ScenarioConfig(
            v=self.v,
            d=self.d,
            r=self.r,
            m=self.m,
            k=k,
            n=n,
            step_time=self.step_time_model(),
            chunk_time=self.chunk_time_model(k),
            detection=self.detection_model(),
            trials=self.trials,
            seed=self.seed,
        )

    def sweep_config(self) -> SweepConfig:
        return SweepConfig(
            v=self.v,
            d=self.d,
            r=self.r,
            m=self.m,
            detection=self.detection_model(),
            rate=self.rate if self.time_model == "random" else None,
            step_time=None if self.time_model == "constant" else self.step_time_model(),
            trials=self.trials,
            seed=self.seed,
        )

    def sweep_strategies(self) -> list[Strategy]:
        out = []
        for name in self.strategies:
            if name == "fixed-k":
                out.append(Strategy("fixed-k", self.fixed_k))
            elif name == "fixed-offset":
                out.append(Strategy("fixed-offset", self.fixed_offset))
            else:
                out.append(Strategy(name))
        return out


def _require(parsed, lines, path, section: str, key: str):
    if section not in parsed or key not in parsed[section]:
        raise ConfigError(
            f"missing required key '{key}' in section [{section}]",
            path,
            _locate(lines, section),
        )
    return parsed[section][key]


def _forbid(parsed, lines, path, section: str, key: str, why: str):
    if section in parsed and key in parsed[section]:
        raise ConfigError(
            f"key '{key}' in section [{section}] {why}",
            path,
            _locate(lines, section, key),
        )


def load_config(path: str | Path, *, apply_env: bool = True) -> ExperimentConfig:
    """Parse and validate a config file; raises ConfigError on any
    schema or constraint violation, pointing at the offending line."""
    path = str(path)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}", path) from exc
    lines = text.splitlines()

    parser = configparser.ConfigParser(
        delimiters=("=",), inline_comment_prefixes=("#", ";"), interpolation=None
    )
    try:
        parser.read_string(text, source=path)
    except configparser.Error as exc:
        line = getattr(exc, "lineno", None)
        raise ConfigError(f"malformed config: {exc.message}", path, line) from exc

    parsed: dict[str, dict[str, object]] = {}
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(
                f"unknown section [{section}]", path, _locate(lines, section)
            )
        parsed[section] = {}
        for key, raw in parser.items(section):
            if key not in _SCHEMA[section]:
                raise ConfigError(
                    f"unknown key '{key}' in section [{section}]",
                    path,
                    _locate(lines, section, key),
                )
            kind = _SCHEMA[section][key]
            try:
                parsed[section][key] = _PARSERS[kind](raw)
            except ValueError as exc:
                raise ConfigError(
                    f"bad value for '{key}' in [{section}]: {exc}",
                    path,
                    _locate(lines, section, key),
                ) from exc

    def fail(section: str, key: str, message: str):
        raise ConfigError(message, path, _locate(lines, section, key))

    # --- graph ---------------------------------------------------------
    v = _require(parsed, lines, path, "graph", "vertices")
    r = _require(parsed, lines, path, "graph", "relays")
    complete = parsed.get("graph", {}).get("complete", False)
    degree = parsed.get("graph", {}).get("degree")
    if complete and degree is not None:
        fail("graph", "degree", "give either 'degree' or 'complete = true', not both")
    if not complete and degree is None:
        fail("graph", "vertices", "graph needs 'degree' or 'complete = true'")
    d: int | str = COMPLETE if complete else degree
    if v < 2:
        fail("graph", "vertices", "vertices must be at least 2")
    if not complete:
        if degree < 3:
            fail("graph", "degree", "degree must be at least 3")
        if degree >= v:
            fail("graph", "degree", "degree must be smaller than vertices")
        if (v * degree) % 2 != 0:
            fail("graph", "degree", "vertices * degree must be even")
    if not 1 <= r <= v:
        fail("graph", "relays", "relays must satisfy 1 <= relays <= vertices")

    # --- run (mode first; it gates which code keys are required) -------
    run = parsed.get("run", {})
    mode = run.get("mode")
    if mode is not None and mode not in MODES:
        fail("run", "mode", f"mode must be one of {', '.join(MODES)}")
    trials = run.get("trials", 1000)
    seed = run.get("seed", 42)
    if trials < 1:
        fail("run", "trials", "trials must be positive")
    if not 0 <= seed < 2**64:
        fail("run", "seed", "seed must fit in 64 bits")
    strategies = run.get("strategies", ["min-delay", "max-prob"])
    known_strategies = ("min-delay", "max-prob", "fixed-k", "fixed-offset")
    for s in strategies:
        if s not in known_strategies:
            fail("run", "strategies", f"unknown strategy '{s}'")

    # --- code ----------------------------------------------------------
    m = _require(parsed, lines, path, "code", "message_len")
    if m < 1:
        fail("code", "message_len", "message_len must be at least 1")
    k_values = parsed.get("code", {}).get("data_chunks")
    n_values = parsed.get("code", {}).get("coded_chunks")
    if mode == "sweep":
        _forbid(parsed, lines, path, "code", "data_chunks",
                "is not used in sweep mode (strategies choose k)")
        _forbid(parsed, lines, path, "code", "coded_chunks",
                "is not used in sweep mode (use n_range)")
    if k_values is not None:
        for k in k_values:
            if k < 1:
                fail("code", "data_chunks", "data_chunks must be positive")
            if k > n_max_allowed(n_values):
                fail(
                    "code",
                    "data_chunks",
                    f"data_chunks {k} violates k <= n "
                    f"(largest coded_chunks is {n_max_allowed(n_values)})",
                )
    if n_values is not None:
        for n in n_values:
            if n < 1:
                fail("code", "coded_chunks", "coded_chunks must be positive")
            if n > 255:
                fail("code", "coded_chunks", "coded_chunks must be at most 255 (n <= 255)")
            if n > r:
                fail("code", "coded_chunks", f"coded_chunks {n} violates n <= r (relays = {r})")

    # --- time ----------------------------------------------------------
    time_model = _require(parsed, lines, path, "time", "model")
    if time_model not in ("constant", "random"):
        fail("time", "model", "time model must be 'constant' or 'random'")
    step_dist = parsed.get("time", {}).get("step_dist", "deterministic")
    if step_dist not in ("deterministic", "exponential"):
        fail("time", "step_dist", "step_dist must be 'deterministic' or 'exponential'")
    rate = parsed.get("time", {}).get("rate")
    step_mean = parsed.get("time", {}).get("step_mean")
    if time_model == "random":
        if rate is None:
            fail("time", "model", "time model 'random' requires 'rate'")
        if rate <= 0:
            fail("time", "rate", "rate must be positive")
        if step_mean is None:
            fail("time", "model", "time model 'random' requires 'step_mean'")
        if step_mean <= 0:
            fail("time", "step_mean", "step_mean must be positive")
    else:
        for key in ("rate", "step_mean", "step_dist"):
            _forbid(parsed, lines, path, "time", key,
                    "applies to the random-transmission model only")
        step_mean = 1.0

    # --- warden --------------------------------------------------------
    warden_model = parsed.get("warden", {}).get("model", "none")
    if warden_model not in ("none", "patrolling-constant", "patrolling-linear", "surveillance"):
        fail("warden", "model", f"unknown warden model '{warden_model}'")
    wardens = parsed.get("warden", {}).get("wardens")
    window = parsed.get("warden", {}).get("window")
    if warden_model.startswith("patrolling"):
        if wardens is None:
            fail("warden", "model", f"warden model '{warden_model}' requires 'wardens'")
        if wardens < 1:
            fail("warden", "wardens", "wardens must be at least 1")
        if time_model != "constant":
            fail("warden", "model",
                 "patrolling wardens pair with the constant time model only")
        _forbid(parsed, lines, path, "warden", "window",
                "applies to the surveillance model only")
    elif warden_model == "surveillance":
        if window is None:
            fail("warden", "model", "warden model 'surveillance' requires 'window'")
        if window <= 0:
            fail("warden", "window", "window must be positive")
        if time_model != "random":
            fail("warden", "model",
                 "surveillance pairs with the random time model only")
        _forbid(parsed, lines, path, "warden", "wardens",
                "applies to patrolling models only")
    else:
        for key in ("wardens", "window"):
            _forbid(parsed, lines, path, "warden", key,
                    "needs a warden model other than 'none'")

    # --- mode-specific requirements -------------------------------------
    if mode == "sweep" or (mode is None and "n_range" in run):
        n_range = run.get("n_range")
        if mode == "sweep":
            if warden_model == "none":
                fail("run", "mode", "sweep mode requires a warden model")
            if n_range is None:
                fail("run", "mode", "sweep mode requires 'n_range'")
            for n in n_range:
                if not 1 <= n <= r:
                    fail("run", "n_range", f"swept n={n} violates 1 <= n <= r (relays = {r})")
            if "fixed-k" in strategies and "fixed_k" not in run:
                fail("run", "strategies", "strategy fixed-k requires 'fixed_k'")
            if "fixed-offset" in strategies and "fixed_offset" not in run:
                fail("run", "strategies", "strategy fixed-offset requires 'fixed_offset'")
    else:
        n_range = run.get("n_range")
    if mode in ("simulate", "analytic", "covert"):
        if k_values is None:
            fail("code", "message_len", f"{mode} mode requires 'data_chunks'")
        if n_values is None:
            fail("code", "message_len", f"{mode} mode requires 'coded_chunks'")

    cfg = ExperimentConfig(
        mode=mode,
        v=v,
        d=d,
        r=r,
        m=m,
        k_values=k_values,
        n_values=n_values,
        time_model=time_model,
        step_dist=step_dist,
        step_mean=step_mean,
        rate=rate,
        warden_model=warden_model,
        wardens=wardens,
        window=window,
        trials=trials,
        seed=seed,
        out=run.get("out"),
        per_trial_out=run.get("per_trial_out"),
        strategies=strategies,
        n_range=n_range,
        fixed_k=run.get("fixed_k"),
        fixed_offset=run.get("fixed_offset"),
        source=path,
    )
    if apply_env:
        apply_env_overrides(cfg)
    return cfg


def n_max_allowed(n_values: list[int] | None) -> int:
    return max(n_values) if n_values else 255


def apply_env_overrides(cfg: ExperimentConfig) -> None:
    """Apply RELAYWALK_SEED / RELAYWALK_TRIALS / RELAYWALK_OUT."""
    seed = os.environ.get(ENV_PREFIX + "SEED")
    trials = os.environ.get(ENV_PREFIX + "TRIALS")
    out = os.environ.get(ENV_PREFIX + "OUT")
    if seed is not None:
        try:
            cfg.seed = int(seed, 10)
        except ValueError as exc:
            raise ConfigError(f"bad {ENV_PREFIX}SEED: {seed!r}") from exc
    if trials is not None:
        try:
            cfg.trials = int(trials, 10)
        except ValueError as exc:
            raise ConfigError(f"bad {ENV_PREFIX}TRIALS: {trials!r}") from exc
        if cfg.trials < 1:
            raise ConfigError(f"bad {ENV_PREFIX}TRIALS: must be positive")
    if out is not None:
        cfg.out = out
