"""The two walk-kernel implementations must agree bit for bit."""

from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest

from relaywalk import _walk_py
from relaywalk.graph import gen_complete, gen_random_regular

_walk_core = pytest.importorskip(
    "relaywalk._walk_core", reason="compiled kernel not built"
)

# First outputs of the splitmix64 reference stream seeded with 0.
SPLITMIX64_SEED0 = (0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F)


def collect_stream(module, seed: int, count: int) -> list[int]:
    state = seed
    out = []
    for _ in range(count):
        value, state = module.next_u64(state)
        out.append(value)
    return out


def test_next_u64_matches_reference_vectors():
    assert collect_stream(_walk_py, 0, 3) == list(SPLITMIX64_SEED0)


def test_compiled_next_u64_matches_pure():
    for seed in (0, 1, 42, 2**64 - 1, 0xDEADBEEF):
        assert collect_stream(_walk_core, seed, 16) == collect_stream(_walk_py, seed, 16)


@pytest.mark.parametrize("seed", [0, 3, 99, 2**63 + 5])
def test_table_walk_parity(seed):
    g = gen_random_regular(40, 5, seed=11)
    mask = bytearray(g.v)
    for u in (2, 17, 33):
        mask[u] = 1
    pure_table = _walk_py.prepare_table(g.adjacency)
    fast_table = _walk_core.prepare_table(g.adjacency)
    for start in (0, 9, 25):
        res_pure = _walk_py.hitting_walk_table(pure_table, start, mask, seed, 10**6)
        res_fast = _walk_core.hitting_walk_table(fast_table, start, mask, seed, 10**6)
        assert tuple(res_pure) == tuple(res_fast)


@pytest.mark.parametrize("seed", [0, 7, 12345])
def test_uniform_walk_parity(seed):
    mask = bytearray(30)
    mask[4] = 1
    res_pure = _walk_py.hitting_walk_uniform(30, 0, mask, seed, 10**6)
    res_fast = _walk_core.hitting_walk_uniform(30, 0, mask, seed, 10**6)
    assert tuple(res_pure) == tuple(res_fast)


def test_budget_exhaustion_returns_minus_one():
    g = gen_complete(10)
    mask = bytearray(g.v)  # no targets: can never hit
    for module, table in (
        (_walk_py, _walk_py.prepare_table(g.adjacency)),
        (_walk_core, _walk_core.prepare_table(g.adjacency)),
    ):
        steps, pos, state = module.hitting_walk_table(table, 0, mask, 5, 25)
        assert steps == -1
        assert 0 <= pos < g.v
        steps, _, _ = module.hitting_walk_uniform(g.v, 0, mask, 5, 25)
        assert steps == -1


def test_exhausted_budget_advances_exactly_budget_steps():
    # two exhausted calls of length b each match one of length 2b
    g = gen_random_regular(20, 3, seed=2)
    table = _walk_py.prepare_table(g.adjacency)
    mask = bytearray(g.v)
    _, pos_a, state_a = _walk_py.hitting_walk_table(table, 0, mask, 77, 13)
    _, pos_a, state_a = _walk_py.hitting_walk_table(table, pos_a, mask, state_a, 13)
    _, pos_b, state_b = _walk_py.hitting_walk_table(table, 0, mask, 77, 26)
    assert (pos_a, state_a) == (pos_b, state_b)


def test_env_var_forces_pure_python_kernel():
    code = "import relaywalk; print(relaywalk.kernel_name)"
    env = dict(os.environ, RELAYWALK_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    assert out.stdout.strip() == "python"


def test_default_kernel_is_compiled_when_available():
    import relaywalk

    if os.environ.get("RELAYWALK_PURE_PYTHON"):
        pytest.skip("pure kernel forced via environment")
    assert relaywalk.kernel_name == "compiled"


def test_prepare_table_accepts_numpy_and_preserves_rows():
    g = gen_random_regular(12, 3, seed=4)
    table = _walk_py.prepare_table(g.adjacency)
    assert [list(row) for row in np.asarray(g.adjacency)] == table
