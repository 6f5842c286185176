"""Pure-Python walk kernels, bit-identical to the compiled twins.

Both kernel implementations drive the walk with the same splitmix64
stream, so a walk produces the same step sequence whichever one is
selected at import.  Neighbor choice uses ``value % d``; the modulo bias
for d < 2**32 is below 2**-32 and far outside anything the statistical
tests can resolve.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def next_u64(state: int) -> tuple[int, int]:
    """Advance the splitmix64 state once; returns (value, new_state)."""
    state = (state + _GOLDEN) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31), state


def prepare_table(adjacency) -> list[list[int]]:
    """Convert an adjacency array into the row layout this kernel walks."""
    return [[int(x) for x in row] for row in adjacency]


def hitting_walk_table(adj, pos, target, state, budget):
    """Walk the adjacency table until landing on a flagged target vertex.

    Returns (steps, vertex, state); steps is -1 if the budget ran out.
    """
    steps = 0
    d = len(adj[0])
    while steps < budget:
        state = (state + _GOLDEN) & _MASK
        z = state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        z ^= z >> 31
        pos = adj[pos][z % d]
        steps += 1
        if target[pos]:
            return steps, pos, state
    return -1, pos, state


def hitting_walk_uniform(v, pos, target, state, budget):
    """Like hitting_walk_table, but each step lands uniformly on any of
    the v vertices (the with-replacement mobility used on complete
    graphs; staying put is allowed)."""
    steps = 0
    while steps < budget:
        state = (state + _GOLDEN) & _MASK
        z = state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        z ^= z >> 31
        pos = z % v
        steps += 1
        if target[pos]:
            return steps, pos, state
    return -1, pos, state
