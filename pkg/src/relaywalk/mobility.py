"""Walker movement and meeting times.

A step on a regular graph moves to a uniformly chosen neighbor.  On a
complete graph a step is a uniform draw over all v vertices (staying put
is allowed): that with-replacement idealization is what makes the staged
geometric delay sums exact on complete graphs, and it is the mobility
model the closed forms assume there.

A meeting happens only on arrival after at least one step; standing on a
target at time zero does not count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import _kernel
from .graph import Graph
from .stochastic import WalkStream

STEP_BUDGET = 10**9


class StepBudgetExceeded(RuntimeError):
    """A walk ran past its step budget without meeting a target."""


@dataclass(frozen=True)
class WalkerState:
    position: int
    steps_taken: int = 0


def step(state: WalkerState, g: Graph, walk: WalkStream) -> WalkerState:
    """Advance one step; returns the new state."""
    if not 0 <= state.position < g.v:
        raise ValueError("walker position out of range")
    if g.complete:
        pos = walk.next_below(g.v)
    else:
        pos = int(g.adjacency[state.position, walk.next_below(g.d)])
    return WalkerState(position=pos, steps_taken=state.steps_taken + 1)


def walk_until(
    g: Graph,
    position: int,
    target_mask: bytearray,
    walk: WalkStream,
    budget: int = STEP_BUDGET,
) -> tuple[int, int]:
    """Walk until landing on a vertex whose mask byte is nonzero.

    Returns (steps, vertex).  The mask is indexed by vertex and is not
    copied, so callers can update it between calls.
    """
    kind, table = g.walk_context()
    if kind == "uniform":
        steps, pos, state = _kernel.hitting_walk_uniform(
            table, position, target_mask, walk.state, budget
        )
    else:
        steps, pos, state = _kernel.hitting_walk_table(
            table, position, target_mask, walk.state, budget
        )
    walk.state = state
    if steps < 0:
        raise StepBudgetExceeded(f"no meeting within {budget} steps")
    return int(steps), int(pos)


def steps_to_next_meeting(
    state: WalkerState,
    g: Graph,
    targets: Iterable[int],
    walk: WalkStream,
    budget: int = STEP_BUDGET,
) -> tuple[int, WalkerState]:
    """Steps until the walker next arrives on any target vertex.

    Returns (steps, new_state) where the new position is the target that
    was met.  ``targets`` must be non-empty.
    """
    mask = bytearray(g.v)
    count = 0
    for t in targets:
        if not 0 <= t < g.v:
            raise ValueError(f"target {t} out of range")
        mask[t] = 1
        count += 1
    if count == 0:
        raise ValueError("targets must be non-empty")
    steps, pos = walk_until(g, state.position, mask, walk, budget)
    return steps, WalkerState(position=pos, steps_taken=state.steps_taken + steps)
