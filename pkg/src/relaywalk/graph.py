"""Graph generation, relay placement, and the degree correction factor.

Random regular graphs are sampled with the configuration (pairing)
model: pair up vertex stubs uniformly, reject the pairing outright if it
contains a self-loop or parallel edge, and additionally condition on
connectivity.  Full rejection keeps the sample exactly uniform over
simple connected d-regular graphs; for desk-scale v*d the acceptance
rate (about exp(-(d*d-1)/4) for large v) keeps this affordable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from collections import deque

import numpy as np

from . import _kernel

COMPLETE = "complete"

_DEFAULT_ATTEMPTS = 10_000


def degree_correction(d: int | str) -> float:
    """Correction factor (d-1)/(d-2) entering meeting rates on regular
    graphs; 1 on complete graphs."""
    if d == COMPLETE:
        return 1.0
    if not isinstance(d, (int, np.integer)) or isinstance(d, bool):
        raise ValueError(f"degree must be an integer >= 3 or {COMPLETE!r}")
    if d < 3:
        raise ValueError("degree must be at least 3 for regular graphs")
    return (d - 1) / (d - 2)


@dataclass
class Graph:
    """Immutable simple graph; vertices are labeled 0..v-1.

    ``adjacency`` has one row per vertex listing its d neighbors.  For
    the complete variant d = v - 1 and mobility treats a step as a
    uniform draw over all v vertices (see mobility module).
    """

    v: int
    d: int
    adjacency: np.ndarray
    complete: bool = False
    _walk_ctx: object = field(default=None, repr=False, compare=False)

    @property
    def theta(self) -> float:
        return degree_correction(COMPLETE if self.complete else self.d)

    def neighbors(self, u: int) -> np.ndarray:
        return self.adjacency[u]

    def walk_context(self):
        """Kernel handle: ('uniform', v) on complete graphs, else
        ('table', prepared adjacency)."""
        if self._walk_ctx is None:
            if self.complete:
                self._walk_ctx = ("uniform", self.v)
            else:
                self._walk_ctx = ("table", _kernel.prepare_table(self.adjacency))
        return self._walk_ctx


def _build_adjacency(v: int, d: int, us: np.ndarray, ws: np.ndarray) -> np.ndarray:
    # each undirected edge contributes one slot at both ends; a stable
    # sort groups the v*d endpoint slots by vertex, d apiece
    ends = np.concatenate([us, ws])
    other = np.concatenate([ws, us])
    order = np.argsort(ends, kind="stable")
    return other[order].reshape(v, d).astype(np.int32)


def _connected(adjacency: np.ndarray) -> bool:
    v = adjacency.shape[0]
    seen = np.zeros(v, dtype=bool)
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for w in adjacency[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                queue.append(int(w))
    return count == v


def gen_random_regular(
    v: int,
    d: int,
    seed: int | np.random.Generator,
    *,
    max_attempts: int = _DEFAULT_ATTEMPTS,
) -> Graph:
    """Sample a uniform simple connected d-regular graph on v vertices.

    Raises RuntimeError if no simple connected pairing is found within
    ``max_attempts`` (disconnected samples are regenerated from the same
    budget).
    """
    if not isinstance(d, (int, np.integer)) or isinstance(d, bool):
        raise ValueError("degree must be an integer")
    if d < 3:
        raise ValueError("degree must be at least 3")
    if d >= v:
        raise ValueError("degree must be smaller than the vertex count")
    if (v * d) % 2 != 0:
        raise ValueError("v * d must be even")

    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(v, dtype=np.int64), d)
    for _ in range(max_attempts):
        pairing = rng.permutation(stubs).reshape(-1, 2)
        us = np.minimum(pairing[:, 0], pairing[:, 1])
        ws = np.maximum(pairing[:, 0], pairing[:, 1])
        if (us == ws).any():
            continue
        keys = us * v + ws
        if np.unique(keys).size != keys.size:
            continue
        adjacency = _build_adjacency(v, d, us, ws)
        if not _connected(adjacency):
            continue
        return Graph(v=v, d=d, adjacency=adjacency)
    raise RuntimeError(
        f"no simple connected {d}-regular pairing on {v} vertices "
        f"within {max_attempts} attempts"
    )


def gen_complete(v: int) -> Graph:
    """Complete graph on v >= 2 vertices."""
    if v < 2:
        raise ValueError("complete graph needs at least 2 vertices")
    ids = np.arange(v, dtype=np.int32)
    adjacency = np.empty((v, v - 1), dtype=np.int32)
    for u in range(v):
        adjacency[u, :u] = ids[:u]
        adjacency[u, u:] = ids[u + 1 :]
    return Graph(v=v, d=v - 1, adjacency=adjacency, complete=True)


@dataclass
class RelayPlacement:
    """A set of relay vertices plus which chunk each one holds.

    A relay stores at most one chunk; occupancy maps vertex -> chunk
    index.
    """

    relays: frozenset[int]
    occupancy: dict[int, int] = field(default_factory=dict)

    def occupy(self, vertex: int, chunk: int) -> None:
        if vertex not in self.relays:
            raise ValueError(f"vertex {vertex} is not a relay")
        if vertex in self.occupancy:
            raise ValueError(f"relay {vertex} already holds a chunk")
        self.occupancy[vertex] = chunk

    def chunk_at(self, vertex: int) -> int | None:
        return self.occupancy.get(vertex)

    @property
    def occupied(self) -> frozenset[int]:
        return frozenset(self.occupancy)


def place_relays(g: Graph, r: int, seed: int | np.random.Generator) -> RelayPlacement:
    """Place r relays uniformly without replacement on the vertices."""
    if not 1 <= r <= g.v:
        raise ValueError("relay count must be between 1 and v")
    rng = np.random.default_rng(seed)
    chosen = rng.choice(g.v, size=r, replace=False)
    return RelayPlacement(relays=frozenset(int(x) for x in chosen))


def save_edgelist(g: Graph, path) -> None:
    """Write 'v d' then one 'u w' line per undirected edge (u < w)."""
    lines = [f"{g.v} {g.d}"]
    for u in range(g.v):
        for w in g.adjacency[u]:
            if u < w:
                lines.append(f"{u} {w}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_edgelist(path) -> Graph:
    """Read a graph written by save_edgelist, validating regularity."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = [line.strip() for line in fh if line.strip()]
    if not raw:
        raise ValueError(f"{path}: empty edge-list file")
    head = raw[0].split()
    if len(head) != 2:
        raise ValueError(f"{path}:1: expected 'v d' header")
    v, d = int(head[0]), int(head[1])
    if (v * d) % 2 != 0:
        raise ValueError(f"{path}:1: v * d must be even")
    expected_edges = v * d // 2
    if len(raw) - 1 != expected_edges:
        raise ValueError(
            f"{path}: expected {expected_edges} edges, found {len(raw) - 1}"
        )
    seen: set[tuple[int, int]] = set()
    neighbors: list[list[int]] = [[] for _ in range(v)]
    for idx, line in enumerate(raw[1:], start=2):
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{idx}: expected 'u w'")
        u, w = int(parts[0]), int(parts[1])
        if u == w:
            raise ValueError(f"{path}:{idx}: self-loop {u}")
        if not (0 <= u < v and 0 <= w < v):
            raise ValueError(f"{path}:{idx}: vertex out of range")
        key = (min(u, w), max(u, w))
        if key in seen:
            raise ValueError(f"{path}:{idx}: duplicate edge {key}")
        seen.add(key)
        neighbors[u].append(w)
        neighbors[w].append(u)
    for u, ns in enumerate(neighbors):
        if len(ns) != d:
            raise ValueError(f"{path}: vertex {u} has degree {len(ns)}, expected {d}")
    adjacency = np.array(neighbors, dtype=np.int32)
    return Graph(v=v, d=d, adjacency=adjacency, complete=(d == v - 1))
