# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled walk kernels.

Mirrors _walk_py bit for bit: same splitmix64 stream, same neighbor
selection, so results are identical whichever kernel is active.
"""

import numpy as np

ctypedef unsigned long long u64

cdef u64 _GOLDEN = 0x9E3779B97F4A7C15ULL
cdef u64 _MIX1 = 0xBF58476D1CE4E5B9ULL
cdef u64 _MIX2 = 0x94D049BB133111EBULL


cdef inline u64 _mix(u64 z) noexcept nogil:
    z = (z ^ (z >> 30)) * _MIX1
    z = (z ^ (z >> 27)) * _MIX2
    return z ^ (z >> 31)


def next_u64(state):
    """Advance the splitmix64 state once; returns (value, new_state)."""
    cdef u64 s = <u64>state
    s += _GOLDEN
    return _mix(s), s


def prepare_table(adjacency):
    """Convert an adjacency array into the row layout this kernel walks."""
    return np.ascontiguousarray(adjacency, dtype=np.intc)


def hitting_walk_table(const int[:, ::1] adj, Py_ssize_t pos, const unsigned char[::1] target,
                       state, long long budget):
    """Walk the adjacency table until landing on a flagged target vertex.

    Returns (steps, vertex, state); steps is -1 if the budget ran out.
    """
    cdef u64 s = <u64>state
    cdef u64 d = <u64>adj.shape[1]
    cdef long long steps = 0
    cdef bint found = False
    with nogil:
        while steps < budget:
            s += _GOLDEN
            pos = <Py_ssize_t>adj[pos, <Py_ssize_t>(_mix(s) % d)]
            steps += 1
            if target[pos]:
                found = True
                break
    if found:
        return steps, pos, s
    return -1, pos, s


def hitting_walk_uniform(Py_ssize_t v, Py_ssize_t pos, const unsigned char[::1] target,
                         state, long long budget):
    """Like hitting_walk_table, but each step lands uniformly on any of
    the v vertices (the with-replacement mobility used on complete
    graphs; staying put is allowed)."""
    cdef u64 s = <u64>state
    cdef u64 uv = <u64>v
    cdef long long steps = 0
    cdef bint found = False
    with nogil:
        while steps < budget:
            s += _GOLDEN
            pos = <Py_ssize_t>(_mix(s) % uv)
            steps += 1
            if target[pos]:
                found = True
                break
    if found:
        return steps, pos, s
    return -1, pos, s
