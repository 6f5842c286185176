"""Benchmark the compiled walk kernel against the pure-Python fallback.

Both kernels consume the same splitmix64 stream, so besides timing them
this also re-checks that they produce identical walks.  Run as:

    python3 benchmarks/bench_kernels.py [--vertices N] [--degree D]
                                        [--steps S] [--repeats R]
"""

from __future__ import annotations

import argparse
import importlib
import time

from relaywalk import _walk_py
from relaywalk.graph import gen_random_regular


def load_kernels() -> dict[str, object]:
    kernels: dict[str, object] = {"python": _walk_py}
    try:
        kernels["compiled"] = importlib.import_module("relaywalk._walk_core")
    except ImportError:
        pass
    return kernels


def time_walk(impl, kind: str, graph, vertices: int, steps: int, repeats: int) -> float:
    """Best wall-clock seconds to walk `steps` steps with no targets set."""
    table = impl.prepare_table(graph.adjacency)
    mask = bytearray(vertices)  # no targets: the walk runs its full budget
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        if kind == "table":
            out = impl.hitting_walk_table(table, 0, mask, 12345, steps)
        else:
            out = impl.hitting_walk_uniform(vertices, 0, mask, 12345, steps)
        best = min(best, time.perf_counter() - start)
        assert out[0] == -1  # budget exhausted, as arranged
    return best


def check_equality(kernels, graph, vertices: int) -> None:
    """Identical (steps, vertex, state) from every kernel on shared input."""
    mask = bytearray(vertices)
    mask[vertices // 2] = 1
    outputs = set()
    for impl in kernels.values():
        table = impl.prepare_table(graph.adjacency)
        out = impl.hitting_walk_table(table, 0, mask, 98765, 1_000_000)
        outputs.add(tuple(int(x) for x in out))
        out = impl.hitting_walk_uniform(vertices, 0, mask, 98765, 1_000_000)
        outputs.add(tuple(int(x) for x in out))
    assert len(outputs) == 2, f"kernels disagree: {outputs}"


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--vertices", type=int, default=1000)
    parser.add_argument("--degree", type=int, default=5)
    parser.add_argument("--steps", type=int, default=1_000_000)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    kernels = load_kernels()
    graph = gen_random_regular(args.vertices, args.degree, args.seed)
    check_equality(kernels, graph, args.vertices)
    print(f"graph: {args.vertices} vertices, degree {args.degree}; "
          f"{args.steps} steps x {args.repeats} repeats (best shown)")
    if "compiled" not in kernels:
        print("compiled kernel not available; timing the fallback only")

    rates: dict[tuple[str, str], float] = {}
    for kind in ("table", "uniform"):
        for name, impl in kernels.items():
            secs = time_walk(impl, kind, graph, args.vertices, args.steps, args.repeats)
            rates[(kind, name)] = args.steps / secs
            print(f"{kind:8s} {name:9s} {args.steps / secs / 1e6:8.2f} M steps/s")
        if "compiled" in kernels:
            speedup = rates[(kind, "compiled")] / rates[(kind, "python")]
            print(f"{kind:8s} speedup   {speedup:8.1f}x")


if __name__ == "__main__":
    main()
