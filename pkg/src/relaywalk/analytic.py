"""Closed-form expected delays and optimal chunking.

All formulas run on harmonic-number partial sums and the regular-graph
degree correction.  The walking portion of every delay is

    theta(d) * v * (sum of 1/j over the relevant stage sizes)

which is exact on complete graphs (theta = 1) and an asymptotic
approximation on random regular graphs.

Two delay models are covered:

* unit-step model: each step takes one time unit and transmissions are
  instantaneous, so delay equals walked steps;
* random-transmission model: steps take i.i.d. times with mean
  ``step_mean`` and each chunk transfer costs an independent
  shift-plus-exponential time with shift m/k and rate ``rate``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .graph import degree_correction

_H_FLOAT = [0.0]
_H_EXACT = [Fraction(0)]


def harmonic(n: int) -> float:
    """n-th harmonic number by direct summation; harmonic(0) == 0."""
    if n < 0:
        raise ValueError("harmonic numbers need n >= 0")
    while len(_H_FLOAT) <= n:
        _H_FLOAT.append(_H_FLOAT[-1] + 1.0 / len(_H_FLOAT))
    return _H_FLOAT[n]


def _harmonic_exact(n: int) -> Fraction:
    while len(_H_EXACT) <= n:
        _H_EXACT.append(_H_EXACT[-1] + Fraction(1, len(_H_EXACT)))
    return _H_EXACT[n]


@dataclass(frozen=True)
class DelayEstimate:
    """An expected delay split into walking and transmission parts."""

    value: float
    walking: float
    transmission: float


def _check_counts(v: int, r: int, n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise ValueError("chunk counts must satisfy 1 <= k <= n")
    if n > r:
        raise ValueError("coded chunks cannot exceed relays (n <= r)")
    if r > v:
        raise ValueError("relays cannot exceed vertices (r <= v)")


def _stage_sum(r: int, n: int, k: int) -> float:
    return harmonic(r) + harmonic(n) - harmonic(r - n) - harmonic(n - k)


def expected_delay_const(v: int, d: int | str, r: int, n: int, k: int) -> DelayEstimate:
    """End-to-end expected delay under the unit-step model."""
    _check_counts(v, r, n, k)
    walking = degree_correction(d) * v * _stage_sum(r, n, k)
    return DelayEstimate(value=walking, walking=walking, transmission=0.0)


def _check_random_params(m: float, rate: float, step_mean: float) -> None:
    if m < 0:
        raise ValueError("message length must be non-negative")
    if not rate > 0:
        raise ValueError("transmission rate must be positive")
    if not step_mean > 0:
        raise ValueError("step-time mean must be positive")


def expected_dissemination_random(
    v: int, d: int | str, r: int, n: int, k: int, m: float, rate: float, step_mean: float = 1.0
) -> DelayEstimate:
    """Expected time to spread all n chunks, random-transmission model."""
    _check_counts(v, r, n, k)
    _check_random_params(m, rate, step_mean)
    transmission = n / rate + n * m / k
    walking = degree_correction(d) * v * step_mean * (harmonic(r) - harmonic(r - n))
    return DelayEstimate(walking + transmission, walking, transmission)


def expected_collection_random(
    v: int, d: int | str, n: int, k: int, m: float, rate: float, step_mean: float = 1.0
) -> DelayEstimate:
    """Expected time to gather k of the n spread chunks."""
    if not 1 <= k <= n:
        raise ValueError("chunk counts must satisfy 1 <= k <= n")
    if n > v:
        raise ValueError("coded chunks cannot exceed vertices")
    _check_random_params(m, rate, step_mean)
    transmission = k / rate + m
    walking = degree_correction(d) * v * step_mean * (harmonic(n) - harmonic(n - k))
    return DelayEstimate(walking + transmission, walking, transmission)


def expected_delay_random(
    v: int, d: int | str, r: int, n: int, k: int, m: float, rate: float, step_mean: float = 1.0
) -> DelayEstimate:
    """End-to-end expected delay under the random-transmission model."""
    _check_counts(v, r, n, k)
    _check_random_params(m, rate, step_mean)
    transmission = (n + k) / rate + (n / k + 1.0) * m
    walking = degree_correction(d) * v * step_mean * _stage_sum(r, n, k)
    return DelayEstimate(walking + transmission, walking, transmission)


def _stage_sum_exact(r: int, n: int, k: int) -> Fraction:
    return (
        _harmonic_exact(r)
        + _harmonic_exact(n)
        - _harmonic_exact(r - n)
        - _harmonic_exact(n - k)
    )


def optimal_n_const(r: int, k: int) -> tuple[int, bool]:
    """Delay-minimizing number of coded chunks under the unit-step model.

    The minimizer sits at sqrt(r*k + k) - 1; this evaluates its floor
    and ceiling (clamped to [k, r]) and returns the smaller argmin plus
    a flag marking an exact tie with the next larger n.  Comparisons use
    exact rational arithmetic, so ties are detected reliably.
    """
    if not 1 <= k <= r:
        raise ValueError("need 1 <= k <= r")
    x = math.sqrt(r * k + k) - 1.0
    candidates = sorted({min(max(int(math.floor(x)), k), r), min(max(int(math.ceil(x)), k), r)})
    best = min(candidates, key=lambda n: _stage_sum_exact(r, n, k))
    tie = best + 1 <= r and _stage_sum_exact(r, best + 1, k) == _stage_sum_exact(r, best, k)
    return best, tie


def optimal_n_random(
    v: int, d: int | str, r: int, k: int, m: float, rate: float, step_mean: float = 1.0
) -> tuple[tuple[int, float], int]:
    """Delay-minimizing n under the random-transmission model.

    Returns ((k, sqrt(r*k + k) - 1), n*) where the first element is the
    bracketing interval the minimizer provably lies in and n* is the
    exhaustive argmin of the expected delay over k <= n <= r (ties to
    the smaller n).
    """
    if not 1 <= k <= r:
        raise ValueError("need 1 <= k <= r")
    upper = math.sqrt(r * k + k) - 1.0
    best = min(
        range(k, r + 1),
        key=lambda n: expected_delay_random(v, d, r, n, k, m, rate, step_mean).value,
    )
    if not k <= best <= max(k, math.ceil(upper)):
        raise AssertionError("argmin escaped its proven bracket")
    return (k, upper), best


def optimal_k_random(
    v: int, d: int | str, r: int, n: int, m: float, rate: float, step_mean: float = 1.0
) -> int:
    """Delay-minimizing number of data chunks for fixed n (ties to the
    smaller k), random-transmission model."""
    if not 1 <= n <= r:
        raise ValueError("need 1 <= n <= r")
    return min(
        range(1, n + 1),
        key=lambda k: expected_delay_random(v, d, r, n, k, m, rate, step_mean).value,
    )
