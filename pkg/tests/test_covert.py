from __future__ import annotations

import math

import numpy as np
import pytest

from relaywalk.covert import (
    PatrollingConstant,
    PatrollingLinear,
    Surveillance,
    argmax_k_covertness,
    covertness,
    detect_prob,
    evaluate,
    sample_detection,
)


def test_patrolling_constant_reference_value():
    model = PatrollingConstant(wardens=10, d=5, v=100)
    assert detect_prob(model, 100.0) == pytest.approx(0.075, rel=1e-12)
    # chunk length is irrelevant for the constant variant
    assert detect_prob(model, 1.0) == detect_prob(model, 1000.0)


def test_patrolling_linear_reference_value():
    model = PatrollingLinear(wardens=10, d=5, v=100, m=100)
    assert detect_prob(model, 25.0) == pytest.approx(0.01875, rel=1e-12)
    assert detect_prob(model, 100.0) == pytest.approx(0.075, rel=1e-12)


def test_patrolling_linear_clamps_to_one():
    model = PatrollingLinear(wardens=10, d=5, v=10, m=10)
    assert detect_prob(model, 1000.0) == 1.0


def test_surveillance_reference_value():
    model = Surveillance(window=30.0, rate=1.0)
    expected = (11.0 - math.exp(-20.0)) / 30.0
    assert detect_prob(model, 10.0) == pytest.approx(expected, abs=1e-15)
    assert detect_prob(model, 10.0) == pytest.approx(0.36666666666, abs=1e-9)


def test_surveillance_boundary_and_short_window():
    # W = l: the formula collapses to 1, continuously with the W < l branch
    assert detect_prob(Surveillance(window=10.0, rate=1.0), 10.0) == 1.0
    assert detect_prob(Surveillance(window=5.0, rate=1.0), 10.0) == 1.0


def test_surveillance_monotonicity():
    model = lambda w: Surveillance(window=w, rate=0.5)
    by_len = [detect_prob(model(50.0), l) for l in np.linspace(1, 49, 25)]
    assert all(a <= b for a, b in zip(by_len, by_len[1:]))
    by_window = [detect_prob(model(w), 10.0) for w in np.linspace(12, 200, 25)]
    assert all(a >= b for a, b in zip(by_window, by_window[1:]))


def test_model_validation():
    with pytest.raises(ValueError):
        PatrollingConstant(wardens=0, d=5, v=100)
    with pytest.raises(ValueError):
        PatrollingLinear(wardens=10, d=5, v=100, m=0)
    with pytest.raises(ValueError):
        Surveillance(window=0.0, rate=1.0)
    with pytest.raises(ValueError):
        Surveillance(window=10.0, rate=0.0)
    with pytest.raises(ValueError):
        detect_prob(PatrollingConstant(wardens=10, d=5, v=100), 0.0)


def test_covertness_reference_values():
    assert covertness(0.0, 6, 4) == 1.0
    assert covertness(1.0, 6, 4) == 0.0
    assert covertness(0.075, 4, 1) == pytest.approx(0.677187080078125, rel=1e-15)
    with pytest.raises(ValueError):
        covertness(1.5, 6, 4)


def test_covertness_decreases_with_n():
    values = [covertness(0.075, n, 2) for n in range(2, 12)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_evaluate_bundles_the_pieces():
    model = PatrollingConstant(wardens=10, d=5, v=100)
    report = evaluate(model, n=6, k=4, m=100)
    assert report.transmissions == 10
    assert report.p_d == pytest.approx(0.075)
    assert report.p_c == pytest.approx((1 - 0.075) ** 10)


def test_argmax_patrolling_constant_is_one_chunk():
    model = PatrollingConstant(wardens=10, d=5, v=100)
    for n in (1, 2, 5, 17, 60):
        assert argmax_k_covertness(model, n, 100.0) == 1


def test_argmax_patrolling_linear_is_full_split():
    model = PatrollingLinear(wardens=10, d=5, v=100, m=100)
    for n in (1, 2, 5, 17, 60):
        assert argmax_k_covertness(model, n, 100.0) == n


def test_theorem_monotone_covertness_in_k():
    # patrolling-linear: p_c strictly increasing in k; constant: strictly
    # decreasing (exhaustive for moderate n; the acceptance suite covers
    # n up to 100)
    for n in range(1, 26):
        linear = [
            covertness(detect_prob(PatrollingLinear(10, 5, 100, 100), 100.0 / k), n, k)
            for k in range(1, n + 1)
        ]
        assert all(a < b for a, b in zip(linear, linear[1:]))
        const = [
            covertness(detect_prob(PatrollingConstant(10, 5, 100), 100.0 / k), n, k)
            for k in range(1, n + 1)
        ]
        assert all(a > b for a, b in zip(const, const[1:]))


def test_argmax_surveillance_long_window_low_rate():
    """Slow transmissions against a short window: the exhaustive argmax.

    With window 30 and chunk lengths 100/k, any k <= 3 makes the chunk
    longer than the window, forcing certain detection; the detection
    probability grows with chunk length, and splitting all the way to
    k = n wins.  Frozen against the in-test exhaustive oracle.
    """
    model = Surveillance(window=30.0, rate=0.01)
    best = argmax_k_covertness(model, 5, 100.0)
    oracle = max(
        range(1, 6),
        key=lambda k: covertness(detect_prob(model, 100.0 / k), 5, k),
    )
    assert best == oracle == 5
    assert covertness(detect_prob(model, 100.0 / 3), 5, 3) == 0.0


def test_argmax_surveillance_matches_exhaustive_on_grid():
    for window in (15.0, 30.0, 100.0):
        for rate in (0.2, 1.0, 5.0):
            model = Surveillance(window=window, rate=rate)
            for n in (1, 3, 6, 10):
                best = argmax_k_covertness(model, n, 10.0)
                oracle = min(
                    range(1, n + 1),
                    key=lambda k: (-covertness(detect_prob(model, 10.0 / k), n, k), k),
                )
                assert best == oracle


def test_sample_detection_patrolling_frequency():
    model = PatrollingConstant(wardens=10, d=5, v=100)
    rng = np.random.default_rng(8)
    trials = 100000
    hits = sum(sample_detection(model, 100.0, rng) for _ in range(trials))
    se = math.sqrt(0.075 * 0.925 / trials)
    assert abs(hits / trials - 0.075) < 3 * se


def test_sample_detection_surveillance_frequency():
    model = Surveillance(window=30.0, rate=1.0)
    rng = np.random.default_rng(9)
    trials = 100000
    hits = sum(sample_detection(model, 10.0, rng) for _ in range(trials))
    p = detect_prob(model, 10.0)
    se = math.sqrt(p * (1 - p) / trials)
    assert abs(hits / trials - p) < 3 * se


def test_sample_detection_short_window_always_detects():
    model = Surveillance(window=5.0, rate=1.0)
    rng = np.random.default_rng(10)
    assert all(sample_detection(model, 10.0, rng) for _ in range(200))


def test_sample_detection_respects_given_transfer_time():
    model = Surveillance(window=10.0, rate=1.0)
    rng = np.random.default_rng(11)
    # a transfer longer than the window is always observed
    assert all(
        sample_detection(model, 3.0, rng, transfer_time=25.0) for _ in range(100)
    )
    # a zero-length transfer is never observed (arrival is at time > 0)
    assert not any(
        sample_detection(model, 3.0, rng, transfer_time=0.0) for _ in range(100)
    )
