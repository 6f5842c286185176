from __future__ import annotations

from fractions import Fraction

import pytest

from relaywalk.analytic import (
    expected_collection_random,
    expected_delay_const,
    expected_delay_random,
    expected_dissemination_random,
    harmonic,
    optimal_k_random,
    optimal_n_const,
    optimal_n_random,
)


def test_harmonic_numbers():
    assert harmonic(0) == 0.0
    assert harmonic(1) == 1.0
    assert harmonic(4) == pytest.approx(25.0 / 12.0, rel=1e-15)
    assert harmonic(10) == pytest.approx(2.9289682539682538, rel=1e-15)


def test_expected_delay_const_reference_point():
    est = expected_delay_const(100, 5, 10, 6, 4)
    assert est.value == pytest.approx(239.41798941798942, rel=1e-12)
    assert est.transmission == 0.0
    assert est.walking == est.value


def test_expected_delay_const_on_complete_graph():
    # theta = 1: 100 * (H10 + H6 - H4 - H2)
    est = expected_delay_const(100, "complete", 10, 6, 4)
    assert est.value == pytest.approx(0.75 * 239.41798941798942, rel=1e-12)


def test_expected_delay_random_reference_point():
    est = expected_delay_random(100, 5, 10, 6, 4, 100, 1.0, 1.0)
    assert est.value == pytest.approx(499.4179894179894, rel=1e-12)
    # transmission: (n+k)/rate + (n/k+1)m = 10 + 250
    assert est.transmission == pytest.approx(260.0, rel=1e-12)


def test_random_delay_is_sum_of_phases():
    args = (100, 5, 10, 6, 4, 100, 1.0, 1.0)
    total = expected_delay_random(*args)
    diss = expected_dissemination_random(*args)
    coll = expected_collection_random(100, 5, 6, 4, 100, 1.0, 1.0)
    assert diss.value == pytest.approx(268.75132275132273, rel=1e-12)
    assert coll.value == pytest.approx(230.66666666666666, rel=1e-12)
    assert total.value == pytest.approx(diss.value + coll.value, rel=1e-12)


def test_const_delay_increases_with_k():
    values = [expected_delay_const(100, 5, 10, 8, k).value for k in range(1, 9)]
    assert all(a < b for a, b in zip(values, values[1:]))


def test_dissemination_decreases_with_more_relays():
    values = [
        expected_dissemination_random(100, 5, r, 6, 4, 100, 1.0).value
        for r in range(6, 30)
    ]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_step_mean_scales_walking_only():
    slow = expected_delay_random(100, 5, 10, 6, 4, 100, 1.0, 2.0)
    unit = expected_delay_random(100, 5, 10, 6, 4, 100, 1.0, 1.0)
    assert slow.walking == pytest.approx(2 * unit.walking, rel=1e-12)
    assert slow.transmission == unit.transmission


@pytest.mark.parametrize(
    "args",
    [
        (100, 5, 10, 6, 0),  # k < 1
        (100, 5, 10, 4, 6),  # k > n
        (100, 5, 10, 12, 4),  # n > r
        (100, 5, 200, 10, 4),  # r > v
    ],
)
def test_count_constraints_are_enforced(args):
    with pytest.raises(ValueError):
        expected_delay_const(*args)


def test_random_model_parameter_validation():
    with pytest.raises(ValueError):
        expected_delay_random(100, 5, 10, 6, 4, 100, 0.0, 1.0)
    with pytest.raises(ValueError):
        expected_delay_random(100, 5, 10, 6, 4, 100, 1.0, 0.0)
    with pytest.raises(ValueError):
        expected_delay_random(100, 5, 10, 6, 4, -1, 1.0, 1.0)


def test_optimal_n_const_known_points():
    # sqrt(r*k + k) - 1 lands exactly on 3 for r=15, k=1: a flagged tie
    assert optimal_n_const(15, 1) == (3, True)
    assert optimal_n_const(10, 4) == (6, False)
    assert optimal_n_const(10, 2) == (4, False)
    assert optimal_n_const(10, 6) == (8, False)
    assert optimal_n_const(1, 1) == (1, False)


def test_optimal_n_const_tie_partner_is_equal_exactly():
    best, tie = optimal_n_const(15, 1)
    assert tie
    exact = lambda n: (
        _h_exact(15) + _h_exact(n) - _h_exact(15 - n) - _h_exact(n - 1)
    )
    assert exact(best) == exact(best + 1)


def _h_exact(n: int) -> Fraction:
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


def test_optimal_n_const_validation():
    with pytest.raises(ValueError):
        optimal_n_const(10, 0)
    with pytest.raises(ValueError):
        optimal_n_const(4, 5)


def test_optimal_n_random_reference_point():
    bracket, best = optimal_n_random(100, 5, 10, 4, 100, 1.0, 1.0)
    assert best == 5
    low, high = bracket
    assert low == 4
    assert low <= best <= high + 1  # high is the real-valued bound


def test_optimal_n_random_stays_in_bracket_over_grid():
    for v in (50, 100, 200):
        for d in (3, 5, 10):
            for r in (3, 8, 20):
                for k in {1, 2, r // 2, r}:
                    if not 1 <= k <= r:
                        continue
                    for m in (10, 100, 1000):
                        for rate in (0.2, 1.0, 5.0):
                            optimal_n_random(v, d, r, k, m, rate)


def test_optimal_k_random_reference_points():
    assert optimal_k_random(100, 5, 10, 6, 100, 1.0, 1.0) == 4
    # vanishing transmission cost reduces to the unit-step monotonicity
    assert optimal_k_random(100, 5, 10, 6, 0, 1e9, 1.0) == 1


def test_optimal_k_random_in_range():
    for n in range(1, 11):
        k = optimal_k_random(100, 5, 10, n, 100, 1.0, 1.0)
        assert 1 <= k <= n
