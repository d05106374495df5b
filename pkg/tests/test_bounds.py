import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from memlens.bounds import (DecayProfile, complexity_measure, error_curve,
                            rate_bound_interval, tail_sum_profile)
from memlens.sequences import Sequence
from memlens.tensors import singular_values, tensorize


def test_decay_profile_families():
    e = DecayProfile.exponential(0.5)
    assert e(0) == 1.0 and e(3) == 0.125
    p = DecayProfile.power(2.0, a=4.0)
    assert p(0) == 4.0 and p(1) == 1.0
    t = DecayProfile.table([1.0, 0.5], cutoff=4)
    assert t(0) == 1.0 and t(1) == 0.5 and t(4) == 0.5 and t(5) == 0.0


def test_decay_profile_validation():
    with pytest.raises(ValueError):
        DecayProfile.exponential(1.0)
    with pytest.raises(ValueError):
        DecayProfile.power(-1.0)
    with pytest.raises(ValueError):
        DecayProfile.table([0.5, 1.0], cutoff=4)
    with pytest.raises(ValueError):
        DecayProfile.table([1.0, 0.5], cutoff=0)
    with pytest.raises(ValueError):
        DecayProfile(family="mystery")
    with pytest.raises(ValueError):
        DecayProfile.exponential(0.5)(-1)


def test_tail_sum_profile_worked_values():
    rho = Sequence.from_values([1, 0, 0, 1])
    for K in (2, 3, 4):
        prof = tail_sum_profile(rho, 2, K)
        assert len(prof) == 2 * K - K + 1
        assert prof[1].value ** 2 == pytest.approx(2.0, abs=1e-9)
        assert prof[2].value ** 2 == pytest.approx(1.0, abs=1e-9)
        assert prof[0].value ** 2 == pytest.approx(3.0, abs=1e-9)
        for s in range(3, len(prof)):
            assert prof[s].value <= 1e-9


def test_tail_sum_profile_is_non_increasing(rng):
    for _ in range(20):
        rho = Sequence.from_values(rng.normal(size=8))
        prof = tail_sum_profile(rho, 2, 3)
        vals = [p.value for p in prof]
        assert all(vals[i + 1] <= vals[i] + 1e-12 for i in range(len(vals) - 1))


def test_tail_sum_profile_depth_one_pads_with_zeros():
    prof = tail_sum_profile(Sequence.from_values([3.0, 4.0]), 2, 1)
    assert prof[0].value == pytest.approx(5.0)
    assert prof[1].value == 0.0


def test_complexity_worked_example():
    rho = Sequence.from_values([1, 0, 0, 1])
    g = DecayProfile.exponential(0.5)
    assert complexity_measure(rho, 2, g).value == pytest.approx(4.0, abs=1e-12)


def test_complexity_zero_target_and_cap():
    g = DecayProfile.exponential(0.5)
    assert complexity_measure(Sequence.zero(), 2, g).value == 0.0
    rho = Sequence.from_values([1, 0, 0, 1])
    base = complexity_measure(rho, 2, g).value
    for cap in (3, 5, 7):
        capped = complexity_measure(rho, 2, g, k_cap=cap).value
        assert capped == pytest.approx(base, rel=1e-10)
    with pytest.raises(ValueError):
        complexity_measure(rho, 2, g, k_cap=1)


def test_complexity_signals_infinity_on_starved_profiles():
    rho = Sequence.from_values([1, 0, 0, 1])
    g = DecayProfile.table([1.0], cutoff=0)
    assert math.isinf(complexity_measure(rho, 2, g).value)


def test_complexity_is_absolutely_homogeneous(rng):
    g = DecayProfile.exponential(0.5)
    for _ in range(10):
        rho = Sequence.from_values(rng.normal(size=6))
        alpha = float(rng.normal())
        base = complexity_measure(rho, 2, g).value
        scaled = complexity_measure(rho.scaled(alpha), 2, g).value
        assert scaled == pytest.approx(abs(alpha) * base, rel=1e-9)


def test_complexity_requires_a_splittable_target():
    g = DecayProfile.exponential(0.5)
    with pytest.raises(ValueError):
        complexity_measure(Sequence.geometric(0.9), 2, g)
    value = complexity_measure(Sequence.geometric(0.9, horizon=20), 2, g)
    assert math.isfinite(value.value)


def test_rate_bound_interval_rejects_starved_stacks():
    g = DecayProfile.exponential(0.5)
    rho = Sequence.from_values([1, 0, 0, 1])
    with pytest.raises(ValueError):
        rate_bound_interval(rho, 2, 3, (1, 2, 2, 1), g)


def test_rate_bound_interval_geometric_lower_end():
    g = DecayProfile.exponential(0.5)
    lower, upper = rate_bound_interval(Sequence.geometric(0.5), 2, 3,
                                       (1, 4, 4, 1), g)
    assert lower.value == 0.5 ** 8
    assert lower.value <= upper.value


def test_rate_bound_interval_zero_target():
    g = DecayProfile.exponential(0.5)
    lower, upper = rate_bound_interval(Sequence.zero(), 2, 2, (1, 5, 1), g)
    assert lower.value == 0.0 and upper.value == 0.0


def test_rate_bound_interval_covered_support_has_zero_tail():
    g = DecayProfile.exponential(0.5)
    rho = Sequence.from_values([1, 0, 0, 1])
    lower, upper = rate_bound_interval(rho, 2, 2, (1, 8, 1), g)
    assert lower.value == 0.0
    assert upper.halfwidth == 0.0
    # M = (8 - 4) / 1 = 4, budget = floor(2 * sqrt(4)) = 4, g(2) = 1/4
    assert upper.value == pytest.approx(0.25 * 4.0)


def test_rate_bound_interval_channel_list_shape():
    g = DecayProfile.exponential(0.5)
    rho = Sequence.from_values([1, 0, 0, 1])
    with pytest.raises(ValueError):
        rate_bound_interval(rho, 2, 2, (1, 8, 8, 1), g)
    with pytest.raises(ValueError):
        rate_bound_interval(rho, 2, 2, (2, 8, 1), g)
    with pytest.raises(ValueError):
        rate_bound_interval(rho, 2, 2, (1, 8, 3), g)


def test_rate_bound_sandwich_on_random_targets(rng):
    g = DecayProfile.exponential(0.6)
    for _ in range(20):
        rho = Sequence.from_values(rng.normal(size=12))
        lower, upper = rate_bound_interval(rho, 2, 3, (1, 6, 6, 1), g)
        assert lower.value <= upper.upper + 1e-12


def test_error_curve_row_invariants():
    rho = Sequence.from_values([1, 0, 0, 1])
    table = error_curve(rho, 2, [2, 3], range(1, 9), target_id="edge")
    assert len(table.rows) == 16
    for row in table.rows:
        assert row.upper_bound == row.rank_term + row.tail_term
    for K in (2, 3):
        _, uppers = table.curve(K)
        assert all(uppers[i + 1] <= uppers[i] + 1e-12
                   for i in range(len(uppers) - 1))
    ms, uppers = table.curve(3)
    assert ms == list(range(1, 9))
    assert uppers[-1] == 0.0


def test_error_curve_tail_uses_bracket_upper_end():
    rho3 = Sequence.power()
    table = error_curve(rho3, 2, [3], [1], target_id="rho3")
    row = table.rows[0]
    assert row.tail_term == rho3.tail_norm(8).upper


def test_error_curve_csv_layout():
    rho = Sequence.from_values([1.0])
    table = error_curve(rho, 2, [2], [1, 2], target_id="unit")
    text = table.to_csv()
    lines = text.strip().split("\n")
    assert lines[0] == "target,l,K,M,rank_term,tail_term,upper_bound"
    assert lines[1].startswith("unit,2,2,1,")
    assert len(lines) == 3


def test_error_curve_rejects_bad_widths():
    rho = Sequence.from_values([1.0])
    with pytest.raises(ValueError):
        error_curve(rho, 2, [2], [0])


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 12), st.integers(2, 3))
def test_rank_budget_saturation_zeroes_the_rank_term(M, K):
    rho = Sequence.from_values([1, 0, 0, 1])
    table = error_curve(rho, 2, [K], [M])
    row = table.rows[0]
    budget = math.floor(K * M ** (1.0 / K))
    spec = singular_values(tensorize(rho.truncate(2 ** K), 2, K))
    manual = math.sqrt(float(np.sum(spec.values[budget:] ** 2)))
    assert row.rank_term == pytest.approx(manual, abs=1e-12)
