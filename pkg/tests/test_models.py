import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from memlens.models import (CnnSpec, RnnSpec, cnn_min_depth_expdecay,
                            cnn_representation, effective_filters,
                            power_sum_delta_bound, rnn_min_width_impulse,
                            rnn_representation, synthesize_lowrank,
                            synthesize_radix)
from memlens.sequences import Sequence


def test_cnn_spec_validation():
    CnnSpec(l=2, K=2, channels=(1, 3, 1))
    with pytest.raises(ValueError):
        CnnSpec(l=2, K=2, channels=(1, 3, 2))
    with pytest.raises(ValueError):
        CnnSpec(l=2, K=2, channels=(1, 1))
    with pytest.raises(ValueError):
        CnnSpec(l=2, K=1, channels=(1, 1), filters={(0, 0, 1): (1.0, 0.0)})
    with pytest.raises(ValueError):
        CnnSpec(l=2, K=1, channels=(1, 1), filters={(0, 0, 0): (1.0, 0.0, 0.0)})


def test_cnn_spec_json_round_trip():
    spec = CnnSpec(l=2, K=2, channels=(1, 2, 1),
                   filters={(0, 0, 1): (1.0, 2.0), (1, 1, 0): (0.0, -1.0)})
    back = CnnSpec.from_json(spec.to_json())
    assert back.channels == spec.channels
    assert back.filters == spec.filters
    assert back.filter_count == 2


def test_representation_of_a_two_layer_chain():
    spec = CnnSpec(l=2, K=2, channels=(1, 1, 1),
                   filters={(0, 0, 0): (1.0, 2.0), (1, 0, 0): (3.0, 4.0)})
    rep = cnn_representation(spec)
    assert list(rep.flat_values(4)) == [3.0, 6.0, 4.0, 8.0]


def test_representation_stacks_input_channels():
    spec = CnnSpec(l=2, K=1, channels=(2, 1),
                   filters={(0, 0, 0): (1.0, 0.0), (0, 1, 0): (0.0, 2.0)})
    rep = cnn_representation(spec)
    assert rep.dim == 2
    assert np.array_equal(rep.value(0), [1.0, 0.0])
    assert np.array_equal(rep.value(1), [0.0, 2.0])


def test_representation_stays_in_receptive_field(rng):
    for _ in range(10):
        K = int(rng.integers(1, 4))
        channels = (1,) + tuple(int(rng.integers(1, 3)) for _ in range(K - 1)) + (1,)
        filters = {}
        for k in range(K):
            for j in range(channels[k]):
                for i in range(channels[k + 1]):
                    filters[(k, j, i)] = tuple(rng.normal(size=2))
        rep = cnn_representation(CnnSpec(l=2, K=K, channels=channels,
                                         filters=filters))
        r = rep.radius()
        assert r is None or r <= 2 ** K - 1


def test_effective_filters_values():
    assert effective_filters((4, 4), 2) == 12.0
    assert effective_filters((1,), 2) == 0.0
    assert effective_filters((2, 2, 1), 3, d=2) == -1.5
    spec = CnnSpec(l=2, K=2, channels=(1, 4, 1))
    assert effective_filters(spec, 9, 9) == 0.0
    with pytest.raises(ValueError):
        effective_filters((), 2)


def test_radix_synthesis_worked_example():
    spec = synthesize_radix(Sequence.impulse(19), 4)
    assert spec.K == 3 and spec.channels == (1, 1, 1, 1)
    assert spec.filter_count == 3
    assert spec.filters[(0, 0, 0)] == (0.0, 0.0, 0.0, 1.0)
    assert spec.filters[(1, 0, 0)] == (1.0, 0.0, 0.0, 0.0)
    assert spec.filters[(2, 0, 0)] == (0.0, 1.0, 0.0, 0.0)
    diff = cnn_representation(spec).plus(Sequence.impulse(19).scaled(-1.0))
    assert float(diff.norm()) == 0.0


def test_radix_synthesis_shallow_and_degenerate_cases():
    dense = synthesize_radix(Sequence.from_values([1.0, 0.0, -2.0]), 4)
    assert dense.K == 1
    assert dense.filters[(0, 0, 0)] == (1.0, 0.0, -2.0, 0.0)
    zero = synthesize_radix(Sequence.zero(), 3)
    assert zero.filter_count == 0
    assert cnn_representation(zero).radius() is None
    with pytest.raises(ValueError):
        synthesize_radix(Sequence.geometric(0.5), 2)
    with pytest.raises(ValueError):
        synthesize_radix(Sequence.from_entries({0: (1.0, 1.0)}, dim=2), 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(1, 3), st.data())
def test_radix_synthesis_replays_exactly(l, K, data):
    size = l ** K
    support = data.draw(st.dictionaries(st.integers(0, size - 1),
                                        st.integers(-9, 9).filter(bool),
                                        min_size=1, max_size=6))
    target = Sequence.from_entries({t: (float(v),) for t, v in support.items()})
    spec = synthesize_radix(target, l)
    diff = cnn_representation(spec).plus(target.scaled(-1.0))
    assert float(diff.norm()) == 0.0
    assert spec.filter_count <= spec.K * target.sparsity()


def test_lowrank_synthesis_replays_the_window(rng):
    for l, K in ((2, 3), (3, 2)):
        target = Sequence.from_values(rng.normal(size=l ** K))
        spec = synthesize_lowrank(target, l, K)
        diff = cnn_representation(spec).plus(target.scaled(-1.0))
        assert float(diff.norm()) <= 1e-10 * float(target.norm())
    rank1 = Sequence.from_values([3.0, 6.0, 4.0, 8.0])
    spec = synthesize_lowrank(rank1, 2, 2)
    assert spec.channels == (1, 1, 1)
    zero = synthesize_lowrank(Sequence.zero(), 2, 2)
    assert zero.filter_count == 0


def test_rnn_spec_coercion_and_json():
    spec = RnnSpec(m=2, c=[1.0, 0.5], W=[[0.5, 0.0], [0.0, 0.25]], U=[[1.0], [2.0]])
    assert spec.dim == 1
    assert spec.spectral_radius() == pytest.approx(0.5)
    back = RnnSpec.from_json(spec.to_json())
    assert np.array_equal(back.W, spec.W)
    with pytest.raises(ValueError):
        RnnSpec(m=2, c=[1.0], W=np.eye(2), U=[[1.0], [1.0]])


def test_rnn_representation_is_a_power_sum():
    spec = RnnSpec(m=1, c=[1.0], W=[[0.5]], U=[[0.5]])
    rep = rnn_representation(spec, 6)
    assert rep.value(0)[0] == 0.0
    for t in range(1, 7):
        assert rep.value(t)[0] == pytest.approx(0.5 ** t, rel=1e-15)
    with pytest.raises(ValueError):
        rnn_representation(spec, 0)


def test_power_sum_delta_bound_values_and_errors():
    assert power_sum_delta_bound(4, 10, 0.5).value == pytest.approx(0.4)
    with pytest.raises(ValueError):
        power_sum_delta_bound(0, 1, 1.0)
    with pytest.raises(ValueError):
        power_sum_delta_bound(1, 0, 1.0)
    with pytest.raises(ValueError):
        power_sum_delta_bound(1, 1, -1.0)


def test_rnn_min_width_impulse_values():
    assert rnn_min_width_impulse(10, 0.1) == 20
    assert rnn_min_width_impulse(1, 0.1) == 1
    with pytest.raises(ValueError):
        rnn_min_width_impulse(10, 0.5)
    with pytest.raises(ValueError):
        rnn_min_width_impulse(0, 0.1)


def test_cnn_min_depth_expdecay_values():
    assert cnn_min_depth_expdecay(0.99, 0.01, 2) == 9
    assert cnn_min_depth_expdecay(0.3, 0.3, 2) == 1
    assert cnn_min_depth_expdecay(0.5, 0.25, 2) == 1
    assert cnn_min_depth_expdecay(0.5, 0.24, 2) == 2
    with pytest.raises(ValueError):
        cnn_min_depth_expdecay(1.0, 0.1, 2)
    with pytest.raises(ValueError):
        cnn_min_depth_expdecay(0.5, 1.5, 2)
