import math

import pytest

from vfp_harness import lr_trace, restart_lr


class TestRestartLr:
    def test_cycle_start_returns_lr_max_exactly(self):
        for epoch in (0, 5, 10, 195):
            assert restart_lr(epoch) == 0.01

    def test_values_stay_inside_band(self):
        for epoch in range(200):
            lr = restart_lr(epoch)
            assert 0.001 <= lr <= 0.01

    def test_monotonically_decreasing_within_a_cycle(self):
        values = [restart_lr(e) for e in range(5)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_cosine_shape_at_half_period(self):
        # period 4: epoch 2 sits at cos(pi/2) = 0, i.e. the midpoint of the band
        assert restart_lr(2, period=4) == pytest.approx(0.0055)

    def test_periodicity(self):
        for epoch in range(15):
            assert restart_lr(epoch) == restart_lr(epoch + 5)

    def test_floor_is_approached_but_never_crossed(self):
        # the last epoch of a cycle is the lowest, at cos(pi*(p-1)/p)
        lowest = restart_lr(4)
        expected = 0.001 + 0.009 * (1 + math.cos(math.pi * 4 / 5)) / 2
        assert lowest == pytest.approx(expected)
        assert lowest > 0.001

    def test_period_one_is_constant_lr_max(self):
        assert [restart_lr(e, period=1) for e in range(4)] == [0.01] * 4

    def test_custom_band(self):
        assert restart_lr(0, lr_max=0.1, lr_min=0.05) == 0.1
        assert restart_lr(3, lr_max=0.1, lr_min=0.05, period=6) == pytest.approx(0.075)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"period": 0},
            {"lr_min": 0.01, "lr_max": 0.01},
            {"lr_min": 0.02, "lr_max": 0.01},
        ],
    )
    def test_invalid_parameters_rejected(self, kwargs):
        with pytest.raises(ValueError):
            restart_lr(0, **kwargs)

    def test_negative_epoch_rejected(self):
        with pytest.raises(ValueError):
            restart_lr(-1)


class TestLrTrace:
    def test_trace_matches_pointwise_evaluation(self):
        trace = lr_trace(23)
        assert trace == [restart_lr(e) for e in range(23)]

    def test_restart_epochs_in_long_trace(self):
        trace = lr_trace(200)
        assert len(trace) == 200
        for epoch in range(0, 200, 5):
            assert trace[epoch] == 0.01
