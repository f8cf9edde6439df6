import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from continualdp import (
    BinaryMechanism,
    RandomSource,
    StreamBounds,
    max_summands,
    num_levels,
    prefix_intervals,
    psum_index,
    theoretical_count_error,
)
from continualdp.counting import BINARY
from continualdp.errors import (
    HorizonExceeded,
    ItemOutOfBounds,
    NonPositiveScale,
    OutOfRange,
)
from continualdp.noise import concentration_bound


def test_stream_bounds():
    assert StreamBounds(-2, 3).width == 5
    assert BINARY.width == 1
    with pytest.raises(OutOfRange):
        StreamBounds(4, 2)


def test_num_levels_and_max_summands():
    assert num_levels(8) == 4
    assert max_summands(8) == 3
    assert num_levels(1) == 1 and max_summands(1) == 1
    # y equals the maximum popcount of any t <= T
    for T in range(1, 200):
        assert max_summands(T) == max(t.bit_count() for t in range(1, T + 1))
        assert num_levels(T) == T.bit_length()


def test_prefix_intervals_cover_exactly():
    for t in range(1, 129):
        ivs = prefix_intervals(t)
        covered = []
        for level, start, end in ivs:
            assert end - start + 1 == 1 << level
            assert (start - 1) % (1 << level) == 0
            covered.extend(range(start, end + 1))
        assert covered == list(range(1, t + 1))
        assert len(ivs) == t.bit_count()


def test_psum_index_is_a_bijection_on_intervals():
    for T in range(1, 25):
        seen = {}
        for i in range(num_levels(T)):
            for t in range(1, T + 1):
                idx = psum_index(i, t, T)
                interval = (i, (t - 1) >> i)
                if idx in seen:
                    assert seen[idx] == interval
                else:
                    seen[idx] = interval
        # distinct intervals map to distinct indices
        assert len(seen) == len(set(seen.values()))


def test_psum_index_bounds():
    with pytest.raises(OutOfRange):
        psum_index(3, 1, 4)  # level beyond x-1
    with pytest.raises(OutOfRange):
        psum_index(0, 5, 4)  # time beyond T


def test_zero_noise_counts_exhaustive_binary_streams():
    for T in range(1, 9):
        for bits in itertools.product((0, 1), repeat=T):
            mech = BinaryMechanism(
                T, 1.0, RandomSource(0), bounds=BINARY, noise_off=True
            )
            total = 0
            for b in bits:
                total += b
                _recs, est = mech.feed(b)
                assert est == total


def test_psum_closing_schedule():
    T = 8
    mech = BinaryMechanism(T, 1.0, RandomSource(0), noise_off=True)
    for t in range(1, T + 1):
        recs, _est = mech.feed(1)
        # a level-i p-sum closes exactly when 2^i divides t
        levels = [r.level for r in recs]
        assert levels == [i for i in range(mech.x) if t % (1 << i) == 0]
        for r in recs:
            assert r.end == t and r.start == t - (1 << r.level) + 1
            assert r.clean == (1 << r.level)


def test_virtual_padding_for_non_power_of_two():
    # T=5: the level-2 p-sum [5..8] and level-1 [5..6] never close
    mech = BinaryMechanism(5, 1.0, RandomSource(0), noise_off=True)
    released = []
    for _ in range(5):
        recs, _ = mech.feed(1)
        released.extend((r.level, r.start) for r in recs)
    assert (2, 5) not in released and (1, 5) not in released
    assert mech.estimate(5) == 5


def test_estimate_uses_dyadic_decomposition():
    mech = BinaryMechanism(8, 1.0, RandomSource(3))
    items = [1, 0, 1, 1, 0, 0, 1, 1]
    for item in items:
        mech.feed(item)
    by_key = {(r.level, r.start): r for r in mech.trace()}
    for t in range(1, 9):
        expected = sum(by_key[(i, s)].noisy for i, s, _e in prefix_intervals(t))
        assert mech.estimate(t) == pytest.approx(expected)


def test_horizon_and_bounds_enforced():
    mech = BinaryMechanism(2, 1.0, RandomSource(0), bounds=BINARY, noise_off=True)
    with pytest.raises(ItemOutOfBounds):
        mech.feed(2)
    mech.feed(1)
    mech.feed(0)
    with pytest.raises(HorizonExceeded):
        mech.feed(1)
    with pytest.raises(OutOfRange):
        mech.estimate(3)


def test_noise_scale_calibration():
    T, eps, width = 10, 0.5, 3.0
    mech = BinaryMechanism(T, eps, RandomSource(1), item_width=width)
    assert mech.per_psum_scale == pytest.approx(width * num_levels(T) / eps)
    for _ in range(T):
        recs, _ = mech.feed(1.0)
        for r in recs:
            assert r.scale == mech.per_psum_scale


def test_raw_scale_mode_and_validation():
    mech = BinaryMechanism(4, 0.0, RandomSource(1), per_psum_scale=2.0)
    assert mech.per_psum_scale == 2.0
    with pytest.raises(NonPositiveScale):
        BinaryMechanism(4, 0.0, RandomSource(1))
    with pytest.raises(NonPositiveScale):
        BinaryMechanism(4, 1.0, RandomSource(1), per_psum_scale=-1.0)


def test_same_seed_same_release():
    def run():
        mech = BinaryMechanism(16, 1.0, RandomSource(77))
        return [mech.feed(1)[1] for _ in range(16)]

    assert run() == run()


def test_theoretical_count_error_composition():
    T, width, eps, delta = 100, 2.0, 0.5, 0.05
    x, y = num_levels(T), max_summands(T)
    assert theoretical_count_error(width, eps, delta, T) == pytest.approx(
        concentration_bound([width * x / eps] * y, delta)
    )


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(min_value=-5, max_value=5), min_size=1, max_size=40),
)
def test_zero_noise_counts_arbitrary_integer_streams(items):
    T = len(items)
    mech = BinaryMechanism(T, 1.0, RandomSource(0), noise_off=True)
    total = 0
    for item in items:
        total += item
        _recs, est = mech.feed(item)
        assert est == total
