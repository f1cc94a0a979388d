import numpy as np
import pytest

from vsgraph.seeding import (MASK64, SeedSpec, combine64, mix64,
                             random_bit_words, tail_mask, words_for)
from vsgraph.seeding import _mix64_array


def test_mix64_matches_vectorized():
    xs = [0, 1, 7, 12345, 2**63, MASK64]
    arr = _mix64_array(np.array(xs, dtype=np.uint64))
    for x, got in zip(xs, arr):
        assert mix64(x) == int(got)


def test_combine64_order_sensitive():
    assert combine64(1, 2) != combine64(2, 1)
    assert combine64(1, 2) == combine64(1, 2)


def test_words_and_tail():
    assert words_for(64) == 1
    assert words_for(65) == 2
    assert words_for(8192) == 128
    assert tail_mask(64) == MASK64
    assert tail_mask(70) == (1 << 6) - 1


def test_random_bit_words_pure_function():
    s = SeedSpec(7, 1)
    a = random_bit_words(s, 3, 8192)
    b = random_bit_words(SeedSpec(7, 1), 3, 8192)
    assert np.array_equal(a, b)


def test_random_bit_words_depend_on_every_key_part():
    base = random_bit_words(SeedSpec(7, 1), 3, 256)
    assert not np.array_equal(base, random_bit_words(SeedSpec(8, 1), 3, 256))
    assert not np.array_equal(base, random_bit_words(SeedSpec(7, 2), 3, 256))
    assert not np.array_equal(base, random_bit_words(SeedSpec(7, 1), 4, 256))
    other_dim = random_bit_words(SeedSpec(7, 1), 3, 320)
    assert not np.array_equal(base, other_dim[:4])


def test_tail_bits_zero():
    words = random_bit_words(SeedSpec(7), 0, 70)
    assert int(words[-1]) >> 6 == 0


def test_invalid_dim_rejected():
    with pytest.raises(ValueError):
        random_bit_words(SeedSpec(7), 0, 0)


def test_derive_changes_stream_not_master():
    s = SeedSpec(7, 1)
    d = s.derive(42)
    assert d.master_seed == 7
    assert d.stream_id != s.stream_id
    assert s.derive(42) == d
    assert s.derive(43) != d


def test_rng_deterministic():
    s = SeedSpec(7, 3)
    assert np.array_equal(s.rng().permutation(100), s.rng().permutation(100))
    assert not np.array_equal(s.rng().permutation(100),
                              s.derive(1).rng().permutation(100))
