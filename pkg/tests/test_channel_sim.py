from __future__ import annotations

import math
import random

import pytest

from nestedvt import (
    ChannelParams,
    alpha_to_p,
    bits_to_text,
    capacity,
    chop,
    chop_and_shuffle,
    shuffle,
)
from nestedvt.channel_sim import read_fragments, write_fragments
from nestedvt.rng import derived_seed

from golden import X64, X64_CHOP_LENGTHS, X64_SHUFFLED


def test_chop_p_zero_is_identity():
    assert chop(X64, ChannelParams(0.0, seed=1)) == [X64]


def test_chop_p_one_singles():
    pieces = chop(X64, ChannelParams(1.0, seed=1))
    assert len(pieces) == len(X64)
    assert all(len(p) == 1 for p in pieces)


def test_chop_golden_stream():
    pieces = chop(X64, ChannelParams(0.1, seed=42))
    assert [len(p) for p in pieces] == X64_CHOP_LENGTHS


def test_shuffle_golden_permutation():
    params = ChannelParams(0.1, seed=42)
    fragments = shuffle(chop(X64, params), params)
    assert [bits_to_text(f.bits) for f in fragments] == X64_SHUFFLED
    assert [f.id for f in fragments] == list(range(1, len(fragments) + 1))


def test_chop_lossless_many_seeds():
    rng = random.Random(3)
    for seed in range(200):
        n = rng.randint(1, 400)
        x = tuple(rng.getrandbits(1) for _ in range(n))
        pieces = chop(x, ChannelParams(rng.random(), seed=seed))
        joined = ()
        for p in pieces:
            assert len(p) >= 1
            joined += p
        assert joined == x


def test_shuffle_single_fragment_identity():
    params = ChannelParams(0.0, seed=9)
    fragments = shuffle([X64], params)
    assert len(fragments) == 1
    assert fragments.fragments[0].bits == X64


def test_shuffle_preserves_multiset():
    params = ChannelParams(0.3, seed=77)
    pieces = chop(X64, params)
    fragments = shuffle(pieces, params)
    assert sorted(f.bits for f in fragments) == sorted(tuple(p) for p in pieces)


def test_channel_determinism():
    params = ChannelParams(0.2, seed=123)
    assert chop_and_shuffle(X64, params) == chop_and_shuffle(X64, params)


def test_fragment_count_matches_break_rate():
    n, p, trials = 512, 0.08, 2000
    x = tuple([1] * n)
    total = sum(
        len(chop(x, ChannelParams(p, seed=derived_seed(31337, t)))) for t in range(trials)
    )
    mean_m = total / trials
    expected = 1 + (n - 1) * p
    sigma = math.sqrt((n - 1) * p * (1 - p) / trials)
    assert abs(mean_m - expected) <= 3 * sigma


def test_alpha_to_p():
    assert alpha_to_p(0.5, 1024) == pytest.approx(0.05)
    assert alpha_to_p(0.0, 64) == 0.0
    assert alpha_to_p(1.0, 256) == pytest.approx(0.125)
    assert alpha_to_p(100.0, 4) == 1.0  # clamped


def test_alpha_to_p_validation():
    with pytest.raises(ValueError):
        alpha_to_p(0.5, 1)
    with pytest.raises(ValueError):
        alpha_to_p(-0.1, 64)


def test_capacity():
    assert capacity(0.0) == 1.0
    assert capacity(0.5) == pytest.approx(0.6065306597126334)
    assert capacity(1.0) == pytest.approx(0.36787944117144233)


def test_fragment_file_roundtrip(tmp_path):
    params = ChannelParams(0.15, seed=5)
    fragments = chop_and_shuffle(X64, params)
    path = tmp_path / "fragments.txt"
    write_fragments(path, fragments, n=len(X64), seed=5, p=0.15)
    loaded, header = read_fragments(path)
    assert [f.bits for f in loaded] == [f.bits for f in fragments]
    assert header["n"] == "64"
    assert header["seed"] == "5"
    assert float(header["p"]) == 0.15
