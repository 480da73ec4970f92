from __future__ import annotations

import random
from itertools import product

import pytest

from nestedvt import (
    ERASURE,
    ErasureConfig,
    UnrecoverableErasures,
    bits_from_text,
    bits_to_text,
    ec_decode,
    ec_encode,
)
from nestedvt.erasure_code import parity_masks

from golden import EC_CODEWORD_K8, EC_MASKS_K8, EC_WORD_K8


def test_config_from_payload():
    cfg = ErasureConfig.from_payload(4, 0.5, seed=1)
    assert (cfg.k, cfg.n_c) == (4, 8)
    cfg0 = ErasureConfig.from_payload(9, 0.0, seed=1)
    assert (cfg0.k, cfg0.n_c) == (9, 9)


def test_config_from_code_length():
    cfg = ErasureConfig.from_code_length(14, 0.25, seed=1)
    assert (cfg.k, cfg.n_c) == (10, 14)
    # rate never drops below 1 - eps - 1/n_c
    for n_c in range(2, 60):
        for eps in (0.1, 0.25, 0.5, 0.75):
            c = ErasureConfig.from_code_length(n_c, eps, seed=0)
            assert c.k / c.n_c >= 1 - eps - 1 / c.n_c


def test_config_validation():
    with pytest.raises(ValueError):
        ErasureConfig(k=5, n_c=4, epsilon=0.1, seed=0)
    with pytest.raises(ValueError):
        ErasureConfig(k=1, n_c=2, epsilon=1.0, seed=0)


def test_encode_rate_one_is_identity():
    cfg = ErasureConfig.from_payload(6, 0.0, seed=3)
    w = bits_from_text("101001")
    assert ec_encode(w, cfg) == w


def test_encode_systematic_prefix():
    cfg = ErasureConfig.from_payload(4, 0.5, seed=3)
    w = bits_from_text("1101")
    assert ec_encode(w, cfg)[:4] == w
    assert len(ec_encode(w, cfg)) == 8


def test_encode_golden_parity():
    cfg = ErasureConfig.from_payload(8, 0.25, seed=7)
    assert parity_masks(cfg) == EC_MASKS_K8
    assert bits_to_text(ec_encode(bits_from_text(EC_WORD_K8), cfg)) == EC_CODEWORD_K8


def test_encode_length_check():
    cfg = ErasureConfig.from_payload(8, 0.25, seed=7)
    with pytest.raises(ValueError):
        ec_encode(bits_from_text("1011"), cfg)


def test_decode_no_erasures_returns_prefix():
    cfg = ErasureConfig.from_payload(8, 0.25, seed=7)
    word = ec_encode(bits_from_text(EC_WORD_K8), cfg)
    assert ec_decode(word, cfg) == bits_from_text(EC_WORD_K8)


def test_decode_parity_only_erasures():
    cfg = ErasureConfig.from_payload(8, 0.25, seed=7)
    word = list(ec_encode(bits_from_text(EC_WORD_K8), cfg))
    for i in range(8, len(word)):
        word[i] = ERASURE
    assert ec_decode(tuple(word), cfg) == bits_from_text(EC_WORD_K8)


def _exhaustive_unique_fill(word, cfg):
    """All-fills oracle: the fills of erased message bits consistent with
    every surviving parity position."""
    erased = [i for i, s in enumerate(word[: cfg.k]) if s is ERASURE]
    consistent = []
    for fill in product((0, 1), repeat=len(erased)):
        message = list(word[: cfg.k])
        for pos, value in zip(erased, fill):
            message[pos] = value
        encoded = ec_encode(tuple(message), cfg)
        if all(
            word[j] is ERASURE or word[j] == encoded[j] for j in range(cfg.k, cfg.n_c)
        ):
            consistent.append(tuple(message))
    return consistent


def test_decode_against_exhaustive_oracle():
    rng = random.Random(2718)
    for trial in range(150):
        k = rng.randint(2, 12)
        cfg = ErasureConfig.from_payload(k, rng.choice([0.25, 0.4, 0.5]), seed=trial)
        w = tuple(rng.getrandbits(1) for _ in range(k))
        word = list(ec_encode(w, cfg))
        e = rng.randint(0, cfg.n_c - cfg.k)
        for pos in rng.sample(range(cfg.k), min(e, cfg.k)):
            word[pos] = ERASURE
        consistent = _exhaustive_unique_fill(tuple(word), cfg)
        assert w in consistent
        if len(consistent) == 1:
            assert ec_decode(tuple(word), cfg) == w
        else:
            with pytest.raises(UnrecoverableErasures):
                ec_decode(tuple(word), cfg)


def test_decode_beyond_information_limit():
    cfg = ErasureConfig.from_payload(10, 0.25, seed=5)
    w = tuple(random.Random(1).getrandbits(1) for _ in range(10))
    word = list(ec_encode(w, cfg))
    for pos in range(cfg.parity_bits + 1):  # more message erasures than equations
        word[pos] = ERASURE
    with pytest.raises(UnrecoverableErasures):
        ec_decode(tuple(word), cfg)


def test_decode_inconsistent_word():
    cfg = ErasureConfig.from_payload(8, 0.25, seed=7)
    word = list(ec_encode(bits_from_text(EC_WORD_K8), cfg))
    word[0] = ERASURE
    word[8] = 1 - word[8]
    word[9] = 1 - word[9]
    # flipping two parity bits cannot be explained by any single-bit fill
    if not _exhaustive_unique_fill(tuple(word), cfg):
        with pytest.raises(UnrecoverableErasures):
            ec_decode(tuple(word), cfg)


def test_roundtrip_various_rates():
    rng = random.Random(31)
    for _ in range(100):
        k = rng.randint(1, 64)
        cfg = ErasureConfig.from_payload(k, rng.choice([0.0, 0.2, 0.5]), seed=rng.randint(0, 99))
        w = tuple(rng.getrandbits(1) for _ in range(k))
        assert ec_decode(ec_encode(w, cfg), cfg) == w


def test_successful_decode_reencodes_consistently():
    rng = random.Random(777)
    for trial in range(100):
        cfg = ErasureConfig.from_payload(16, 0.25, seed=trial)
        w = tuple(rng.getrandbits(1) for _ in range(16))
        word = list(ec_encode(w, cfg))
        for pos in rng.sample(range(cfg.n_c), 3):
            word[pos] = ERASURE
        try:
            recovered = ec_decode(tuple(word), cfg)
        except UnrecoverableErasures:
            continue
        encoded = ec_encode(recovered, cfg)
        assert all(s is ERASURE or s == encoded[i] for i, s in enumerate(word))


def test_recovery_probability_half_redundancy():
    cfg = ErasureConfig.from_payload(64, 0.25, seed=99)
    budget = (cfg.n_c - cfg.k) // 2
    rng = random.Random(424242)
    recovered = 0
    trials = 1000
    for _ in range(trials):
        w = tuple(rng.getrandbits(1) for _ in range(64))
        word = list(ec_encode(w, cfg))
        for pos in rng.sample(range(cfg.n_c), budget):
            word[pos] = ERASURE
        try:
            if ec_decode(tuple(word), cfg) == w:
                recovered += 1
        except UnrecoverableErasures:
            pass
    assert recovered / trials > 0.99
