from __future__ import annotations

import random

import pytest

from nestedvt import (
    bits_from_text,
    build_parity,
    check_vt,
    encode_vt,
    parity_length,
    parity_length_sloane,
    strip_parity,
    syndrome,
)
from nestedvt.vt_core import parity_worksheet

from golden import CODEWORD_32, INNER_1, SECTION_1, SECTION_2


def test_syndrome_known_codeword_is_zero():
    assert syndrome(INNER_1) == 0


def test_syndrome_zero_string():
    assert syndrome((0,) * 17) == 0


def test_syndrome_single_one():
    assert syndrome((1,)) == 1


def test_syndrome_rejects_empty():
    with pytest.raises(ValueError):
        syndrome(())


@pytest.mark.parametrize("n_d,expected", [(7, 5), (24, 8), (1, 2), (36, 9)])
def test_parity_length(n_d, expected):
    assert parity_length(n_d) == expected


@pytest.mark.parametrize("n_d,expected", [(7, 5), (3, 4), (24, 8)])
def test_parity_length_sloane(n_d, expected):
    assert parity_length_sloane(n_d) == expected


def test_parity_length_rejects_zero():
    with pytest.raises(ValueError):
        parity_length(0)
    with pytest.raises(ValueError):
        parity_length_sloane(0)


def test_parity_never_worse_than_baseline_sample():
    for n_d in range(1, 2000):
        assert parity_length(n_d) <= parity_length_sloane(n_d)
    assert parity_length(3) == 3 < parity_length_sloane(3)


def test_build_parity_first_section():
    assert build_parity(SECTION_1, 0) == bits_from_text("00010")


def test_build_parity_second_section():
    assert build_parity(SECTION_2, 0) == bits_from_text("11000")


def test_build_parity_zero_data():
    assert build_parity((0,) * 9, 0) == (0,) * parity_length(9)


def test_build_parity_nonzero_residue_against_exhaustive_search():
    # Independent check: some 5-bit parity achieves syndrome 5, and the
    # constructed one is among the valid assignments.
    d = SECTION_1
    p = parity_length(len(d))
    valid = set()
    for mask in range(1 << p):
        parity = tuple((mask >> i) & 1 for i in range(p))
        if syndrome(d + parity) == 5:
            valid.add(parity)
    assert valid
    assert build_parity(d, 5) in valid


def test_build_parity_ones_budget():
    rng = random.Random(2024)
    for _ in range(200):
        n_d = rng.randint(1, 60)
        d = tuple(rng.getrandbits(1) for _ in range(n_d))
        n = n_d + parity_length(n_d)
        r = rng.randint(0, n)
        ws = parity_worksheet(d, r)
        assert sum(build_parity(d, r)) <= ws.k_max + 1


def test_encode_vt_worked_example():
    assert encode_vt(SECTION_1, 0) == INNER_1


def test_encode_vt_second_layer():
    d = CODEWORD_32[:24]
    word = encode_vt(d, 0)
    assert word == CODEWORD_32
    assert sum(i * b for i, b in enumerate(word, 1)) == 165


def test_encode_vt_zero_data():
    assert encode_vt((0,) * 12, 0) == (0,) * (12 + parity_length(12))


def test_check_vt():
    assert check_vt(INNER_1, 0)
    assert not check_vt(INNER_1, 1)
    assert check_vt((0,) * 6, 0)


def test_strip_parity():
    assert strip_parity(INNER_1, 7) == SECTION_1
    assert strip_parity(CODEWORD_32, 24) == CODEWORD_32[:24]


def test_strip_parity_length_mismatch():
    with pytest.raises(ValueError):
        strip_parity(INNER_1, 8)


def test_encode_roundtrip_random():
    rng = random.Random(99)
    for _ in range(300):
        n_d = rng.randint(1, 200)
        d = tuple(rng.getrandbits(1) for _ in range(n_d))
        r = rng.randint(0, n_d + parity_length(n_d))
        word = encode_vt(d, r)
        assert check_vt(word, r)
        assert strip_parity(word, n_d) == d


def test_exhaustive_short_data_all_residues():
    for n_d in range(1, 7):
        n = n_d + parity_length(n_d)
        for value in range(1 << n_d):
            d = tuple((value >> i) & 1 for i in range(n_d))
            for r in range(n + 1):
                assert syndrome(encode_vt(d, r)) == r
