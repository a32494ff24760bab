import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphcomp.codec import (Horizon, decode_seq, encode_seq, extend_seq, pair, split_last,
                             unpair, validate_injection)


@pytest.mark.parametrize("i,j,code", [(0, 0, 0), (1, 2, 8), (0, 2, 5), (2, 0, 3)])
def test_pair_values(i, j, code):
    assert pair(i, j) == code
    assert unpair(code) == (i, j)


def test_pair_is_onto_initial_segment():
    codes = sorted(pair(i, j) for i in range(40) for j in range(40) if i + j < 40)
    assert codes == list(range(len(codes)))


@given(st.integers(0, 2**16 - 1), st.integers(0, 2**16 - 1))
def test_unpair_inverts_pair(i, j):
    assert unpair(pair(i, j)) == (i, j)


def test_unpair_big_codes():
    i, j = 10**30, 7
    assert unpair(pair(i, j)) == (i, j)


@pytest.mark.parametrize("seq,code", [((), 0), ((0,), 1), ((2,), 6)])
def test_encode_seq_values(seq, code):
    assert encode_seq(seq) == code
    assert decode_seq(code) == seq


def test_seq_codec_injective_on_small_sequences():
    seen = {}
    for length in range(4):
        for seq in itertools.product(range(6), repeat=length):
            code = encode_seq(seq)
            assert code not in seen
            seen[code] = seq
            assert decode_seq(code) == seq


@given(st.lists(st.integers(0, 15), max_size=6))
def test_seq_round_trip(seq):
    assert decode_seq(encode_seq(seq)) == tuple(seq)


@given(st.lists(st.integers(0, 15), max_size=5), st.integers(0, 15))
def test_extend_and_split(seq, x):
    code = extend_seq(encode_seq(seq), x)
    assert code == encode_seq([*seq, x])
    assert split_last(code) == (encode_seq(seq), x)


def test_split_last_of_empty_rejected():
    with pytest.raises(ValueError):
        split_last(0)


def test_validate_injection_examples():
    f = validate_injection([5, 0, 3])
    assert f.support == 3 and f(2) == 3
    assert validate_injection([]).support == 0
    with pytest.raises(ValueError, match="not injective"):
        validate_injection([2, 2])
    with pytest.raises(ValueError):
        validate_injection([-1])


@given(st.lists(st.integers(0, 20), max_size=12))
def test_validate_injection_matches_sort_detector(values):
    ordered = sorted(values)
    has_dup = any(a == b for a, b in zip(ordered, ordered[1:]))
    if has_dup:
        with pytest.raises(ValueError):
            validate_injection(values)
    else:
        assert validate_injection(values).values == tuple(values)


def test_prefix_queries():
    f = validate_injection([5, 0, 3])
    assert f.in_range(0) and not f.in_range(4)
    assert f.in_range(3, upto=3) and not f.in_range(3, upto=2)
    assert f.preimage(3) == 2 and f.preimage(9) is None
    assert f.range == frozenset({0, 3, 5})


def test_horizon_parse():
    assert Horizon.parse("2,8,64") == Horizon(2, 8, 64)
    for bad in ("2,8", "a,b,c", "0,1,1"):
        with pytest.raises(ValueError):
            Horizon.parse(bad)
