import itertools
from fractions import Fraction

import pytest

from sepmac.core import Code, InvalidParametersError, Message, enumerate_messages
from sepmac.channels import make_channel, output_word
from sepmac.construct import EnsembleSpec, random_code
from sepmac.verify import (
    count_L_rare,
    error_fraction,
    factor_decode,
    is_at_most_s_separable,
    is_frameproof,
    is_hash,
    is_list_decoding,
    is_separable,
    split_graph_girth_check,
)

B2 = make_channel("B", 2, 2)
A2 = make_channel("A", 2, 2)

C3 = Code.from_columns(2, [(0, 0), (0, 1), (1, 0)])
C4 = Code.from_columns(2, [(0, 0), (0, 1), (1, 0), (1, 1)])


def test_is_separable_basic():
    assert is_separable(C3, 2, B2).holds
    v = is_separable(C4, 2, B2)
    assert not v.holds
    assert v.witness == ((1, 4), (2, 3))


def test_is_separable_duplicate_columns():
    code = Code.from_columns(2, [(0, 1), (0, 1), (1, 0)])
    for ch in (B2, A2):
        v = is_separable(code, 2, ch)
        assert not v.holds
        assert v.witness == ((1, 3), (2, 3))


def test_is_separable_param_checks():
    with pytest.raises(InvalidParametersError):
        is_separable(C3, 3, B2)
    with pytest.raises(InvalidParametersError):
        is_separable(C3, 2, make_channel("B", 3, 2))


def test_separable_oracle_equivalence():
    # independent oracle: all-pairs comparison of stored output words
    for seed in range(40):
        q = 2 + seed % 2
        spec = EnsembleSpec("cr", q, 3, 5, p=tuple(1.0 / q for _ in range(q)), seed=seed)
        code = random_code(spec)
        for s in (2, 3):
            ch = make_channel("B", s, q)
            words = [output_word(ch, code, e) for e in enumerate_messages(code.t, s)]
            brute = all(words[i] != words[j]
                        for i in range(len(words)) for j in range(i + 1, len(words)))
            assert is_separable(code, s, ch).holds == brute


def test_at_most_s_separable():
    assert is_at_most_s_separable(Code.from_columns(2, [(0, 0), (1, 1), (0, 1)]), 2).holds
    v = is_at_most_s_separable(Code.from_columns(2, [(0, 0), (0, 1), (1, 1), (1, 0)]), 2)
    assert not v.holds
    assert v.witness == ((1, 3), (2, 4))
    assert is_at_most_s_separable(Code.from_columns(2, [(0, 0), (1, 1)]), 1).holds


def test_at_most_s_separable_mixed_sizes():
    # a 1-tuple union equal to a 2-tuple union is a violation
    code = Code.from_columns(2, [(0, 0), (0, 0)])
    v = is_at_most_s_separable(code, 1)
    assert not v.holds


def test_frameproof():
    assert is_frameproof(Code.from_columns(2, [(0, 0), (1, 1)]), 1).holds
    v = is_frameproof(Code.from_columns(2, [(0, 0), (0, 1), (1, 1)]), 2)
    assert not v.holds
    assert v.witness == ((1, 3), 2)
    assert is_frameproof(
        Code.from_columns(2, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]), 2).holds


def test_frameproof_repeated_columns_fail():
    code = Code.from_columns(2, [(0, 1), (0, 1), (1, 0)])
    v = is_frameproof(code, 1)
    assert not v.holds
    assert v.witness == ((1,), 2)


def test_hash():
    assert is_hash(Code.from_columns(3, [(0,), (1,), (2,)]), 3).holds
    with pytest.raises(InvalidParametersError):
        is_hash(Code.from_columns(2, [(0,), (1,), (0,)]), 3)
    v = is_hash(Code.from_columns(3, [(0, 0), (0, 1), (1, 1)]), 3)
    assert not v.holds


def test_list_decoding():
    assert is_list_decoding(Code.from_columns(2, [(0, 0), (1, 1)]), 1, 1).holds
    code = Code.from_columns(2, [(0, 0), (1, 1), (0, 1)])
    v = is_list_decoding(code, 2, 1)
    assert not v.holds
    assert v.witness == ((1, 2), (3,))
    assert is_list_decoding(code, 2, 2).holds


def test_factor_decode():
    code = Code.from_columns(2, [(0, 0), (1, 1), (0, 1)])
    assert factor_decode(code, [(0, 1), (1,)]) == {2, 3}
    assert factor_decode(code, [(0, 1), (0, 1)]) == {1, 2, 3}
    assert factor_decode(code, [(1,), (1,)]) == {2}
    with pytest.raises(InvalidParametersError):
        factor_decode(code, [(0,)])


def test_factor_decode_contains_message():
    for seed in range(30):
        spec = EnsembleSpec("cr", 2, 4, 5, p=(0.5, 0.5), seed=seed)
        code = random_code(spec)
        ch = make_channel("A", 2, 2)
        for e in enumerate_messages(code.t, 2):
            z = output_word(ch, code, e)
            decoded = factor_decode(code, [sym.value for sym in z.symbols])
            assert set(e.indices) <= decoded


def test_error_fraction():
    same = Code.from_columns(2, [(0, 1)] * 4)
    assert error_fraction(same, 2, B2).epsilon == 1
    assert error_fraction(C3, 2, B2).epsilon == 0
    rep = error_fraction(C4, 2, B2)
    assert rep.bad_count == 2 and rep.total == 6
    assert rep.epsilon == Fraction(2, 6)


def test_error_fraction_iff_separable():
    for seed in range(30):
        spec = EnsembleSpec("cr", 2, 3, 5, p=(0.5, 0.5), seed=seed)
        code = random_code(spec)
        sep = is_separable(code, 2, B2).holds
        eps = error_fraction(code, 2, B2).epsilon
        assert (eps == 0) == sep


def test_count_L_rare():
    r, flags = count_L_rare(Code.from_columns(2, [(0,), (1,), (1,)]), 1)
    assert r == 1 and flags == [True, False, False]
    same = Code.from_columns(2, [(0, 1)] * 4)
    r, _ = count_L_rare(same, 2)
    assert r == 0


def test_count_L_rare_counting_bound():
    for seed in range(20):
        spec = EnsembleSpec("cr", 2, 3, 6, p=(0.5, 0.5), seed=seed)
        code = random_code(spec)
        for L in (1, 2):
            r, _ = count_L_rare(code, L)
            assert r <= code.N * L * code.q ** L


def test_split_graph_girth():
    v = split_graph_girth_check(C4, 2, 1)
    assert not v.holds
    assert v.witness == ((1, 2, 3, 4),)
    assert split_graph_girth_check(C3, 2, 1).holds
    single = Code.from_columns(2, [(0, 1)])
    assert split_graph_girth_check(single, 2, 1).holds
    with pytest.raises(InvalidParametersError):
        split_graph_girth_check(C3, 2, 2)


def test_split_graph_parallel_edges():
    code = Code.from_columns(2, [(0, 1), (0, 1), (1, 0)])
    v = split_graph_girth_check(code, 2, 1)
    assert not v.holds
    assert v.witness == ((1, 2),)


def test_verdict_json():
    v = is_separable(C4, 2, B2)
    d = v.to_dict()
    assert d["holds"] is False
    assert d["witness"] == [[1, 4], [2, 3]]
