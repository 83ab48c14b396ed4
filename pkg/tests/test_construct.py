import itertools
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from sepmac.core import Code, InvalidParametersError, enumerate_messages
from sepmac.channels import make_channel
from sepmac.construct import (
    EnsembleSpec,
    inner_code_word,
    max_code_search,
    random_code,
    reduce_alphabet,
)
from sepmac.verify import is_list_decoding, is_separable


def test_ensemble_spec_validation():
    with pytest.raises(InvalidParametersError):
        EnsembleSpec("xx", 2, 3, 4, p=(0.5, 0.5))
    with pytest.raises(InvalidParametersError):
        EnsembleSpec("cr", 2, 3, 4)
    with pytest.raises(InvalidParametersError):
        EnsembleSpec("cr", 2, 3, 4, p=(0.7, 0.7))
    with pytest.raises(InvalidParametersError):
        EnsembleSpec("fc", 2, 3, 4, composition=(1, 1))


def test_random_code_deterministic():
    spec = EnsembleSpec("cr", 3, 4, 6, p=(0.5, 0.3, 0.2), seed=11)
    assert random_code(spec) == random_code(spec)
    other = EnsembleSpec("cr", 3, 4, 6, p=(0.5, 0.3, 0.2), seed=12)
    assert random_code(spec) != random_code(other)


def test_random_code_column_independent_of_t():
    # counter-based generation: column j is the same whether t=3 or t=6
    short = random_code(EnsembleSpec("cr", 2, 5, 3, p=(0.5, 0.5), seed=7))
    long = random_code(EnsembleSpec("cr", 2, 5, 6, p=(0.5, 0.5), seed=7))
    for j in range(1, 4):
        assert short.column(j) == long.column(j)


def test_fc_columns_have_exact_composition():
    comp = (2, 1, 1)
    spec = EnsembleSpec("fc", 3, 4, 10, composition=comp, seed=3)
    code = random_code(spec)
    for j in range(1, code.t + 1):
        counts = Counter(code.column(j))
        assert tuple(counts.get(a, 0) for a in range(3)) == comp


def test_cr_degenerate_distribution():
    spec = EnsembleSpec("cr", 2, 4, 3, p=(1.0, 0.0), seed=0)
    code = random_code(spec)
    assert all(code.column(j) == (0, 0, 0, 0) for j in range(1, 4))


@given(st.integers(0, 1000))
def test_cr_frequencies_roughly_match(seed):
    # weak sanity only: with p = (0.9, 0.1) zeros should dominate
    spec = EnsembleSpec("cr", 2, 30, 4, p=(0.9, 0.1), seed=seed)
    code = spec and random_code(spec)
    flat = [a for j in range(1, 5) for a in code.column(j)]
    assert flat.count(0) > flat.count(1)


def test_inner_code_word():
    # q' = 4 over q = 3 gives l = 2
    assert inner_code_word(0, 2, 3) == (1, 0)
    assert inner_code_word(1, 2, 3) == (0, 1)
    assert inner_code_word(2, 2, 3) == (2, 0)
    assert inner_code_word(3, 2, 3) == (0, 2)


def test_reduce_alphabet_shapes():
    code = Code.from_columns(4, [(0, 3), (2, 1)])
    reduced = reduce_alphabet(code, 3)
    assert reduced.q == 3 and reduced.N == 4 and reduced.t == 2
    assert reduced.column(1) == (1, 0, 0, 2)
    assert reduced.column(2) == (2, 0, 0, 1)
    with pytest.raises(InvalidParametersError):
        reduce_alphabet(code, 4)
    with pytest.raises(InvalidParametersError):
        reduce_alphabet(code, 1)


def test_reduce_alphabet_distinct_symbols_stay_distinct():
    qprime, q = 5, 2
    code = Code.from_columns(qprime, [(a,) for a in range(qprime)])
    reduced = reduce_alphabet(code, q)
    cols = [reduced.column(j) for j in range(1, qprime + 1)]
    assert len(set(cols)) == qprime
    # weight-one words: each column has exactly one nonzero entry
    assert all(sum(1 for x in c if x) == 1 for c in cols)


def test_reduce_alphabet_preserves_list_decoding():
    checked = 0
    for seed in range(60):
        qprime = 3 + seed % 3
        spec = EnsembleSpec("cr", qprime, 3, 5,
                            p=tuple(1.0 / qprime for _ in range(qprime)), seed=seed)
        code = random_code(spec)
        for q in range(2, qprime):
            for s, L in ((2, 1), (2, 2)):
                if not is_list_decoding(code, s, L).holds:
                    continue
                assert is_list_decoding(reduce_alphabet(code, q), s, L).holds
                checked += 1
    assert checked > 50


DISJ2 = make_channel("disj", 2, 2)


def test_max_code_search_disjunctive_fixtures():
    # frozen values from exhaustive enumeration, cross-checked against a
    # brute-force all-subsets oracle at N = 3, 4
    expected = {1: 2, 2: 3, 3: 4, 4: 5}
    for N, t_star in expected.items():
        res = max_code_search(DISJ2, 2, 2, N)
        assert res.t_star == t_star
        assert res.mode == "exhaustive"
        if res.t_star > 2:
            assert is_separable(res.code, 2, DISJ2).holds


def test_max_code_search_b_mac():
    ch = make_channel("B", 2, 2)
    res = max_code_search(ch, 2, 2, 2)
    assert res.t_star == 3
    assert res.code == Code.from_columns(2, [(0, 0), (0, 1), (1, 0)])


def test_max_code_search_returns_lex_smallest():
    res = max_code_search(DISJ2, 2, 2, 2)
    cols = [res.code.column(j) for j in range(1, res.t_star + 1)]
    assert cols == sorted(cols)
    assert cols[0] == (0, 0)


def test_max_code_search_matches_brute_force():
    # independent oracle: test every subset of columns
    for (name, s, q, N) in (("disj", 2, 2, 3), ("B", 2, 2, 2), ("A", 2, 2, 2)):
        ch = make_channel(name, s, q)
        res = max_code_search(ch, s, q, N)
        all_cols = list(itertools.product(range(q), repeat=N))
        best = 0
        for r in range(1, len(all_cols) + 1):
            found = False
            for subset in itertools.combinations(all_cols, r):
                code = Code.from_columns(q, list(subset))
                if r <= s or is_separable(code, s, ch).holds:
                    found = True
                    break
            if found:
                best = r
            else:
                break
        assert res.t_star == best


def test_greedy_not_better_than_exhaustive():
    exact = max_code_search(DISJ2, 2, 2, 3).t_star
    for seed in range(5):
        res = max_code_search(DISJ2, 2, 2, 3, mode="greedy", seed=seed)
        assert res.mode == "greedy"
        assert res.t_star <= exact
        assert is_separable(res.code, 2, DISJ2).holds


def test_greedy_is_maximal():
    res = max_code_search(DISJ2, 2, 2, 3, mode="greedy", seed=1)
    chosen = [res.code.column(j) for j in range(1, res.t_star + 1)]
    for col in itertools.product(range(2), repeat=3):
        if col in chosen:
            continue
        bigger = Code.from_columns(2, sorted(chosen + [col]))
        assert not is_separable(bigger, 2, DISJ2).holds


def test_max_code_search_guards():
    with pytest.raises(InvalidParametersError):
        max_code_search(DISJ2, 2, 2, 25)
    with pytest.raises(InvalidParametersError):
        max_code_search(DISJ2, 3, 2, 2)
    with pytest.raises(InvalidParametersError):
        max_code_search(DISJ2, 2, 2, 2, mode="fast")
