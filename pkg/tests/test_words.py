from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from slab.words import (Alphabet, FiniteWord, WordStream, complexity, factor_sets, factor_table,
                        is_saturated, letter_counts, morse_hedlund_detect, recurrent_up_to,
                        special_factors)

import oracles

words = st.text(alphabet="123", min_size=10, max_size=60)


def finite(s: str) -> WordStream:
    return WordStream.from_word(FiniteWord.parse(s, Alphabet.standard(3)), Alphabet.standard(3))


@given(words, st.integers(0, 8))
def test_complexity_matches_brute_force(s, n_max):
    assert complexity(finite(s), n_max, len(s)) == oracles.complexity(s, n_max)


@given(words, st.integers(0, 6))
def test_factor_table_counts(s, n):
    table = factor_table(finite(s), n, len(s))
    expected = Counter(s[i:i + n] for i in range(len(s) - n + 1))
    assert {str(u): c for u, c in table.counts.items()} == dict(expected)
    assert {str(u) for u in table.sorted_factors()} == set(expected)


@given(words, st.integers(0, 5))
def test_special_factors_match_brute_force(s, n):
    rs, ls = special_factors(finite(s), n, len(s))
    assert {str(u) for u in rs} == oracles.right_special(s, n)
    assert {str(u) for u in ls} == oracles.left_special(s, n)


@given(words)
def test_profile_starts_at_one_and_counts_letters(s):
    prof = complexity(finite(s), 3, len(s))
    assert prof[0] == 1 and prof[1] == len(set(s))


def test_complexity_is_non_decreasing_in_the_horizon(fib):
    small = complexity(fib, 12, 200)
    large = complexity(fib, 12, 20000)
    assert all(a <= b for a, b in zip(small, large))
    assert all(a <= b for a, b in zip(large, large[1:]))


def test_right_special_count_gives_first_difference(fib):
    prof = complexity(fib, 16, 20000)
    for n in range(15):
        rs, _ = special_factors(fib, n, 20000)
        assert len(rs) == prof[n + 1] - prof[n] == 1


def test_shift_invariance(fib):
    shifted = fib.shift(37)
    assert complexity(shifted, 15, 20000) == complexity(fib, 15, 20000)
    assert shifted.prefix_bytes(50) == fib.prefix_bytes(87)[37:]


def test_mirror_closure_of_fibonacci(fib):
    sets = factor_sets(fib, range(16), 20000)
    for n, fs in sets.items():
        assert {u[::-1] for u in fs} == fs, n


def test_saturation_detects_a_short_horizon(fib):
    assert is_saturated(fib, 10, 10**4)
    assert not is_saturated(fib, 40, 60)


def test_horizon_must_cover_the_length():
    with pytest.raises(ValueError):
        complexity(finite("12"), 5, 3)


def test_morse_hedlund_periodic_and_aperiodic(fib):
    v = morse_hedlund_detect(WordStream.parse_periodic("2(010)", Alphabet.from_text("012")), 5, 200)
    assert v.eventually_periodic and v.n0 == 2 and str(v) == "eventually-periodic(n0=2)"
    assert list(v.profile[:4]) == [1, 3, 4, 4]
    assert not morse_hedlund_detect(fib, 25, 10**5).eventually_periodic


def test_recurrence():
    assert not recurrent_up_to(WordStream.parse_periodic("2(1)"), 1, 100)
    assert recurrent_up_to(WordStream.parse_periodic("(12)"), 6, 100)


def test_alphabet_round_trip():
    a = Alphabet.from_text("012")
    assert a.parse("2010") == (3, 1, 2, 1)
    assert a.format((3, 1, 2, 1)) == "2010"
    with pytest.raises(ValueError):
        a.parse("2013")


def test_letter_counts():
    assert letter_counts(FiniteWord.parse("12112", Alphabet.standard(2))) == {1: 3, 2: 2}


def test_periodic_stream_prefix():
    w = WordStream.periodic((2,), (1, 2, 1), Alphabet.standard(2))
    assert w.prefix_bytes(8) == bytes([2, 1, 2, 1, 1, 2, 1, 1])
    assert w[100] == w[103]


def test_fibonacci_prefix_against_oracle(fib):
    assert "".join(map(str, fib.prefix_bytes(5000))) == oracles.fibonacci(5000)


def test_morse_hedlund_reports_the_first_flat_step():
    v = morse_hedlund_detect(WordStream.parse_periodic("(12)"), 3, 50)
    assert v.eventually_periodic and v.n0 == 1
