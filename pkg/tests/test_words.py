"""
Unit tests for word and correlation arithmetic.
"""
from itertools import product

import pytest
from pydantic import ValidationError

from app.errors import AlphabetError, InvalidWordError, LengthMismatchError
from app.words import (
    Correlation,
    PeriodSet,
    Word,
    autocorrelation,
    basic_period,
    borders,
    correlation,
    is_bordered,
    is_mutually_bordered,
    is_mutually_unbordered,
    overlap_bits,
    period_set,
)


def w(text: str, sigma: int = 2) -> Word:
    return Word.from_text(text, sigma)


def test_correlation_of_introduction_pair():
    """abaaa over aaabb has borders aaa, aa and a."""
    assert correlation(w("abaaa"), w("aaabb")).bits == "00111"
    assert [str(b) for b in borders(w("abaaa"), w("aaabb"))] == ["aaa", "aa", "a"]


def test_correlation_is_asymmetric():
    """(aaabb, abbbb) has one border; the reversed pairs have none."""
    assert [str(b) for b in borders(w("aaabb"), w("abbbb"))] == ["abb"]
    assert not is_bordered(w("abbbb"), w("aaabb"))
    assert not is_bordered(w("aaabb"), w("abaaa"))


def test_correlation_table_example():
    assert correlation(w("aabbab"), w("babbaa")).bits == "000101"


def test_autocorrelation_and_periods():
    assert autocorrelation(w("abab")).bits == "1010"
    assert period_set(w("abab")).periods == (0, 2)
    assert basic_period(w("abab")) == 2
    assert basic_period(w("ab")) == 2
    assert autocorrelation(Word()).bits == ""


def test_full_border_only_for_equal_words():
    """Bit 0 is set exactly when u = v."""
    assert correlation(w("abba"), w("abba")).bit(0) == 1
    assert correlation(w("abba"), w("abbb")).bit(0) == 0


def test_pair_classes():
    assert is_mutually_bordered(w("aba"), w("aba"))
    assert is_mutually_unbordered(w("aa"), w("bb"))
    assert not is_mutually_unbordered(w("ab"), w("ba"))


def test_from_text_forms():
    assert w("0,1,2", 3).letters == (0, 1, 2)
    assert str(w("0,1,2", 3)) == "abc"
    assert str(Word(letters=(0, 27), sigma=30)) == "0,27"
    with pytest.raises(InvalidWordError):
        Word.from_text("abc", 2)
    with pytest.raises(InvalidWordError):
        Word.from_text("a?b", 2)
    with pytest.raises(InvalidWordError):
        Word.from_text("-1,0", 2)
    with pytest.raises(InvalidWordError):
        Word.from_text("0,2", 2)


def test_invalid_values_rejected():
    with pytest.raises(ValidationError):
        Correlation(bits="012")
    with pytest.raises(ValidationError):
        Word(letters=(0, 2), sigma=2)
    with pytest.raises(ValidationError):
        PeriodSet(n=3, periods=(1, 2))


def test_mismatched_pairs_rejected():
    with pytest.raises(LengthMismatchError):
        correlation(w("ab"), w("abb"))
    with pytest.raises(AlphabetError):
        correlation(w("ab", 2), w("ab", 3))


def test_correlation_set_operations():
    a, b = Correlation.of("1010"), Correlation.of("1001")
    assert (a & b).bits == "1000"
    assert (a | b).bits == "1011"
    assert Correlation.of("1000").is_subset_of(a)
    assert Correlation.of("0101").split() == (3, Correlation.of("101"))
    assert Correlation.zeros(3).split() == (0, Correlation.of(""))
    assert Correlation.of("101").extended(6).bits == "100101"
    assert Correlation.from_int(5, 4).bits == "0101"


def test_period_set_round_trip():
    u = w("abaab")
    assert period_set(u).to_correlation() == autocorrelation(u)


def test_suffix_stability():
    """c(u, v) is the length-n suffix of c(xu, vy) for all x, y of equal length."""
    long = correlation(w("ab").concat(w("abaa")), w("aaab").concat(w("bb")))
    assert long.bits[2:] == correlation(w("abaa"), w("aaab")).bits
    for n in range(1, 7):
        for k in range(0, 4):
            for letters in product((0, 1), repeat=2 * n + 2 * k):
                u, v = letters[:n], letters[n:2 * n]
                x, y = letters[2 * n:2 * n + k], letters[2 * n + k:]
                assert overlap_bits(x + u, v + y)[k:] == overlap_bits(u, v)


def test_bordered_concatenation_gives_bordered_pair():
    """A proper border of vu forces a border of (u, v)."""
    for n in range(1, 6):
        for letters in product((0, 1), repeat=2 * n):
            u, v = Word(letters=letters[:n]), Word(letters=letters[n:])
            if autocorrelation(v.concat(u)).weight() > 1:
                assert borders(u, v)


def test_borders_follow_correlation_bits():
    for n in range(1, 5):
        for letters in product((0, 1), repeat=2 * n):
            u, v = Word(letters=letters[:n]), Word(letters=letters[n:])
            found = borders(u, v)
            assert len(found) == correlation(u, v).weight()
            assert [len(b) for b in found] == sorted({len(b) for b in found}, reverse=True)
            for b in found:
                assert u.letters[n - len(b):] == b.letters == v.letters[:len(b)]
