"""
Unit tests for population sizes.
"""
import pytest

from app.errors import CapExceededError, InvalidCorrelationError, UnknownMethodError
from app.oracle import brute_autocorrelation_counts, brute_g, brute_population, brute_right_population
from app.population import (
    Method,
    PsiSequence,
    g_decomposition,
    nfc,
    pop_auto,
    pop_auto_lattice,
    pop_corr,
    pop_left,
    pop_right,
    psi,
)
from app.population.autocorrelation import lattice_table
from app.sets import enumerate_delta, enumerate_gamma
from app.words import Correlation
from tests.conftest import FIG2

RECURRENCES = [Method.REC1, Method.REC2, Method.NFC]


def c(bits: str) -> Correlation:
    return Correlation.of(bits)


def test_psi_branches():
    assert psi(c("101"), 2, 5) == 0
    assert psi(c("1"), 3, -2) == 9
    assert psi(c("101"), 2, 1) == 1
    assert psi(c("101"), 2, 2) == 0
    assert PsiSequence(s=c("101"), sigma=2)[0] == 1


def test_psi_rejects_non_autocorrelation():
    with pytest.raises(InvalidCorrelationError):
        psi(c("1100"), 2, 1)


def test_pop_auto_examples():
    assert pop_auto(c(""), 4, 2) == 6
    assert pop_auto(c(""), 8, 2) == 74
    assert pop_auto(c("1111"), 4, 3) == 3
    with pytest.raises(InvalidCorrelationError):
        pop_auto(c("101"), 2, 2)


def test_pop_auto_matches_brute_force():
    for n in range(1, 9):
        counts = brute_autocorrelation_counts(n, 2)
        for s in enumerate_gamma(n).members:
            assert pop_auto(s, n, 2) == counts[s.bits]
            assert pop_auto_lattice(s, 2) == counts[s.bits]


def test_nfc_examples():
    assert nfc(c("100001001")) == 4
    for n in range(1, 8):
        assert nfc(c("1" * n)) == 1
        assert nfc(c("1" + "0" * (n - 1))) == n


def test_pop_auto_lattice_examples():
    assert pop_auto_lattice(c("1111"), 2) == 2
    assert pop_auto_lattice(c("1010"), 2) == 2
    assert pop_auto_lattice(c("1000"), 5) == 480


@pytest.mark.parametrize("sigma", [2, 3])
def test_nfc_partition_identity(sigma):
    """sigma^nfc(s) counts the words whose autocorrelation contains s."""
    for n in range(1, 11):
        counts = brute_autocorrelation_counts(n, sigma)
        members = enumerate_gamma(n).members
        for s in members:
            assert pop_auto_lattice(s, sigma) == counts[s.bits]
            code = s.to_int()
            above = [v for v in members if v.to_int() & code == code]
            assert sigma ** nfc(s) == sum(pop_auto(v, n, sigma) for v in above)
            assert sigma ** nfc(s) == sum(counts[v.bits] for v in above)


@pytest.mark.parametrize("method", RECURRENCES)
@pytest.mark.parametrize("bits", sorted(FIG2))
@pytest.mark.parametrize("sigma", [2, 3, 4, 5])
def test_golden_table(sigma, bits, method):
    assert pop_corr(c(bits), sigma, method) == FIG2[bits][sigma]


def test_spot_values():
    assert pop_corr(c("01010"), 2) == 8
    assert pop_corr(c("0101"), 3, "rec2") == 54
    assert pop_corr(c("0010"), 5, "nfc") == 12480
    assert pop_corr(c(""), 2) == 1


@pytest.mark.parametrize("sigma", [2, 3])
def test_methods_agree_with_oracles(sigma):
    for n in range(1, 7):
        for t in enumerate_delta(n).members:
            expected = brute_population(t, sigma)
            assert [pop_corr(t, sigma, m) for m in RECURRENCES] == [expected] * 3
            assert pop_corr(t, sigma, Method.BRUTE) == expected
            assert brute_g(t, sigma) == expected


@pytest.mark.parametrize("sigma", [2, 3])
def test_normalization(sigma):
    """Every pair has exactly one correlation."""
    for n in range(1, 9):
        members = enumerate_delta(n).members
        assert sum(pop_corr(t, sigma, Method.REC1) for t in members) == sigma ** (2 * n)
        assert sum(pop_corr(t, sigma, Method.REC2) for t in members) == sigma ** (2 * n)
        if n <= 6:
            assert sum(pop_corr(t, sigma, Method.NFC) for t in members) == sigma ** (2 * n)


def test_g_decomposition_all_zero():
    forms = g_decomposition(c("0000"))
    assert len(forms) == 1
    assert forms[0].form.bits == "10000000"
    assert forms[0].counted


def test_g_decomposition_01010():
    forms = g_decomposition(c("01010"))
    assert [(f.shift, f.divisor) for f in forms] == [(0, None), (4, 1), (4, 2), (4, 4)]
    assert forms[0].form.bits == "1000000101"
    assert forms[2].form.bits == "1010100101"
    assert not any(f.shift_valid for f in forms[1:])
    assert lattice_table(10, 2)[forms[0].form.bits] == 8


def test_g_decomposition_partitions_g():
    """Counted forms cover G(t) exactly, measured by brute-force autocorrelation counts."""
    for n in range(1, 5):
        counts = brute_autocorrelation_counts(2 * n, 2)
        for t in enumerate_delta(n).members:
            if t.bits.startswith("1"):
                continue
            counted = sum(counts.get(f.form.bits, 0) for f in g_decomposition(t) if f.counted)
            assert counted == brute_g(t, 2)


def test_valid_shift_rule():
    """A shift is valid iff s[j + 2 shift - 2n] = 1."""
    for f in g_decomposition(c("00101"))[1:]:
        assert f.shift_valid == ("101"[3 + 2 * f.shift - 10] == "1")


def test_pop_right():
    assert pop_right(c("0001"), 2) == 16
    assert pop_right(c("001"), 3) == 27
    assert pop_right(c("1010"), 2) == pop_corr(c("1010"), 2)
    assert pop_left(c("0011"), 3) == pop_right(c("0011"), 3)
    with pytest.raises(InvalidCorrelationError):
        pop_right(c("0000"), 2)


@pytest.mark.parametrize("sigma", [2, 3])
def test_pop_right_matches_brute_force(sigma):
    for n in range(1, 5):
        for t in enumerate_delta(n).members:
            if "1" in t.bits:
                assert pop_right(t, sigma) == brute_right_population(t, sigma)


def test_ratio_properties():
    for sigma in (2, 3, 5):
        for n in range(1, 10):
            assert pop_auto(c("1"), n, sigma) > 0
            assert pop_corr(c("1" * n), sigma) == sigma
        for s in enumerate_gamma(3).members:
            for m in range(7, 14):
                assert 0 < pop_auto(s, m, sigma) < sigma ** m


def test_suffix_family_bounds_correlation():
    for sigma in (2, 3):
        for n in range(1, 7):
            for t in enumerate_delta(n).members:
                if t.bits.startswith("1"):
                    continue
                j, s = t.split()
                assert pop_auto(s, 2 * n, sigma) <= pop_corr(t, sigma)


def test_errors():
    with pytest.raises(UnknownMethodError):
        pop_corr(c("0001"), 2, "fast")
    with pytest.raises(InvalidCorrelationError, match="not a valid correlation"):
        pop_corr(c("0110"), 2)


def test_long_correlations_need_no_enumeration():
    """Unbordered binary words: b(2m + 1) = 2 b(2m) and b(2m) = 2 b(2m - 1) - b(m)."""
    def unbordered(n: int) -> int:
        return pop_corr(c("1" + "0" * (n - 1)), 2)

    assert [unbordered(n) for n in range(1, 7)] == [2, 2, 4, 6, 12, 20]
    assert unbordered(30) == 2 * unbordered(29) - unbordered(15)
    assert unbordered(31) == 2 * unbordered(30)
    t = c("0" * 10 + "1" + "0" * 19)
    assert pop_corr(t, 2, "rec2") == pop_corr(t, 2, "rec1") > 0


def test_nfc_method_refuses_beyond_cap():
    with pytest.raises(CapExceededError):
        pop_corr(c("0" * 10 + "1"), 2, "nfc")
    with pytest.raises(CapExceededError):
        pop_auto_lattice(c("1" + "0" * 20), 2)
    assert pop_corr(c("0" * 10 + "1"), 2, "rec1") == pop_corr(c("0" * 10 + "1"), 2, "rec2")
