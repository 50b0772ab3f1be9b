"""
Border-length statistics and asymptotics of population ratios.

Longest-border counts L_j come from summing correlation populations over
0^(n-j).Γj. The asymptotic constant c of a suffix s is the limit of
p(s_n) / (p(s) sigma^n) and satisfies c = 2/sigma^(2j) - h(sigma^2) with
h(z) = Σ_m p(s_m) z^(-m) / p(s); it bounds p(0^(n-j) s) / sigma^(2n) in the limit
between c p(s) and c p(s) sigma / (sigma - 1).
"""
import logging
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from app.errors import PrecisionError, RangeError
from app.population import Method, PsiSequence, pop_auto, pop_corr
from app.population.autocorrelation import _check_sigma, extension_table
from app.schemas import (
    AsymptoticEstimate,
    BorderCountTable,
    ExpectationResult,
    PopulationRow,
    ProbeRow,
)
from app.sets import enumerate_delta, enumerate_gamma, require_autocorrelation
from app.words import Correlation

logger = logging.getLogger(__name__)

DEFAULT_PRECISION_N = 64
DEFAULT_THRESHOLD_J = 4
REPORT_DECIMALS = 3


def _check_length(n: int) -> None:
    if n < 1:
        raise RangeError(f"word length must be at least 1, got {n}")


def population_table(n: int, sigmas: Iterable[int], method: "str | Method" = Method.REC1) -> List[PopulationRow]:
    """p(t) for every t in Δn, one column per alphabet size."""
    sigmas = list(sigmas)
    for sigma in sigmas:
        _check_sigma(sigma)
    return [
        PopulationRow(correlation=t.bits, populations={sigma: pop_corr(t, sigma, method) for sigma in sigmas})
        for t in enumerate_delta(n).members
    ]


def most_populated(n: int, sigma: int, top: int = 2) -> List[Tuple[str, int]]:
    """The `top` correlations of Δn with the largest populations, ties by bit string."""
    rows = [(row.correlation, row.populations[sigma]) for row in population_table(n, [sigma])]
    rows.sort(key=lambda row: (-row[1], row[0]))
    return rows[:top]


def longest_border_counts(n: int, sigma: int, method: "str | Method" = Method.REC1) -> BorderCountTable:
    """L_j = Σ_{s in Γj} p(0^(n-j) s) for j < n, and the u = v mass sigma^n."""
    _check_length(n)
    _check_sigma(sigma)
    counts = []
    for j in range(n):
        counts.append(sum(pop_corr(s.padded(n - j), sigma, method) for s in enumerate_gamma(j).members))
    equal_pairs = sum(pop_corr(s, sigma, method) for s in enumerate_gamma(n).members)
    return BorderCountTable(n=n, sigma=sigma, counts=counts, equal_pairs=equal_pairs)


def _check_range(n: int, i: int, k: int) -> None:
    if not 0 <= i <= k <= n - 1:
        raise RangeError(f"border range [{i}..{k}] must satisfy 0 <= i <= k <= {n - 1}")


def longest_border_range(n: int, sigma: int, i: int, k: int) -> int:
    """L_[i..k]: pairs whose longest border length lies in [i, k]."""
    _check_length(n)
    _check_range(n, i, k)
    return longest_border_counts(n, sigma).range_sum(i, k)


def suffix_recurrence_range(n: int, sigma: int, i: int, k: int) -> int:
    """
    L_[i..k] written over the suffix family only:
    Σ_j Σ_{s in Γj} (Σ_{λ=1}^{⌊j/2⌋} p(s_(n+λ)) s[j-2λ] + p(s_2n)).
    """
    _check_length(n)
    _check_range(n, i, k)
    _check_sigma(sigma)
    total = 0
    for j in range(i, k + 1):
        for s in enumerate_gamma(j).members:
            total += pop_auto(s, 2 * n, sigma)
            for lam in range(1, j // 2 + 1):
                if s.bits[j - 2 * lam] == "1":
                    total += pop_auto(s, n + lam, sigma)
    return total


def _h_series(table: List[int], j: int, z: int, p_s: int) -> Fraction:
    """Truncated Σ_m p(s_m) z^(-m) / p(s) over the computed table."""
    return sum((Fraction(count, z ** (j + offset)) for offset, count in enumerate(table)), Fraction(0)) / p_s


def asymptotic_constant(s: Correlation, sigma: int, precision_n: int = DEFAULT_PRECISION_N) -> AsymptoticEstimate:
    """
    c estimated from the truncated series for h(sigma^2), with the geometric
    tail bound from p(s_m) <= sigma^(m-j), and independently from
    p(s_N) / (p(s) sigma^N) at N = precision_n.
    """
    _check_sigma(sigma)
    require_autocorrelation(s)
    j = s.n
    if precision_n < 2 * j + 4:
        raise PrecisionError(f"precision_n must be at least 2j + 4 = {2 * j + 4}, got {precision_n}")
    table = extension_table(s.bits, sigma, precision_n)[: precision_n - j + 1]
    p_s = table[0]
    z = sigma * sigma

    h_z = _h_series(table, j, z, p_s)
    c_series = Fraction(2, sigma ** (2 * j)) - h_z
    c_empirical = Fraction(table[-1], p_s * sigma ** precision_n)
    tail_bound = Fraction(1, sigma ** (j + precision_n) * p_s * (sigma - 1))

    # Two-level check of h(z) + ψ(z) h(z^2) = 2 ψ(z) z^(-2j) at z = sigma^2.
    psi_z = PsiSequence(s=s, sigma=sigma).generating_value(Fraction(z))
    h_z2 = _h_series(table, j, z * z, p_s)
    functional_gap = abs(h_z + psi_z * h_z2 - 2 * psi_z / Fraction(z) ** (2 * j))

    limit = float(c_series * p_s)
    logger.debug("[ANALYTICS] c(%s, sigma=%d) = %.12f", s.bits or "ε", sigma, float(c_series))
    return AsymptoticEstimate(
        s=s.bits,
        sigma=sigma,
        p_s=p_s,
        precision_n=precision_n,
        c_series=c_series,
        c_empirical=c_empirical,
        gap=float(abs(c_series - c_empirical)),
        tail_bound=float(tail_bound),
        functional_equation_gap=float(functional_gap),
        limit=limit,
        lower=limit,
        upper=limit * sigma / (sigma - 1),
    )


def ratio_bounds(s: Correlation, sigma: int, precision_n: int = DEFAULT_PRECISION_N) -> AsymptoticEstimate:
    """
    Estimate whose [lower, upper) = [c p(s), c p(s) sigma / (sigma - 1)) is the
    limiting range of p(0^(n-j) s) / sigma^(2n). precision_n is raised to the
    minimum 2j + 4 instead of being rejected.
    """
    return asymptotic_constant(s, sigma, max(precision_n, 2 * s.n + 4))


def ratio_convergence_probe(
    s: Correlation,
    sigma: int,
    n_max: int,
    precision_n: int = DEFAULT_PRECISION_N,
) -> List[ProbeRow]:
    """Exact p(0^(n-j) s) / sigma^(2n) for n = j+1 .. n_max and whether each lies in the bounds."""
    bounds = ratio_bounds(s, sigma, precision_n)
    lower, upper = bounds.lower, bounds.upper
    rows = []
    for n in range(s.n + 1, n_max + 1):
        ratio = Fraction(pop_corr(s.padded(n - s.n), sigma), sigma ** (2 * n))
        value = float(ratio)
        rows.append(ProbeRow(n=n, ratio=ratio, value=value, within_bounds=lower <= value < upper))
    return rows


def expected_longest_border(
    n: int,
    sigma: int,
    include_equal_pairs: bool = False,
    threshold_j: int = DEFAULT_THRESHOLD_J,
    precision_n: Optional[int] = None,
) -> ExpectationResult:
    """
    E(X) = Σ_{j=1}^{n-1} j L_j / sigma^(2n). The u = v pairs carry probability
    mass but no length term unless include_equal_pairs adds n sigma^n / sigma^(2n).
    """
    _check_length(n)
    _check_sigma(sigma)
    if threshold_j < 1:
        raise RangeError(f"threshold J must be at least 1, got {threshold_j}")
    pairs = sigma ** (2 * n)
    table = longest_border_counts(n, sigma)
    literal = Fraction(sum(j * count for j, count in enumerate(table.counts)), pairs)
    with_equal = literal + Fraction(n * table.equal_pairs, pairs)

    finite_lower = Fraction(0)
    asymptotic_lower = 0.0
    for j in range(1, threshold_j):
        for s in enumerate_gamma(j).members:
            if j < n:
                finite_lower += Fraction(j * pop_auto(s, 2 * n, sigma), pairs)
            estimate = asymptotic_constant(s, sigma, max(precision_n or DEFAULT_PRECISION_N, 2 * j + 4))
            asymptotic_lower += j * estimate.lower

    return ExpectationResult(
        n=n,
        sigma=sigma,
        include_equal_pairs=include_equal_pairs,
        value=with_equal if include_equal_pairs else literal,
        literal=literal,
        with_equal_pairs=with_equal,
        threshold_j=threshold_j,
        finite_lower_bound=finite_lower,
        asymptotic_lower_bound=asymptotic_lower,
        upper_bound=Fraction(sigma, (sigma - 1) ** 2),
    )


def format_ratio(value: float) -> str:
    return f"{value:.{REPORT_DECIMALS}f}"
