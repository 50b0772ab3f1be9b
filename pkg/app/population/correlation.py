"""
Population sizes of correlations t = 0^(n-j) s, s in Γj.

Every method reduces p(t) to autocorrelations of length 2n through the identity
p(t) = g(t): a pair (u, v) has correlation t exactly when vu has an
autocorrelation ending with t.
"""
import logging
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field
from sympy import divisors

from app.errors import CapExceededError, InvalidCorrelationError, UnknownMethodError
from app.oracle import brute_population
from app.population.autocorrelation import (
    _check_sigma,
    base_population,
    extension_population,
    extension_table,
    lattice_table,
    psi_value,
)
from app.sets import GAMMA_CAP, decompose, is_autocorrelation
from app.words import Correlation, PopCount

logger = logging.getLogger(__name__)


class Method(str, Enum):
    REC1 = "rec1"
    REC2 = "rec2"
    NFC = "nfc"
    BRUTE = "brute"

    @classmethod
    def parse(cls, name: "str | Method") -> "Method":
        try:
            return cls(name)
        except ValueError:
            allowed = ", ".join(m.value for m in cls)
            raise UnknownMethodError(f"unknown method {name!r}; expected one of {allowed}") from None


class CandidateForm(BaseModel):
    """
    A length-2n vector that c(w, w) may take for w in G(t).

    `shift` is the largest period below n (0 when there is none); `divisor` is
    the number of blocks 1 0^(shift/divisor - 1) tiling the prefix of length
    shift (None for shift 0).
    """

    model_config = ConfigDict(frozen=True)

    shift: int = Field(..., ge=0)
    divisor: Optional[int] = None
    form: Correlation
    shift_valid: bool = Field(..., description="s[j + 2 shift - 2n] = 1, or shift = 0")
    in_gamma: bool = Field(..., description="form is an autocorrelation of length 2n")

    @property
    def counted(self) -> bool:
        return self.shift_valid and self.in_gamma


def _shift_range(n: int, j: int) -> range:
    return range((2 * n - j + 1) // 2, n)


def g_decomposition(t: Correlation) -> List[CandidateForm]:
    """
    Candidate autocorrelation forms partitioning G(t): the shift-0 form
    s_2n = 1 0^(2n-j-1) s, then for every shift in [⌈(2n-j)/2⌉, n-1] and every
    positive divisor d of it, (1 0^(shift/d - 1))^d 1 0^(2n-shift-j-1) s.
    """
    j, s = decompose(t)
    n = t.n
    head = s.extended(2 * n)
    forms = [CandidateForm(shift=0, form=head, shift_valid=True, in_gamma=is_autocorrelation(head))]
    for shift in _shift_range(n, j):
        valid = s.bits[j + 2 * shift - 2 * n] == "1"
        tail = "1" + "0" * (2 * n - shift - j - 1) + s.bits
        for d in divisors(shift):
            bits = ("1" + "0" * (shift // d - 1)) * d + tail
            form = Correlation(bits=bits)
            forms.append(CandidateForm(
                shift=shift,
                divisor=int(d),
                form=form,
                shift_valid=valid,
                in_gamma=is_autocorrelation(form),
            ))
    return forms


def _pop_rec1(n: int, j: int, s: Correlation, sigma: int) -> PopCount:
    """p(t) = Σ_{λ=1}^{⌊j/2⌋} p(s_(n+λ)) s[j-2λ] + p(s_2n)."""
    total = extension_population(s.bits, sigma, 2 * n)
    for lam in range(1, j // 2 + 1):
        if s.bits[j - 2 * lam] == "1":
            total += extension_population(s.bits, sigma, n + lam)
    return total


def _pop_rec2(n: int, j: int, s: Correlation, sigma: int) -> PopCount:
    """
    Same sum re-indexed by the shift, each p(s_(2n-shift)) expanded one step
    through the suffix recurrence so only p(s) and smaller p(s_k) appear.
    """
    bits = s.bits
    table = extension_table(bits, sigma, 2 * n)
    p_s = table[0]
    total = table[2 * n - j]
    for shift in _shift_range(n, j):
        if bits[j + 2 * shift - 2 * n] != "1":
            continue
        length = 2 * n - shift
        term = 2 * p_s * psi_value(bits, sigma, 2 * j + shift - 2 * n)
        for k in range(j, (length + j) // 2 + 1):
            term -= table[k - j] * psi_value(bits, sigma, 2 * k - 2 * n + shift)
        total += term
    return total


def _pop_nfc(t: Correlation, sigma: int) -> PopCount:
    """Sum of lattice populations over the counted candidate forms."""
    if 2 * t.n > GAMMA_CAP:
        raise CapExceededError(f"nfc method needs Γ{2 * t.n}, beyond the enumeration cap {GAMMA_CAP}")
    lattice = lattice_table(2 * t.n, sigma)
    return sum(lattice[c.form.bits] for c in g_decomposition(t) if c.counted)


def pop_corr(
    t: Correlation,
    sigma: int,
    method: "str | Method" = Method.REC1,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
) -> PopCount:
    """Number of ordered pairs (u, v) with c(u, v) = t, by the chosen method."""
    _check_sigma(sigma)
    method = Method.parse(method)
    j, s = decompose(t)
    n = t.n
    logger.debug("[POP] p(%s) sigma=%d method=%s", t.bits, sigma, method.value)
    if method is Method.BRUTE:
        return brute_population(t, sigma, budget, workers)
    if n == 0:
        return 1
    if j == n:
        # t is itself an autocorrelation.
        if method is Method.NFC:
            return lattice_table(n, sigma)[t.bits]
        return base_population(t.bits, sigma)
    if method is Method.REC1:
        return _pop_rec1(n, j, s, sigma)
    if method is Method.REC2:
        return _pop_rec2(n, j, s, sigma)
    return _pop_nfc(t, sigma)


def pop_right(t: Correlation, sigma: int) -> PopCount:
    """p_r(t) = p(s) σ^(n-j): words v admitting some u with c(u, v) = t."""
    _check_sigma(sigma)
    j, s = decompose(t)
    if j == 0:
        raise InvalidCorrelationError("right population of the all-zero correlation is not defined")
    return base_population(s.bits, sigma) * sigma ** (t.n - j)


def pop_left(t: Correlation, sigma: int) -> PopCount:
    """u and v play symmetric roles, so the left population equals the right one."""
    return pop_right(t, sigma)
