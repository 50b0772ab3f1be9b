"""
Enumeration of the autocorrelation sets Γn and the correlation sets Δn.

Γn is alphabet independent, so it is enumerated once over the binary alphabet
and memoized; Δn is assembled on demand from the cached Γj, j <= n.
"""
import logging
import math
import threading
from typing import Dict, List, Optional, Tuple

import numpy as np
from networkx.utils import UnionFind
from pydantic import BaseModel, ConfigDict, Field

from app.errors import CapExceededError, InvalidCorrelationError
from app.oracle import brute_autocorrelation_codes
from app.words import Correlation, overlap_bits

logger = logging.getLogger(__name__)

GAMMA_CAP = 20

_gamma_cache: Dict[int, "GammaSet"] = {}
_lock = threading.Lock()


class GammaSet(BaseModel):
    """Γn: every autocorrelation of length n, sorted lexicographically."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0)
    members: Tuple[Correlation, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, t: Correlation) -> bool:
        return t.n == self.n and is_autocorrelation(t)

    def bit_strings(self) -> List[str]:
        return [m.bits for m in self.members]


class DeltaSet(BaseModel):
    """Δn: every correlation of length n, sorted lexicographically."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0)
    members: Tuple[Correlation, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, t: Correlation) -> bool:
        return t.n == self.n and is_valid_correlation(t)[0]

    def bit_strings(self) -> List[str]:
        return [m.bits for m in self.members]

    def gamma_members(self) -> List[Correlation]:
        """Members with bit 0 set, i.e. the autocorrelations Γn."""
        return [m for m in self.members if m.bits.startswith("1")]


class CardinalityRow(BaseModel):
    n: int
    kappa: int
    delta: int
    log_ratio: Optional[float] = Field(None, description="ln(kappa_n) / ln^2(n), undefined for n < 2")
    kappa_upper_bound: Optional[float] = Field(None, description="exp(3 ln n / 2 + ln^2 n / (2 ln 2))")


def _check_cap(n: int, cap: Optional[int]) -> None:
    limit = GAMMA_CAP if cap is None else cap
    if n < 0:
        raise InvalidCorrelationError(f"length must be non-negative, got {n}")
    if n > limit:
        raise CapExceededError(f"enumeration of length {n} exceeds cap {limit}")


def enumerate_gamma(n: int, cap: Optional[int] = None) -> GammaSet:
    """Distinct autocorrelations of all binary words of length n (memoized)."""
    _check_cap(n, cap)
    cached = _gamma_cache.get(n)
    if cached is not None:
        return cached
    if n == 0:
        members = (Correlation(bits=""),)
    else:
        codes = np.unique(brute_autocorrelation_codes(n, 2, budget=2 ** n))
        members = tuple(Correlation.from_int(int(code), n) for code in codes)
    gamma = GammaSet(n=n, members=members)
    with _lock:
        # Concurrent builders compute identical values; first writer wins.
        _gamma_cache.setdefault(n, gamma)
    logger.debug("[SETS] Enumerated Γ%d: %d autocorrelations", n, len(members))
    return _gamma_cache[n]


def position_classes(bits: str) -> List[List[int]]:
    """
    Classes of positions forced equal by the periods of bits (i ~ i + p for
    every period p >= 1), each sorted, ordered by smallest position.
    """
    n = len(bits)
    classes = UnionFind(range(n))
    for p in range(1, n):
        if bits[p] == "1":
            for i in range(n - p):
                classes.union(i, i + p)
    groups = [sorted(group) for group in classes.to_sets()]
    groups.sort(key=lambda group: group[0])
    return groups


def free_word(bits: str) -> Tuple[int, ...]:
    """One distinct letter per position class: the word with the fewest periods containing those of bits."""
    labels = [0] * len(bits)
    for letter, group in enumerate(position_classes(bits)):
        for i in group:
            labels[i] = letter
    return tuple(labels)


def is_autocorrelation(s: Correlation) -> bool:
    """
    True iff s is in Γ|s|. Any word with the periods of s is constant on the
    position classes, so s is an autocorrelation exactly when the free word
    over those classes has autocorrelation s.
    """
    if not s.bits:
        return True
    if s.bits[0] != "1":
        return False
    word = free_word(s.bits)
    return overlap_bits(word, word) == s.bits


def enumerate_delta(n: int, cap: Optional[int] = None) -> DeltaSet:
    """Δn as the disjoint union of 0^(n-j).Γj for j = 0 .. n."""
    _check_cap(n, cap)
    members = [
        s.padded(n - j)
        for j in range(n + 1)
        for s in enumerate_gamma(j, cap).members
    ]
    members.sort(key=lambda t: t.bits)
    return DeltaSet(n=n, members=tuple(members))


def is_valid_correlation(t: Correlation) -> Tuple[bool, int, Correlation]:
    """
    Membership test for Δn via the structure 0^(n-j) s, s in Γj.
    Returns (valid, j, s); the decomposition is reported even when invalid.
    """
    j, s = t.split()
    return is_autocorrelation(s), j, s


def decompose(t: Correlation) -> Tuple[int, Correlation]:
    """(j, s) for a valid correlation; raises otherwise."""
    valid, j, s = is_valid_correlation(t)
    if not valid:
        raise InvalidCorrelationError(f"{t.bits} is not a valid correlation")
    return j, s


def require_autocorrelation(s: Correlation) -> None:
    if not is_autocorrelation(s):
        raise InvalidCorrelationError(f"{s.bits} is not a valid autocorrelation")


def kappa_upper_bound(n: int) -> float:
    """Known upper bound on κn for n >= 1."""
    ln = math.log(n)
    return math.exp(1.5 * ln + ln * ln / (2 * math.log(2)))


def cardinalities(n_max: int, cap: Optional[int] = None) -> List[CardinalityRow]:
    """κn and δn for n = 0 .. n_max, with the normalized log ratio."""
    _check_cap(n_max, cap)
    rows = []
    for n in range(n_max + 1):
        kappa = len(enumerate_gamma(n, cap))
        rows.append(CardinalityRow(
            n=n,
            kappa=kappa,
            delta=len(enumerate_delta(n, cap)),
            log_ratio=math.log(kappa) / math.log(n) ** 2 if n >= 2 else None,
            kappa_upper_bound=kappa_upper_bound(n) if n >= 1 else None,
        ))
    return rows


def satisfies_forward_propagation(s: Correlation) -> bool:
    """Every period p >= 1 of s has all its multiples below n as periods."""
    n = s.n
    for p in s.positions():
        if p and any(s.bits[k] != "1" for k in range(2 * p, n, p)):
            return False
    return True


def satisfies_period_dichotomy(s: Correlation) -> bool:
    """Each non-trivial period is a multiple of the basic period or exceeds n minus it."""
    periods = [p for p in s.positions() if p]
    if not periods:
        return True
    basic = periods[0]
    return all(p % basic == 0 or p > s.n - basic for p in periods)
