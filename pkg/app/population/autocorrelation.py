"""
Population sizes of autocorrelations.

Two independent routes:
  - the suffix recurrence on the family s_m = 1 0^(m-j-1) s driven by the ψ
    sequence of a fixed s in Γj, solved for increasing m;
  - the lattice recurrence p(s) = σ^nfc(s) - Σ_{v ⊋ s} p(v) over Γn.
All arithmetic is on Python ints.
"""
import logging
import threading
from fractions import Fraction
from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field

from app.errors import AlphabetError, InvalidCorrelationError
from app.sets import enumerate_gamma, position_classes, require_autocorrelation
from app.words import Correlation, PopCount

logger = logging.getLogger(__name__)

# (s bits, sigma) -> [p(s_j), p(s_(j+1)), ...]
_extension_tables: Dict[Tuple[str, int], List[PopCount]] = {}
# (n, sigma) -> {bits: population} for every member of Γn
_lattice_tables: Dict[Tuple[int, int], Dict[str, PopCount]] = {}
_lock = threading.RLock()


def _check_sigma(sigma: int) -> None:
    if sigma < 2:
        raise AlphabetError(f"alphabet size must be at least 2, got {sigma}")


class PsiSequence(BaseModel):
    """The integer sequence ψ attached to a fixed s in Γj."""

    model_config = ConfigDict(frozen=True)

    s: Correlation
    sigma: int = Field(..., ge=2)

    def __getitem__(self, k: int) -> int:
        return psi_value(self.s.bits, self.sigma, k)

    def generating_value(self, z: Fraction) -> Fraction:
        """ψ(z) = Σ_k ψ[k] z^k, convergent for z > σ."""
        z = Fraction(z)
        if z <= self.sigma:
            raise ValueError("ψ(z) diverges for z <= sigma")
        j = self.s.n
        value = z / (z - self.sigma)
        for k in range(1, j + 1):
            if self.s.bits[j - k] == "1":
                value += z ** k
        return value


class ExtendedAutocorrelation(BaseModel):
    """The member s_m = 1 0^(m-j-1) s of the one-bit extension family of s."""

    model_config = ConfigDict(frozen=True)

    base: Correlation
    length: int = Field(..., ge=0)

    @property
    def value(self) -> Correlation:
        return self.base.extended(self.length)


def psi_value(bits: str, sigma: int, k: int) -> int:
    j = len(bits)
    if k > j:
        return 0
    if k >= 1:
        return 1 if bits[j - k] == "1" else 0
    return sigma ** (-k)


def psi(s: Correlation, sigma: int, k: int) -> int:
    """ψ[k] for s in Γj: 0 above j, s[j-k] on 1..j, σ^(-k) below 1."""
    _check_sigma(sigma)
    require_autocorrelation(s)
    return psi_value(s.bits, sigma, k)


def _tail_base(bits: str) -> str:
    """The suffix starting at the second 1-bit: s = 1 0^(q-1) s' with s' returned."""
    second = bits.find("1", 1)
    return bits[second:] if second > 0 else ""


def base_population(bits: str, sigma: int) -> PopCount:
    """p(s) by peeling s into the extension family of its tail, down to p(ε) = 1."""
    if not bits:
        return 1
    return extension_population(_tail_base(bits), sigma, len(bits))


def extension_table(bits: str, sigma: int, m: int) -> List[PopCount]:
    """
    p(s_k) for k = j .. m, solving
        p(s_n) = 2 ψ[2j-n] p(s) - Σ_{k=j}^{⌊(n+j)/2⌋} p(s_k) ψ[2k-n]
    for increasing n. The k = n term vanishes for n > j, so the sum only uses
    values already in the table.
    """
    key = (bits, sigma)
    j = len(bits)
    with _lock:
        table = _extension_tables.get(key)
        if table is None:
            table = [base_population(bits, sigma)]
            _extension_tables[key] = table
        p_s = table[0]
        for n in range(j + len(table), m + 1):
            total = 0
            for k in range(j, (n + j) // 2 + 1):
                weight = psi_value(bits, sigma, 2 * k - n)
                if weight:
                    total += table[k - j] * weight
            table.append(2 * psi_value(bits, sigma, 2 * j - n) * p_s - total)
        return table


def extension_population(bits: str, sigma: int, m: int) -> PopCount:
    """p(s_m) without validation; m >= len(bits)."""
    return extension_table(bits, sigma, m)[m - len(bits)]


def pop_auto(s: Correlation, m: int, sigma: int) -> PopCount:
    """Number of words of length m with autocorrelation s_m = 1 0^(m-j-1) s."""
    _check_sigma(sigma)
    require_autocorrelation(s)
    if m < s.n:
        raise InvalidCorrelationError(f"target length {m} is shorter than s ({s.n})")
    return extension_population(s.bits, sigma, m)


def nfc(s: Correlation) -> int:
    """Number of free characters of an autocorrelation."""
    require_autocorrelation(s)
    return len(position_classes(s.bits))


def lattice_table(n: int, sigma: int) -> Dict[str, PopCount]:
    """Populations of all of Γn, top-down from 1^n."""
    _check_sigma(sigma)
    key = (n, sigma)
    with _lock:
        if key in _lattice_tables:
            return _lattice_tables[key]
        members = enumerate_gamma(n).members
        codes = {m.bits: m.to_int() for m in members}
        ordered = sorted(members, key=lambda m: (-m.weight(), m.bits))
        table: Dict[str, PopCount] = {}
        for v in ordered:
            code = codes[v.bits]
            supersets = sum(
                count for bits, count in table.items()
                if codes[bits] != code and codes[bits] & code == code
            )
            table[v.bits] = sigma ** len(position_classes(v.bits)) - supersets
        _lattice_tables[key] = table
        logger.debug("[POP] Lattice table for Γ%d at sigma=%d: %d entries", n, sigma, len(table))
        return table


def pop_auto_lattice(s: Correlation, sigma: int) -> PopCount:
    """p(s) from the lattice recurrence over Γn."""
    _check_sigma(sigma)
    require_autocorrelation(s)
    return lattice_table(s.n, sigma)[s.bits]
