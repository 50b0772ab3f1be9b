"""
Word and correlation arithmetic.
Words are tuples of letter indices over an alphabet of size sigma; correlations
are 0/1 strings read left to right, index 0 being the zero shift.
"""
import string
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.errors import AlphabetError, InvalidWordError, LengthMismatchError

# Exact, unbounded population sizes. Python ints never overflow.
PopCount = int

LETTERS = string.ascii_lowercase


class Correlation(BaseModel):
    """Binary vector encoding the overlaps of an ordered pair of words."""

    model_config = ConfigDict(frozen=True)

    bits: str = Field(..., pattern=r"^[01]*$", description="MSB-first 0/1 string, index 0 = zero shift")

    @classmethod
    def of(cls, bits: str) -> "Correlation":
        return cls(bits=bits)

    @classmethod
    def from_int(cls, code: int, n: int) -> "Correlation":
        """Build from an integer whose most significant of n bits is index 0."""
        return cls(bits=format(code, f"0{n}b") if n else "")

    @classmethod
    def zeros(cls, n: int) -> "Correlation":
        return cls(bits="0" * n)

    @classmethod
    def ones(cls, n: int) -> "Correlation":
        return cls(bits="1" * n)

    @property
    def n(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return self.bits

    def bit(self, i: int) -> int:
        return 1 if self.bits[i] == "1" else 0

    def to_int(self) -> int:
        return int(self.bits, 2) if self.bits else 0

    def positions(self) -> List[int]:
        """Indices of the 1-bits."""
        return [i for i, b in enumerate(self.bits) if b == "1"]

    def weight(self) -> int:
        return self.bits.count("1")

    def split(self) -> Tuple[int, "Correlation"]:
        """
        Split as 0^(n-j) s where s starts at the leftmost 1-bit.
        Returns (j, s); the all-zero vector gives (0, empty).
        """
        first = self.bits.find("1")
        if first < 0:
            return 0, Correlation(bits="")
        return self.n - first, Correlation(bits=self.bits[first:])

    def padded(self, zeros: int) -> "Correlation":
        """Prefix with the given number of 0-bits."""
        return Correlation(bits="0" * zeros + self.bits)

    def extended(self, m: int) -> "Correlation":
        """The length-m vector 1 0^(m-j-1) s (or s itself when m equals its length)."""
        j = self.n
        if m < j:
            raise LengthMismatchError(f"cannot extend length {j} vector to length {m}")
        if m == j:
            return self
        return Correlation(bits="1" + "0" * (m - j - 1) + self.bits)

    def is_subset_of(self, other: "Correlation") -> bool:
        self._check_same_length(other)
        a, b = self.to_int(), other.to_int()
        return a & b == a

    def __and__(self, other: "Correlation") -> "Correlation":
        self._check_same_length(other)
        return Correlation.from_int(self.to_int() & other.to_int(), self.n)

    def __or__(self, other: "Correlation") -> "Correlation":
        self._check_same_length(other)
        return Correlation.from_int(self.to_int() | other.to_int(), self.n)

    def _check_same_length(self, other: "Correlation") -> None:
        if self.n != other.n:
            raise LengthMismatchError(f"correlation lengths differ: {self.n} vs {other.n}")


class Word(BaseModel):
    """A word over the alphabet {0, ..., sigma-1}."""

    model_config = ConfigDict(frozen=True)

    letters: Tuple[int, ...] = Field(default=(), description="Letter indices")
    sigma: int = Field(2, ge=2, description="Alphabet size")

    @model_validator(mode="after")
    def check_letters(self) -> "Word":
        for letter in self.letters:
            if letter < 0 or letter >= self.sigma:
                raise ValueError(f"letter {letter} outside alphabet of size {self.sigma}")
        return self

    @classmethod
    def from_text(cls, text: str, sigma: int = 2) -> "Word":
        """
        Parse the text form: letters a, b, c, ... for sigma <= 26, otherwise
        comma-separated integers. A comma switches to the integer form for any sigma.
        """
        text = text.strip()
        if not text:
            return cls(letters=(), sigma=sigma)
        try:
            if "," in text or sigma > len(LETTERS):
                letters = tuple(int(part) for part in text.split(","))
            else:
                letters = tuple(LETTERS.index(ch) for ch in text)
        except ValueError as e:
            raise InvalidWordError(f"cannot parse word {text!r}: {e}") from e
        if any(not 0 <= letter < sigma for letter in letters):
            raise InvalidWordError(f"word {text!r} uses letters outside an alphabet of size {sigma}")
        return cls(letters=letters, sigma=sigma)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if self.sigma <= len(LETTERS):
            return "".join(LETTERS[letter] for letter in self.letters)
        return ",".join(str(letter) for letter in self.letters)

    def factor(self, start: int, stop: Optional[int] = None) -> "Word":
        return Word(letters=self.letters[start:stop], sigma=self.sigma)

    def concat(self, other: "Word") -> "Word":
        _check_alphabet(self, other)
        return Word(letters=self.letters + other.letters, sigma=self.sigma)

    def occurrences(self, pattern: "Word") -> List[int]:
        """Start positions of pattern as a factor of this word."""
        m = len(pattern)
        return [i for i in range(len(self) - m + 1) if self.letters[i:i + m] == pattern.letters]


class WordPair(BaseModel):
    """Ordered pair of equal-length words over a shared alphabet."""

    model_config = ConfigDict(frozen=True)

    u: Word
    v: Word

    @model_validator(mode="after")
    def check_pair(self) -> "WordPair":
        if len(self.u) != len(self.v):
            raise ValueError("pair words must have equal length")
        if self.u.sigma != self.v.sigma:
            raise ValueError("pair words must share an alphabet")
        return self

    def __str__(self) -> str:
        return f"({self.u}, {self.v})"


class PeriodSet(BaseModel):
    """Period set P(u) of a word of length n."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0)
    periods: Tuple[int, ...]

    @field_validator("periods")
    @classmethod
    def check_increasing(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(a >= b for a, b in zip(v, v[1:])):
            raise ValueError("periods must be strictly increasing")
        return v

    @model_validator(mode="after")
    def check_range(self) -> "PeriodSet":
        if self.n and (not self.periods or self.periods[0] != 0):
            raise ValueError("a non-empty word always has period 0")
        if self.periods and self.periods[-1] >= self.n:
            raise ValueError("periods must be smaller than the word length")
        return self

    def to_correlation(self) -> Correlation:
        bits = ["0"] * self.n
        for p in self.periods:
            bits[p] = "1"
        return Correlation(bits="".join(bits))


def overlap_bits(u: Tuple[int, ...], v: Tuple[int, ...]) -> str:
    """Correlation bits of two equal-length letter tuples, without validation."""
    n = len(u)
    return "".join("1" if u[i:] == v[:n - i] else "0" for i in range(n))


def _check_alphabet(u: Word, v: Word) -> None:
    if u.sigma != v.sigma:
        raise AlphabetError(f"words over different alphabets: {u.sigma} vs {v.sigma}")


def correlation(u: Word, v: Word) -> Correlation:
    """Correlation c(u, v): bit i is 1 iff u[i..n-1] = v[0..n-i-1]."""
    _check_alphabet(u, v)
    if len(u) != len(v):
        raise LengthMismatchError(f"word lengths differ: {len(u)} vs {len(v)}")
    return Correlation(bits=overlap_bits(u.letters, v.letters))


def autocorrelation(u: Word) -> Correlation:
    # The empty word has the empty autocorrelation.
    return Correlation(bits=overlap_bits(u.letters, u.letters))


def borders(u: Word, v: Word) -> List[Word]:
    """
    All borders of the pair (u, v), longest first. The full-length entry is
    present exactly when u = v, matching bit 0 of the correlation.
    """
    c = correlation(u, v)
    return [u.factor(i) for i in c.positions()]


def period_set(u: Word) -> PeriodSet:
    return PeriodSet(n=len(u), periods=tuple(autocorrelation(u).positions()))


def basic_period(u: Word) -> int:
    """Smallest non-trivial period; the word length when there is none."""
    periods = period_set(u).periods
    return periods[1] if len(periods) > 1 else len(u)


def is_bordered(u: Word, v: Word) -> bool:
    return "1" in correlation(u, v).bits


def is_mutually_bordered(u: Word, v: Word) -> bool:
    return is_bordered(u, v) and is_bordered(v, u)


def is_mutually_unbordered(u: Word, v: Word) -> bool:
    return not is_bordered(u, v) and not is_bordered(v, u)
