"""
Witness construction for correlations.
Binary words only: Γn and Δn do not depend on the alphabet size.
"""
import logging
from typing import Dict, List, Optional

from app.errors import InvalidCorrelationError
from app.sets import decompose, position_classes, require_autocorrelation
from app.words import Correlation, Word, WordPair, correlation, overlap_bits

logger = logging.getLogger(__name__)

__all__ = ['WordPair', 'realize_autocorrelation', 'realize_correlation', 'verify_realization']


class _PeriodSearch:
    """
    Depth-first search over one binary letter per position class, classes in
    order of their smallest position, 0 before 1. The first leaf found is the
    lexicographically least word with the requested autocorrelation.
    """

    def __init__(self, s: Correlation):
        self.bits = s.bits
        self.n = s.n
        self.classes = position_classes(self.bits)
        self.class_of: Dict[int, int] = {}
        for index, group in enumerate(self.classes):
            for position in group:
                self.class_of[position] = index
        self.forbidden = [p for p in range(1, self.n) if self.bits[p] == "0"]
        self.letters: List[Optional[int]] = [None] * len(self.classes)

    def _forced_period(self, p: int) -> bool:
        """True when every pair (i, i+p) is already known to be equal."""
        for i in range(self.n - p):
            a, b = self.class_of[i], self.class_of[i + p]
            if a == b:
                continue
            la, lb = self.letters[a], self.letters[b]
            if la is None or lb is None or la != lb:
                return False
        return True

    def _word(self) -> tuple:
        return tuple(self.letters[self.class_of[i]] for i in range(self.n))

    def run(self, index: int = 0) -> Optional[tuple]:
        if any(self._forced_period(p) for p in self.forbidden):
            return None
        if index == len(self.classes):
            word = self._word()
            return word if overlap_bits(word, word) == self.bits else None
        for letter in (0, 1):
            self.letters[index] = letter
            found = self.run(index + 1)
            if found is not None:
                return found
        self.letters[index] = None
        return None


def realize_autocorrelation(s: Correlation) -> Word:
    """Lexicographically least binary word with autocorrelation s."""
    require_autocorrelation(s)
    letters = _PeriodSearch(s).run()
    if letters is None:
        raise InvalidCorrelationError(f"no binary word realizes {s.bits}")
    return Word(letters=letters, sigma=2)


def realize_correlation(t: Correlation) -> WordPair:
    """
    A binary pair (u, v) with c(u, v) = t:
      - t in Γn: (w, w) for w realizing t;
      - t = 0^n: (a^n, b^n);
      - otherwise, t = 0^(n-j) s: w realizing s, u = b̄^(n-j) w and v = w ā^(n-j),
        where ā = w[0] and b̄ is the other letter.
    """
    j, s = decompose(t)
    n = t.n
    if j == n:
        w = realize_autocorrelation(t)
        return WordPair(u=w, v=w)
    if j == 0:
        return WordPair(u=Word(letters=(0,) * n, sigma=2), v=Word(letters=(1,) * n, sigma=2))
    w = realize_autocorrelation(s)
    first = w.letters[0]
    pad = n - j
    u = Word(letters=(1 - first,) * pad + w.letters, sigma=2)
    v = Word(letters=w.letters + (first,) * pad, sigma=2)
    logger.debug("[REALIZE] %s -> (%s, %s)", t.bits, u, v)
    return WordPair(u=u, v=v)


def verify_realization(t: Correlation, pair: WordPair) -> bool:
    if len(pair.u) != t.n:
        return False
    return correlation(pair.u, pair.v) == t
