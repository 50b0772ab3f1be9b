"""
Exhaustive brute-force oracles.

Words of length n over an alphabet of size sigma are indexed by 0 .. sigma^n - 1,
position 0 being the most significant base-sigma digit. With that indexing the
length-L suffix of word a is a % sigma^L and its length-L prefix is
a // sigma^(n-L), so every overlap test is a vectorized integer comparison.
"""
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from app.errors import AlphabetError, BudgetExceededError
from app.words import Correlation, PopCount, Word, WordPair

logger = logging.getLogger(__name__)

DEFAULT_BRUTE_BUDGET = 2 ** 32
# Upper bound on the number of pair cells materialised per chunk.
CHUNK_CELLS = 1 << 21

_pair_tables: Dict[Tuple[int, int], np.ndarray] = {}
_g_tables: Dict[Tuple[int, int], np.ndarray] = {}


def default_budget() -> int:
    """Budget cap from CORRPOP_BRUTE_BUDGET, else 2^32."""
    raw = os.environ.get("CORRPOP_BRUTE_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            logger.warning("[ORACLE] Ignoring non-integer CORRPOP_BRUTE_BUDGET=%r", raw)
    return DEFAULT_BRUTE_BUDGET


def default_workers() -> int:
    raw = os.environ.get("CORRPOP_THREADS")
    if raw and raw.isdigit() and int(raw) > 0:
        return int(raw)
    return 1


def check_budget(n: int, sigma: int, budget: Optional[int] = None) -> None:
    """Refuse enumerations of more than `budget` pairs (sigma^(2n) cells)."""
    if sigma < 2:
        raise AlphabetError(f"alphabet size must be at least 2, got {sigma}")
    cap = default_budget() if budget is None else budget
    size = sigma ** (2 * n)
    if size > cap:
        logger.warning("[ORACLE] Refusing enumeration of %d cells (budget %d)", size, cap)
        raise BudgetExceededError(f"brute force over sigma^(2n) = {sigma}^{2 * n} = {size} exceeds budget {cap}")


def decode_word(index: int, n: int, sigma: int) -> Word:
    letters = []
    for _ in range(n):
        index, digit = divmod(index, sigma)
        letters.append(digit)
    return Word(letters=tuple(reversed(letters)), sigma=sigma)


def _chunks(total: int, width: int) -> List[Tuple[int, int]]:
    step = max(1, CHUNK_CELLS // max(1, width))
    return [(start, min(total, start + step)) for start in range(0, total, step)]


def _run_chunks(work: Callable[[int, int], np.ndarray], chunks: List[Tuple[int, int]], workers: int) -> np.ndarray:
    """Apply work to every chunk and sum the partial histograms in chunk order."""
    if workers <= 1 or len(chunks) == 1:
        partials = [work(lo, hi) for lo, hi in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            partials = list(executor.map(lambda bounds: work(*bounds), chunks))
    return np.sum(partials, axis=0)


def _pair_codes(a: np.ndarray, b: np.ndarray, n: int, sigma: int) -> np.ndarray:
    """Correlation codes (MSB = shift 0) for every pair in a x b."""
    codes = np.zeros((a.size, b.size), dtype=np.int64)
    for i in range(n):
        length = n - i
        suffix = (a % sigma ** length)[:, None]
        prefix = (b // sigma ** i)[None, :]
        codes |= (suffix == prefix).astype(np.int64) << (n - 1 - i)
    return codes


def _pair_histogram(n: int, sigma: int, workers: int) -> np.ndarray:
    key = (n, sigma)
    if key not in _pair_tables:
        words = sigma ** n
        everything = np.arange(words, dtype=np.int64)
        logger.debug("[ORACLE] Enumerating %d pairs (n=%d, sigma=%d, workers=%d)", words * words, n, sigma, workers)

        def work(lo: int, hi: int) -> np.ndarray:
            codes = _pair_codes(np.arange(lo, hi, dtype=np.int64), everything, n, sigma)
            return np.bincount(codes.ravel(), minlength=1 << n)

        _pair_tables[key] = _run_chunks(work, _chunks(words, words), workers)
    return _pair_tables[key]


def brute_population_table(n: int, sigma: int, budget: Optional[int] = None, workers: Optional[int] = None) -> Dict[str, PopCount]:
    """Population of every correlation of length n, keyed by bit string (zeros omitted)."""
    check_budget(n, sigma, budget)
    histogram = _pair_histogram(n, sigma, workers or default_workers())
    return {
        Correlation.from_int(code, n).bits: int(count)
        for code, count in enumerate(histogram.tolist())
        if count
    }


def brute_population(t: Correlation, sigma: int, budget: Optional[int] = None, workers: Optional[int] = None) -> PopCount:
    """Exact number of pairs (u, v) in Σ^n x Σ^n with c(u, v) = t."""
    return brute_population_table(t.n, sigma, budget, workers).get(t.bits, 0)


def _g_histogram(n: int, sigma: int, workers: int) -> np.ndarray:
    key = (n, sigma)
    if key not in _g_tables:
        total = sigma ** (2 * n)

        def work(lo: int, hi: int) -> np.ndarray:
            w = np.arange(lo, hi, dtype=np.int64)
            codes = np.zeros(w.size, dtype=np.int64)
            # Length-n suffix of c(w, w): shifts n .. 2n-1.
            for k in range(n):
                shift = n + k
                matches = (w % sigma ** (2 * n - shift)) == (w // sigma ** shift)
                codes |= matches.astype(np.int64) << (n - 1 - k)
            return np.bincount(codes, minlength=1 << n)

        _g_tables[key] = _run_chunks(work, _chunks(total, 1), workers)
    return _g_tables[key]


def brute_g_table(n: int, sigma: int, budget: Optional[int] = None, workers: Optional[int] = None) -> Dict[str, PopCount]:
    check_budget(n, sigma, budget)
    histogram = _g_histogram(n, sigma, workers or default_workers())
    return {
        Correlation.from_int(code, n).bits: int(count)
        for code, count in enumerate(histogram.tolist())
        if count
    }


def brute_g(t: Correlation, sigma: int, budget: Optional[int] = None, workers: Optional[int] = None) -> PopCount:
    """|G(t)|: words of length 2n whose autocorrelation ends with t."""
    return brute_g_table(t.n, sigma, budget, workers).get(t.bits, 0)


def brute_autocorrelation_codes(n: int, sigma: int = 2, budget: Optional[int] = None) -> np.ndarray:
    """Autocorrelation code of every word of length n, indexed by word."""
    if sigma < 2:
        raise AlphabetError(f"alphabet size must be at least 2, got {sigma}")
    cap = default_budget() if budget is None else budget
    if sigma ** n > cap:
        raise BudgetExceededError(f"enumerating {sigma}^{n} words exceeds budget {cap}")
    w = np.arange(sigma ** n, dtype=np.int64)
    codes = np.zeros(w.size, dtype=np.int64)
    for p in range(n):
        matches = (w % sigma ** (n - p)) == (w // sigma ** p)
        codes |= matches.astype(np.int64) << (n - 1 - p)
    return codes


def brute_autocorrelation_counts(n: int, sigma: int = 2, budget: Optional[int] = None) -> Dict[str, PopCount]:
    """Number of words of length n realizing each autocorrelation."""
    codes, counts = np.unique(brute_autocorrelation_codes(n, sigma, budget), return_counts=True)
    return {Correlation.from_int(int(c), n).bits: int(k) for c, k in zip(codes, counts)}


def brute_witnesses(t: Correlation, sigma: int, budget: Optional[int] = None) -> List[WordPair]:
    """Every pair (u, v) with c(u, v) = t, in lexicographic order of (u, v)."""
    n = t.n
    check_budget(n, sigma, budget)
    words = sigma ** n
    target = t.to_int()
    everything = np.arange(words, dtype=np.int64)
    pairs = []
    for lo, hi in _chunks(words, words):
        codes = _pair_codes(np.arange(lo, hi, dtype=np.int64), everything, n, sigma)
        rows, cols = np.nonzero(codes == target)
        for a, b in zip(rows.tolist(), cols.tolist()):
            pairs.append(WordPair(u=decode_word(lo + a, n, sigma), v=decode_word(b, n, sigma)))
    return pairs


def _side_population(t: Correlation, sigma: int, budget: Optional[int], axis: int) -> PopCount:
    n = t.n
    check_budget(n, sigma, budget)
    words = sigma ** n
    everything = np.arange(words, dtype=np.int64)
    target = t.to_int()
    seen = np.zeros(words, dtype=bool)
    for lo, hi in _chunks(words, words):
        hits = _pair_codes(np.arange(lo, hi, dtype=np.int64), everything, n, sigma) == target
        if axis == 0:
            seen[lo:hi] |= hits.any(axis=1)
        else:
            seen |= hits.any(axis=0)
    return int(seen.sum())


def brute_right_population(t: Correlation, sigma: int, budget: Optional[int] = None) -> PopCount:
    """Number of words v admitting some u with c(u, v) = t."""
    return _side_population(t, sigma, budget, axis=1)


def brute_left_population(t: Correlation, sigma: int, budget: Optional[int] = None) -> PopCount:
    """Number of words u admitting some v with c(u, v) = t."""
    return _side_population(t, sigma, budget, axis=0)


def brute_pair_classes(n: int, sigma: int, budget: Optional[int] = None) -> Dict[str, PopCount]:
    """
    Counts of bordered, unbordered, mutually bordered and mutually unbordered
    ordered pairs of length-n words.
    """
    check_budget(n, sigma, budget)
    words = sigma ** n
    everything = np.arange(words, dtype=np.int64)
    bordered = mutual = mutual_unbordered = 0
    for lo, hi in _chunks(words, words):
        block = np.arange(lo, hi, dtype=np.int64)
        forward = _pair_codes(block, everything, n, sigma) != 0
        # c(v, u) for the same cells: swap the roles of the two index vectors.
        backward = _pair_codes(everything, block, n, sigma).T != 0
        bordered += int(forward.sum())
        mutual += int((forward & backward).sum())
        mutual_unbordered += int((~forward & ~backward).sum())
    return {
        "pairs": words * words,
        "bordered": bordered,
        "unbordered": words * words - bordered,
        "mutually_bordered": mutual,
        "mutually_unbordered": mutual_unbordered,
    }
