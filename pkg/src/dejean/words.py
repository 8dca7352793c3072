"""Finite words, periods, and exact fractional repetition search.

Binary words are plain ``str`` over ``"01"``; words over a numbered alphabet
{1, ..., n} are :class:`SigmaWord` (any sequence of ints is also accepted by
the scanning functions).  Every exponent comparison in this module is an
integer cross-multiplication; no floating point is used anywhere.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

# Words at least this long get the bitmask fast path in the period scans.
# Tests lower it to exercise both paths on the same inputs.
_MASK_MIN_LENGTH = 2048


@dataclass(frozen=True)
class SigmaWord:
    """Word over the alphabet {1, ..., n}.

    ``n`` is the alphabet size; ``letters`` holds values in 1..n.  The word
    is "window distinct" when every factor of length n-1 consists of n-1
    distinct letters, which is the precondition for Pansiot encoding.
    """

    n: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.n}")
        for k, c in enumerate(self.letters):
            if not 1 <= c <= self.n:
                raise ValueError(f"letter {c!r} at position {k} outside 1..{self.n}")

    def __len__(self) -> int:
        return len(self.letters)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return SigmaWord(self.n, self.letters[k])
        return self.letters[k]

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def window_violation(self) -> int | None:
        """Index of the first window of length n-1 holding a repeated letter.

        Returns None when the word is window distinct.
        """
        width = self.n - 1
        last = {}
        for k, c in enumerate(self.letters):
            prev = last.get(c)
            if prev is not None and k - prev < width:
                return max(0, k - width + 1)
            last[c] = k
        return None

    @property
    def is_window_distinct(self) -> bool:
        return self.window_violation() is None

    def text(self) -> str:
        """Serialize: plain digits for n <= 9, dot-separated decimals above."""
        if self.n <= 9:
            return "".join(str(c) for c in self.letters)
        return ".".join(str(c) for c in self.letters)

    @classmethod
    def from_text(cls, text: str, n: int) -> "SigmaWord":
        """Parse the :meth:`text` format; also accepts space separation."""
        text = text.strip()
        if not text:
            return cls(n, ())
        if "." in text or " " in text or "\t" in text:
            parts = text.replace(".", " ").split()
        else:
            parts = list(text)
        try:
            letters = tuple(int(p) for p in parts)
        except ValueError as exc:
            raise ValueError(f"malformed word {text!r}: {exc}") from None
        return cls(n, letters)


@dataclass(frozen=True)
class RepetitionOccurrence:
    """A factor w[start : start+length] carrying period ``period``.

    The exponent is the exact rational length/period.  The excess
    (length - period) is required to be positive unless the occurrence is
    explicitly flagged as an exact period boundary.
    """

    start: int
    period: int
    length: int
    exact_boundary: bool = False

    def __post_init__(self) -> None:
        if self.start < 0 or self.period < 1:
            raise ValueError(f"bad occurrence ({self.start}, {self.period}, {self.length})")
        if self.length <= self.period and not self.exact_boundary:
            raise ValueError(f"empty excess: length {self.length} <= period {self.period}")

    @property
    def end(self) -> int:
        return self.start + self.length

    @property
    def excess(self) -> int:
        return self.length - self.period

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.length, self.period)

    def describe(self) -> str:
        return f"start={self.start} period={self.period} length={self.length} exponent={self.exponent}"


def _symbols(w) -> Sequence:
    """Normalize a word argument to an indexable symbol sequence."""
    if isinstance(w, SigmaWord):
        return w.letters
    if isinstance(w, (str, tuple, list)):
        return w
    return tuple(w)


def has_period(w, i: int, j: int, q: int) -> bool:
    """True when w[k] == w[k+q] for every i <= k < j-q.

    Vacuously true when j - i <= q.  Raises on indices outside the word or
    a non-positive period.
    """
    sym = _symbols(w)
    if not 0 <= i <= j <= len(sym):
        raise IndexError(f"interval [{i}, {j}) outside word of length {len(sym)}")
    if q < 1:
        raise ValueError(f"period must be >= 1, got {q}")
    return all(sym[k] == sym[k + q] for k in range(i, j - q))


def maximal_extension(w, i: int, j: int, q: int) -> tuple[int, int]:
    """Largest interval [i', j') containing [i, j) that still has period q.

    The input interval must have period q.  Extension is rightward first,
    then leftward; a boundary position is absorbed whenever the periodicity
    constraint it introduces holds (or is vacuous).
    """
    sym = _symbols(w)
    if not has_period(sym, i, j, q):
        raise ValueError(f"interval [{i}, {j}) does not have period {q}")
    L = len(sym)
    while j < L:
        if j - q >= i and sym[j - q] != sym[j]:
            break
        j += 1
    while i > 0:
        if i - 1 + q < j and sym[i - 1] != sym[i - 1 + q]:
            break
        i -= 1
    return i, j


def _period_match_runs(sym: Sequence, q: int) -> Iterator[tuple[int, int]]:
    """Maximal intervals [i, j) of period q with j - i > q, left to right."""
    limit = len(sym) - q
    k = 0
    while k < limit:
        if sym[k] == sym[k + q]:
            start = k
            k += 1
            while k < limit and sym[k] == sym[k + q]:
                k += 1
            yield start, k + q
        else:
            k += 1


def _letter_masks(sym: Sequence) -> list[int]:
    """One bitmask per letter; bit k set iff sym[k] is that letter."""
    L = len(sym)
    size = (L + 7) // 8
    packed: dict = {}
    for k, c in enumerate(sym):
        ba = packed.get(c)
        if ba is None:
            ba = packed[c] = bytearray(size)
        ba[k >> 3] |= 1 << (k & 7)
    return [int.from_bytes(ba, "little") for ba in packed.values()]


def _match_mask(masks: list[int], q: int) -> int:
    """Bit k set iff positions k and k+q hold the same letter."""
    m = 0
    for pm in masks:
        m |= pm & (pm >> q)
    return m


def _has_run(mask: int, t: int) -> bool:
    """True when the mask contains t consecutive set bits."""
    s = 1
    while s < t and mask:
        shift = min(s, t - s)
        mask &= mask >> shift
        s += shift
    return mask != 0


def max_exponent(w) -> tuple[Fraction, RepetitionOccurrence | None]:
    """Largest exact exponent length/period over factors with period < length.

    Returns the exponent with a witness occurrence attaining it (maximal, with
    the smallest period and then the smallest start among maxima).  A word in
    which no letter recurs at any distance has no such factor; the result is
    then (1, None).
    """
    sym = _symbols(w)
    L = len(sym)
    if L == 0:
        raise ValueError("empty word")
    best_num, best_den = 1, 1
    best: RepetitionOccurrence | None = None
    masks = _letter_masks(sym) if L >= _MASK_MIN_LENGTH else None
    for q in range(1, L):
        if L * best_den <= best_num * q:
            break  # even a full-length factor cannot beat the current best
        if masks is not None:
            need = (best_num - best_den) * q // best_den + 1
            m = _match_mask(masks, q)
            if not m or not _has_run(m, need):
                continue
        for i, j in _period_match_runs(sym, q):
            if (j - i) * best_den > best_num * q:
                best_num, best_den = j - i, q
                best = RepetitionOccurrence(i, q, j - i)
    return Fraction(best_num, best_den), best


def find_repetitions_exceeding(w, num: int, den: int) -> list[RepetitionOccurrence]:
    """All maximal occurrences with exponent strictly above num/den.

    Occurrences are maximal period-q intervals, deduplicated by construction
    and sorted by (start, period).  The list is empty exactly when the word
    is (num/den)+-power free.  Comparison is den*length > num*period.
    """
    if den < 1 or num < den:
        raise ValueError(f"threshold {num}/{den} must be a rational >= 1")
    sym = _symbols(w)
    L = len(sym)
    out = []
    masks = _letter_masks(sym) if L >= _MASK_MIN_LENGTH else None
    for q in range(1, L):
        if L * den <= num * q:
            break
        min_run = (num - den) * q // den + 1
        if min_run > L - q:
            continue
        if masks is not None:
            m = _match_mask(masks, q)
            if not m or not _has_run(m, min_run):
                continue
        for i, j in _period_match_runs(sym, q):
            if (j - i) * den > num * q:
                out.append(RepetitionOccurrence(i, q, j - i))
    out.sort(key=lambda occ: (occ.start, occ.period))
    return out


def has_repetition_exceeding(w, num: int, den: int) -> bool:
    """Early-exit form of :func:`find_repetitions_exceeding` emptiness."""
    if den < 1 or num < den:
        raise ValueError(f"threshold {num}/{den} must be a rational >= 1")
    sym = _symbols(w)
    L = len(sym)
    masks = _letter_masks(sym) if L >= _MASK_MIN_LENGTH else None
    for q in range(1, L):
        if L * den <= num * q:
            break
        min_run = (num - den) * q // den + 1
        if min_run > L - q:
            continue
        if masks is not None:
            if _has_run(_match_mask(masks, q), min_run):
                return True
            continue
        for i, j in _period_match_runs(sym, q):
            if (j - i) * den > num * q:
                return True
    return False


def find_repetitions_with_excess_at_least(w, min_excess: int) -> list[RepetitionOccurrence]:
    """All maximal occurrences whose excess (length - period) reaches min_excess."""
    if min_excess < 1:
        raise ValueError(f"min_excess must be >= 1, got {min_excess}")
    sym = _symbols(w)
    L = len(sym)
    out = []
    masks = _letter_masks(sym) if L >= _MASK_MIN_LENGTH else None
    for q in range(1, L):
        if L - q < min_excess:
            break
        if masks is not None:
            m = _match_mask(masks, q)
            if not m or not _has_run(m, min_excess):
                continue
        for i, j in _period_match_runs(sym, q):
            if (j - i) - q >= min_excess:
                out.append(RepetitionOccurrence(i, q, j - i))
    out.sort(key=lambda occ: (occ.start, occ.period))
    return out


def has_repetition_with_excess_at_least(w, min_excess: int) -> bool:
    """Early-exit form of :func:`find_repetitions_with_excess_at_least` emptiness."""
    if min_excess < 1:
        raise ValueError(f"min_excess must be >= 1, got {min_excess}")
    sym = _symbols(w)
    L = len(sym)
    masks = _letter_masks(sym) if L >= _MASK_MIN_LENGTH else None
    for q in range(1, L):
        if L - q < min_excess:
            break
        if masks is not None:
            if _has_run(_match_mask(masks, q), min_excess):
                return True
            continue
        for i, j in _period_match_runs(sym, q):
            if (j - i) - q >= min_excess:
                return True
    return False


def parse_binary(text: str) -> str:
    """Validate a binary word given as a string of 0s and 1s."""
    text = text.strip()
    for k, ch in enumerate(text):
        if ch not in "01":
            raise ValueError(f"non-binary symbol {ch!r} at position {k}")
    return text
