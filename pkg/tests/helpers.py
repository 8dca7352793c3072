"""Brute-force oracles shared by the test modules.

Everything here recomputes results straight from the definitions with plain
loops, independently of the library's scanning strategies.
"""

from fractions import Fraction
from itertools import product


def brute_has_period(w, i, j, q):
    return all(w[k] == w[k + q] for k in range(i, j - q))


def brute_maximal_extension(w, i, j, q):
    """Grow [i, j) one position at a time while the period survives."""
    L = len(w)
    changed = True
    while changed:
        changed = False
        if j < L and brute_has_period(w, i, j + 1, q):
            j += 1
            changed = True
        elif i > 0 and brute_has_period(w, i - 1, j, q):
            i -= 1
            changed = True
    return i, j


def brute_repetition_triples(w):
    """Every (start, period, length) with length > period and that period."""
    L = len(w)
    out = []
    for i in range(L):
        for j in range(i + 2, L + 1):
            for q in range(1, j - i):
                if brute_has_period(w, i, j, q):
                    out.append((i, q, j - i))
    return out


def brute_max_exponent(w):
    """(exponent, witness or None) over all repetition triples."""
    best = Fraction(1)
    witness = None
    for i, q, length in brute_repetition_triples(w):
        exp = Fraction(length, q)
        if exp > best:
            best = exp
            witness = (i, q, length)
        elif witness is not None and exp == best:
            # prefer the smallest period, then the smallest start
            if (q, i) < (witness[1], witness[0]):
                witness = (i, q, length)
    return best, witness


def brute_find_exceeding(w, num, den):
    """Maximal occurrences above num/den, deduplicated, sorted."""
    found = set()
    for i, q, length in brute_repetition_triples(w):
        if length * den > num * q:
            i2, j2 = brute_maximal_extension(w, i, i + length, q)
            found.add((i2, q, j2 - i2))
    return sorted(found)


def brute_find_excess(w, min_excess):
    found = set()
    for i, q, length in brute_repetition_triples(w):
        if length - q >= min_excess:
            i2, j2 = brute_maximal_extension(w, i, i + length, q)
            found.add((i2, q, j2 - i2))
    return sorted(found)


def all_words(alphabet, length):
    for tup in product(alphabet, repeat=length):
        if isinstance(alphabet, str):
            yield "".join(tup)
        else:
            yield tup


def occ_triples(occurrences):
    return [(o.start, o.period, o.length) for o in occurrences]
