"""2-markability of binary factors relative to a uniform morphism.

An occurrence of v at position p inside the image h(u) sits at the phase
h(u)[b : p], where b is the last image-block boundary at or before p.  The
word v is 2-markable when all of its occurrences inside images of length-2
factors of the limit word share one phase word.  For factors of the image
length r this pins occurrences to block boundaries, which is what the
repetition bounds rely on.
"""

from dataclasses import dataclass

from .morphisms import FactorSet, UniformMorphism, factor_closure


@dataclass(frozen=True)
class PhaseConflict:
    """Two occurrences of the same factor with different phase words.
    Each side is (source word u, occurrence position, phase word)."""

    first: tuple[str, int, str]
    second: tuple[str, int, str]

    def describe(self) -> str:
        (u1, p1, x1), (u2, p2, x2) = self.first, self.second
        return (f"phase {x1!r} at position {p1} of image({u1}) vs "
                f"phase {x2!r} at position {p2} of image({u2})")


def occurrence_phases(v: str, h: UniformMorphism, u: str) -> list[tuple[int, str]]:
    """(position, phase word) for every occurrence of v inside h(u)."""
    image = h.apply(u)
    r = h.r
    out = []
    p = image.find(v)
    while p != -1:
        out.append((p, image[(p // r) * r : p]))
        p = image.find(v, p + 1)
    return out


def is_2markable(v: str, h: UniformMorphism, U: FactorSet) -> tuple[bool, PhaseConflict | None]:
    """Whether every occurrence of v in an image of a member of U shares one
    phase word.  On failure the witness holds two conflicting occurrences.

    U is meant to be the length-2 factor closure of h; any factor set is
    accepted for exploration.
    """
    seen: tuple[str, int, str] | None = None
    for u in U:
        for p, phase in occurrence_phases(v, h, u):
            if seen is None:
                seen = (u, p, phase)
            elif phase != seen[2]:
                return False, PhaseConflict(seen, (u, p, phase))
    return True, None


@dataclass(frozen=True)
class MarkabilityReport:
    """Outcome of the batch check over every length-r factor of h(0110)."""

    factor_count: int
    failures: tuple[tuple[str, PhaseConflict], ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def describe(self) -> str:
        if self.passed:
            return f"{self.factor_count} factors checked, all 2-markable"
        v, conflict = self.failures[0]
        return (f"{len(self.failures)} of {self.factor_count} factors not 2-markable; "
                f"first: {v} with {conflict.describe()}")


def check_all_length_r_factors_markable(h: UniformMorphism) -> MarkabilityReport:
    """2-markability of every length-r factor of h(0110).

    The images of 0110 cover the images of all length-2 factors of the limit
    word, so these are all length-r factors that occur at all.  Failures are
    listed in lexicographic factor order.
    """
    r = h.r
    probe = h.apply("0110")
    factors = sorted({probe[i : i + r] for i in range(len(probe) - r + 1)})
    U = factor_closure(h, 2)
    failures = []
    for v in factors:
        ok, conflict = is_2markable(v, h, U)
        if not ok:
            failures.append((v, conflict))
    return MarkabilityReport(len(factors), tuple(failures))
