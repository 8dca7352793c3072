"""End-to-end verification for one alphabet size.

Eight checks make up a report: structural facts about the two images, the
simultaneous-conjugacy condition on their permutation images, the length-2
factor universe, 2-markability of all image-length factors, the bound
arithmetic, kernel-freeness of the doubled probe encoding, and the two
decisive repetition searches on its decoding.  All eight always run; a
failing check never short-circuits the rest.
"""

import json
import time
from dataclasses import dataclass
from fractions import Fraction

from .markability import check_all_length_r_factors_markable
from .morphisms import UniformMorphism, builtin, factor_closure, iteration_bound
from .pansiot import canonical_prefix, decode
from .perms import (PrefixPermutationTable, find_conjugator, step0, step1,
                    word_permutation)
from .words import (RepetitionOccurrence, SigmaWord, find_repetitions_exceeding,
                    find_repetitions_with_excess_at_least, maximal_extension)

CHECK_NAMES = (
    "structure",
    "algebraic_condition",
    "factor_set_2",
    "markability_r",
    "iteration_bound",
    "kernel_free",
    "big_excess_free",
    "power_free",
)


@dataclass(frozen=True)
class Bounds:
    """Derived constants for one alphabet size: the period bound for kernel
    repetitions, the codeword-length bound for short-excess repetitions, and
    the repetition threshold itself."""

    kernel_bound: int
    short_bound: int
    threshold: Fraction


def compute_bounds(n: int) -> Bounds:
    """Bounds for alphabet size n: 9n^2-6n+1, n^2-3n+1, and n/(n-1).

    The kernel bound is re-derived as 4n + (n-1)(9n-1) to guard the
    arithmetic against transcription slips.
    """
    if n < 2:
        raise ValueError(f"alphabet size must be >= 2, got {n}")
    kernel_bound = 9 * n * n - 6 * n + 1
    if kernel_bound != 4 * n + (n - 1) * (9 * n - 1):
        raise RuntimeError(f"kernel bound derivation mismatch at n={n}")
    return Bounds(kernel_bound, n * n - 3 * n + 1, Fraction(n, n - 1))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: str
    ms: int


@dataclass(frozen=True)
class VerificationReport:
    n: int
    r: int
    checks: tuple[CheckResult, ...]

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "overall": self.overall,
            "checks": [
                {"name": c.name, "pass": c.passed, "witness": c.witness, "ms": c.ms}
                for c in self.checks
            ],
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)

    def render_text(self) -> str:
        kb = compute_bounds(self.n).kernel_bound
        lines = [
            f"verification n={self.n} r={self.r}",
            f"  kernel scan period bound {kb} = 9n^2-6n+1; the iteration_bound and",
            f"  markability_r checks are what confine kernel repetitions below it",
        ]
        for c in self.checks:
            mark = "pass" if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name:<20} {c.witness} ({c.ms} ms)")
        lines.append(f"  overall: {'PASS' if self.overall else 'FAIL'}")
        return "\n".join(lines)


def _as_morphism(source) -> UniformMorphism:
    if isinstance(source, UniformMorphism):
        return source
    return builtin(source)


def probe_encoding(source) -> str:
    """The doubled image of 0110: every factor the checks need lives here."""
    h = _as_morphism(source)
    return h.apply(h.apply("0110"))


def probe_word(source) -> SigmaWord:
    """Decoding of the doubled probe image over the canonical prefix.

    Its length is 4r^2 + n - 1; the two decisive searches run on it.
    """
    h = _as_morphism(source)
    return decode(probe_encoding(h), canonical_prefix(h.n))


def find_kernel_repetitions(bits: str, n: int, max_period: int | None = None) -> list[RepetitionOccurrence]:
    """Occurrences u = b[i:j] with a period q < j-i whose period word maps to
    the identity permutation, reported as maximal occurrences deduplicated
    by (start, period) and sorted.

    A kernel repetition of period q starts at some position a with
    b[a] == b[a+q] and identical prefix-permutations at a and a+q, so
    positions are bucketed by (prefix id, letter) and pairs within one
    bucket are read off.  ``max_period`` caps the period scanned.
    """
    table = PrefixPermutationTable(bits, n)
    ids = table.ids
    buckets: dict = {}
    for a in range(len(bits)):
        buckets.setdefault((ids[a], bits[a]), []).append(a)
    starts: dict[int, list[int]] = {}
    for positions in buckets.values():
        for i in range(len(positions)):
            a = positions[i]
            for j in range(i + 1, len(positions)):
                q = positions[j] - a
                if max_period is not None and q > max_period:
                    break
                starts.setdefault(q, []).append(a)
    found = {}
    for q, positions in starts.items():
        # Positions inside one maximal period-q interval all extend to it,
        # so one extension per interval suffices.
        covered_end = -1
        for a in sorted(positions):
            if a + q < covered_end:
                continue
            start, end = maximal_extension(bits, a, a + q + 1, q)
            found[(start, q)] = end
            covered_end = end
    occs = [RepetitionOccurrence(start, q, end - start) for (start, q), end in found.items()]
    occs.sort(key=lambda occ: (occ.start, occ.period))
    return occs


def _result(name: str, started: float, passed: bool, witness: str) -> CheckResult:
    return CheckResult(name, passed, witness, int((time.perf_counter() - started) * 1000))


def _guarded(name: str, body) -> CheckResult:
    started = time.perf_counter()
    try:
        passed, witness = body()
    except Exception as exc:  # a failing construction is report content
        return _result(name, started, False, f"error: {exc}")
    return _result(name, started, passed, witness)


def _check_structure(h: UniformMorphism) -> tuple[bool, str]:
    problems = []
    if h.image0[-1] == h.image1[-1]:
        problems.append(f"last letters agree ({h.image0[-1]})")
    if "011" not in h.image0:
        problems.append("011 does not occur in image0")
    if "110" not in h.image1:
        problems.append("110 does not occur in image1")
    if h.r > 4 * h.n:
        problems.append(f"r={h.r} exceeds 4n={4 * h.n}")
    if problems:
        return False, "; ".join(problems)
    return True, f"r={h.r}, last letters {h.image0[-1]}/{h.image1[-1]}, 011 in h(0), 110 in h(1)"


def _check_algebraic(h: UniformMorphism) -> tuple[bool, str]:
    a0 = word_permutation(h.image0, h.n)
    a1 = word_permutation(h.image1, h.n)
    tau = find_conjugator(a0, a1, h.n)
    if tau is None:
        return False, (f"no simultaneous conjugator; image cycle types "
                       f"{a0.cycle_type()} and {a1.cycle_type()}")
    if tau * a0 * tau.inverse() != step0(h.n) or tau * a1 * tau.inverse() != step1(h.n):
        return False, f"conjugator {tau.one_line()} fails re-verification"
    return True, f"conjugator {tau.one_line()}"


def _check_factor_set_2(h: UniformMorphism) -> tuple[bool, str]:
    members = factor_closure(h, 2).members
    expected = {"01", "10", "11"}
    if members != expected:
        return False, f"length-2 factors {sorted(members)} != {sorted(expected)}"
    return True, "length-2 factors {01, 10, 11}"


def _check_markability(h: UniformMorphism) -> tuple[bool, str]:
    report = check_all_length_r_factors_markable(h)
    return report.passed, report.describe()


def _check_iteration_bound_value(h: UniformMorphism) -> tuple[bool, str]:
    bounds = compute_bounds(h.n)
    value = iteration_bound(bounds.kernel_bound, h.r)
    ok = value == 2 and bounds.short_bound < bounds.kernel_bound
    return ok, (f"I({bounds.kernel_bound}, {h.r}) = {value}; "
                f"short bound {bounds.short_bound} < {bounds.kernel_bound}")


def _check_kernel(h: UniformMorphism, bits: str, bounded: bool) -> tuple[bool, str]:
    bound = compute_bounds(h.n).kernel_bound if bounded else None
    occs = find_kernel_repetitions(bits, h.n, bound)
    scope = f"periods <= {bound}" if bounded else "all periods"
    if occs:
        return False, f"{len(occs)} kernel repetitions ({scope}); first: {occs[0].describe()}"
    return True, f"no kernel repetitions in {len(bits)} letters ({scope})"


def _check_big_excess(h: UniformMorphism, v: SigmaWord) -> tuple[bool, str]:
    occs = find_repetitions_with_excess_at_least(v, h.n - 1)
    if occs:
        return False, f"{len(occs)} repetitions with excess >= {h.n - 1}; first: {occs[0].describe()}"
    return True, f"no repetition with excess >= {h.n - 1} in {len(v)} letters"


def _check_power(h: UniformMorphism, v: SigmaWord) -> tuple[bool, str]:
    occs = find_repetitions_exceeding(v, h.n, h.n - 1)
    if occs:
        return False, (f"{len(occs)} repetitions above {h.n}/{h.n - 1}; "
                       f"first: {occs[0].describe()}")
    return True, f"no repetition above {h.n}/{h.n - 1} in {len(v)} letters"


def check_iteration_bound(source) -> CheckResult:
    h = _as_morphism(source)
    return _guarded("iteration_bound", lambda: _check_iteration_bound_value(h))


def check_kernel_free(source, bounded: bool = True) -> CheckResult:
    h = _as_morphism(source)
    return _guarded("kernel_free", lambda: _check_kernel(h, probe_encoding(h), bounded))


def check_big_excess_free(source) -> CheckResult:
    h = _as_morphism(source)
    return _guarded("big_excess_free", lambda: _check_big_excess(h, probe_word(h)))


def check_power_free(source) -> CheckResult:
    h = _as_morphism(source)
    return _guarded("power_free", lambda: _check_power(h, probe_word(h)))


def verify(source, bounded_kernel_scan: bool = True, skip=()) -> VerificationReport:
    """Run the full check suite for a builtin alphabet size or a supplied
    morphism.  ``skip`` (a set of check names, a test hook) omits checks
    from the report; everything else still runs.
    """
    h = _as_morphism(source)
    skip = frozenset(skip)
    unknown = skip - set(CHECK_NAMES)
    if unknown:
        raise ValueError(f"unknown check names: {sorted(unknown)}")

    shared: dict = {}

    def encoding() -> str:
        if "bits" not in shared:
            shared["bits"] = probe_encoding(h)
        return shared["bits"]

    def decoded() -> SigmaWord:
        if "v" not in shared:
            shared["v"] = decode(encoding(), canonical_prefix(h.n))
        return shared["v"]

    bodies = {
        "structure": lambda: _check_structure(h),
        "algebraic_condition": lambda: _check_algebraic(h),
        "factor_set_2": lambda: _check_factor_set_2(h),
        "markability_r": lambda: _check_markability(h),
        "iteration_bound": lambda: _check_iteration_bound_value(h),
        "kernel_free": lambda: _check_kernel(h, encoding(), bounded_kernel_scan),
        "big_excess_free": lambda: _check_big_excess(h, decoded()),
        "power_free": lambda: _check_power(h, decoded()),
    }
    checks = tuple(_guarded(name, bodies[name]) for name in CHECK_NAMES if name not in skip)
    return VerificationReport(h.n, h.r, checks)
