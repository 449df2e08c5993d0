"""Brute-force ground truth for the decider.

Integral points of the root stack over Z[1/2q] are the projective points
[x:y] with f(x, y) != 0 whose value has even valuation at every prime not
dividing 2q.  `search` enumerates them by height; nothing here uses
Hilbert symbols, so it checks the decider independently.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import factorize, valuation
from .decider import Outcome, Verdict, decide
from .forms import BinaryQuadraticForm, _as_form, discriminant

__all__ = [
    "ProjectivePoint",
    "SearchReport",
    "Consistency",
    "CrossValidation",
    "is_integral_point",
    "search",
    "search_reference",
    "verify_local",
    "cross_validate",
    "coprime_count",
    "symmetry_key",
    "local_witness",
    "classify",
]


@dataclass(frozen=True, order=True)
class ProjectivePoint:
    x: int
    y: int

    def __post_init__(self):
        if self.x == 0 and self.y == 0:
            raise ValueError("[0:0] is not a projective point")
        if math.gcd(self.x, self.y) != 1:
            raise ValueError(f"({self.x}, {self.y}) is not primitive")
        if not (self.y > 0 or (self.y == 0 and self.x == 1)):
            raise ValueError(f"({self.x}, {self.y}) is not sign-normalized")

    @classmethod
    def normalize(cls, x: int, y: int) -> "ProjectivePoint":
        g = math.gcd(x, y)
        if g == 0:
            raise ValueError("[0:0] is not a projective point")
        x, y = x // g, y // g
        if y < 0 or (y == 0 and x < 0):
            x, y = -x, -y
        return cls(x, y)

    @property
    def height(self) -> int:
        return max(abs(self.x), abs(self.y))

    def search_key(self) -> tuple[int, int, int]:
        return (self.height, self.y, self.x)

    def __iter__(self):
        return iter((self.x, self.y))

    def __str__(self):
        return f"[{self.x}:{self.y}]"


def _as_point(P) -> ProjectivePoint:
    if isinstance(P, ProjectivePoint):
        return P
    return ProjectivePoint.normalize(*P)


def is_integral_point(f, P) -> bool:
    """Whether f(x, y) has even valuation at every prime not dividing 2q."""
    f = _as_form(f)
    P = _as_point(P)
    bad = set(discriminant(f).bad_primes)
    value = f(P.x, P.y)
    if value == 0:
        raise ValueError(f"{P} is a zero of f, i.e. a stacky point")
    return all(
        valuation(value, p) % 2 == 0
        for p in factorize(value).primes
        if p not in bad
    )


@dataclass(frozen=True)
class SearchReport:
    form: BinaryQuadraticForm
    height_bound: int
    found: ProjectivePoint | None
    stacky_hit: ProjectivePoint | None
    candidates_tested: int


# ---------------------------------------------------------------------------
# Candidate counts
# ---------------------------------------------------------------------------


@lru_cache(maxsize=8)
def _totients(n: int) -> np.ndarray:
    phi = np.arange(n + 1, dtype=np.int64)
    for p in range(2, n + 1):
        if phi[p] == p:
            phi[p::p] -= phi[p::p] // p
    return phi


def coprime_count(H: int) -> int:
    """Number of normalized primitive pairs of height at most H.

    Shell h >= 1 holds exactly 4 * phi(h) of them.
    """
    if H < 1:
        return 0
    return int(4 * _totients(H)[1 : H + 1].sum())


def _shell_order(h: int):
    """Normalized primitive pairs of height exactly h, in search order."""
    if h == 1:
        yield (1, 0)
    for y in range(1, h):
        if math.gcd(h, y) == 1:
            yield (-h, y)
            yield (h, y)
    for x in range(-h, h + 1):
        if math.gcd(x, h) == 1:
            yield (x, h)


def _rank_in_shell(P: ProjectivePoint) -> int:
    """1-based position of P among the candidates of its own shell."""
    for i, pair in enumerate(_shell_order(P.height), start=1):
        if pair == (P.x, P.y):
            return i
    raise AssertionError(f"{P} missing from its shell")


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------


def _good_part_is_square(n: int, bad) -> bool:
    n = abs(n)
    for p in bad:
        while n % p == 0:
            n //= p
    return math.isqrt(n) ** 2 == n


def search_reference(f, H: int) -> SearchReport:
    """Plain-Python search; slow, exact for any coefficient size."""
    f = _as_form(f)
    if H < 1:
        raise ValueError("height bound must be at least 1")
    bad = discriminant(f).bad_primes
    stacky = None
    tested = 0
    for h in range(1, H + 1):
        for x, y in _shell_order(h):
            tested += 1
            value = f(x, y)
            if value == 0:
                if stacky is None:
                    stacky = ProjectivePoint(x, y)
                continue
            if _good_part_is_square(value, bad):
                return SearchReport(f, H, ProjectivePoint(x, y), stacky, tested)
    return SearchReport(f, H, None, stacky, tested)


def _split_rows(H: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, H + 1))
    edges = [round(k * (H + 1) / parts) for k in range(parts + 1)]
    return [(lo, hi - 1) for lo, hi in zip(edges, edges[1:]) if hi > lo]


def _kernel_fits(f: BinaryQuadraticForm, H: int, odd_primes) -> bool:
    from ._kernel import INT64_SAFE

    size = (abs(f.a) + abs(f.b) + abs(f.c) + 1) * (2 * H + 1) ** 2
    return size < INT64_SAFE and all(p < (1 << 62) for p in odd_primes)


def symmetry_key(f) -> tuple[int, int, int]:
    """Canonical form under f -> -f, x <-> y and x -> -x.

    These maps send the box max(|x|, |y|) <= H onto itself and keep the
    set of integral points, so whether a search finds anything depends
    only on this key.
    """
    a, b, c = _as_form(f)
    return min(
        (s * A, s * B, s * C)
        for s in (1, -1)
        for A, B, C in ((a, b, c), (a, -b, c), (c, b, a), (c, -b, a))
    )


def search(f, H: int, workers: int = 1, cache: dict | None = None) -> SearchReport:
    """Find the first integral point of height <= H.

    Candidates are the normalized primitive pairs, ordered by height,
    then y, then x.  Also reports the first zero of f met on the way.
    With ``workers > 1`` the rows are split into blocks scanned on
    separate threads; each block reports its earliest hit and the merge
    takes the minimum, so the report does not depend on the worker count.

    ``cache`` (any dict) remembers empty searches by `symmetry_key`, so a
    symmetric image of an already-exhausted form is not scanned again.
    """
    f = _as_form(f)
    if H < 1:
        raise ValueError("height bound must be at least 1")
    key = (symmetry_key(f), H)
    if cache is not None and key in cache:
        return SearchReport(f, H, None, None, coprime_count(H))
    report = _search(f, H, workers)
    if cache is not None and report.found is None and report.stacky_hit is None:
        cache[key] = True
    return report


def _search(f: BinaryQuadraticForm, H: int, workers: int) -> SearchReport:
    bad = discriminant(f).bad_primes
    odd = [p for p in bad if p != 2]
    if not _kernel_fits(f, H, odd):
        return search_reference(f, H)

    from ._kernel import _SQUARE_MASK, prime_tables, scan_rows

    invs, lims = prime_tables(odd)

    def run(rows):
        return scan_rows(f.a, f.b, f.c, invs, lims, _SQUARE_MASK, H, *rows)

    blocks = _split_rows(H, workers)
    if len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, blocks))
    else:
        results = [run(blocks[0])]

    # a block may report a multiple g*(x, y) of a hit lying in another
    # block; f scales by g**2, so the reduced pair is a hit of lower height
    hits = [ProjectivePoint.normalize(int(x), int(y)) for found, x, y, *_ in results if found]
    roots = [ProjectivePoint.normalize(int(x), int(y)) for *_, rooted, x, y in results if rooted]
    found = min(hits, key=ProjectivePoint.search_key, default=None)
    stacky = min(roots, key=ProjectivePoint.search_key, default=None)
    if found is None:
        return SearchReport(f, H, None, stacky, coprime_count(H))
    if stacky is not None and stacky.search_key() > found.search_key():
        stacky = None
    tested = coprime_count(found.height - 1) + _rank_in_shell(found)
    return SearchReport(f, H, found, stacky, tested)


# ---------------------------------------------------------------------------
# Local solvability and cross-validation
# ---------------------------------------------------------------------------


def _primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return [int(p) for p in np.flatnonzero(sieve)]


def local_witness(f, p: int) -> tuple[int, int] | None:
    """Some (x, y) mod p with f(x, y) not divisible by p, if any."""
    f = _as_form(f)
    for pair in [(1, 0), (0, 1)] + [(x, 1) for x in range(1, p)]:
        if f(*pair) % p:
            return pair
    return None


def verify_local(f, prime_bound: int) -> bool:
    """Every good prime up to the bound admits a unit value of f."""
    f = _as_form(f)
    bad = set(discriminant(f).bad_primes)
    return all(
        local_witness(f, p) is not None
        for p in _primes_up_to(prime_bound)
        if p not in bad
    )


class Consistency(enum.Enum):
    CONSISTENT = "consistent"
    UNRESOLVED = "unresolved"
    CONTRADICTION = "contradiction"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class CrossValidation:
    verdict: Verdict
    report: SearchReport | None
    status: Consistency

    @property
    def ok(self) -> bool:
        return self.status is not Consistency.CONTRADICTION


def classify(verdict: Verdict, report: SearchReport | None) -> Consistency:
    if verdict.outcome is Outcome.DEGENERATE:
        return Consistency.DEGENERATE
    hit = report is not None and (report.found is not None or report.stacky_hit is not None)
    if verdict.outcome is Outcome.OBSTRUCTION:
        return Consistency.CONTRADICTION if hit else Consistency.CONSISTENT
    return Consistency.CONSISTENT if hit else Consistency.UNRESOLVED


def cross_validate(f, H: int, workers: int = 1, cache: dict | None = None) -> CrossValidation:
    """Compare the decider's verdict with a brute-force search to height H."""
    f = _as_form(f)
    verdict = decide(f)
    if verdict.outcome is Outcome.DEGENERATE:
        return CrossValidation(verdict, None, Consistency.DEGENERATE)
    report = search(f, H, workers=workers, cache=cache)
    return CrossValidation(verdict, report, classify(verdict, report))
