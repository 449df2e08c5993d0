"""Exact integer and rational arithmetic: factorization, valuations,
residue symbols, Hilbert symbols and square classes over Q.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce, total_ordering
from numbers import Rational

from sympy import isprime

__all__ = [
    "FactorizationBudgetExceeded",
    "Factorization",
    "Place",
    "REAL",
    "SquareClass",
    "factorize",
    "valuation",
    "legendre",
    "hilbert_symbol",
    "is_local_square",
    "squarefree_class",
    "multiply_classes",
    "prime_divisors",
]

DEFAULT_BUDGET = 2_000_000


class FactorizationBudgetExceeded(ArithmeticError):
    """Raised when splitting an integer needs more work than allowed."""


# ---------------------------------------------------------------------------
# Places
# ---------------------------------------------------------------------------


@total_ordering
@dataclass(frozen=True)
class Place:
    """A place of Q: the real place or a finite prime.

    Sorting puts the real place first, then primes ascending.
    """

    kind: str
    prime: int | None = None

    def __post_init__(self):
        if self.kind == "real":
            if self.prime is not None:
                raise ValueError("the real place carries no prime")
        elif self.kind == "finite":
            if not isinstance(self.prime, int) or self.prime < 2 or not isprime(self.prime):
                raise ValueError(f"not a prime: {self.prime!r}")
        else:
            raise ValueError(f"unknown place kind {self.kind!r}")

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls("finite", int(p))

    @property
    def is_real(self) -> bool:
        return self.kind == "real"

    def __str__(self):
        return "inf" if self.is_real else str(self.prime)

    def sort_key(self) -> tuple[int, int]:
        return (0, 0) if self.is_real else (1, self.prime)

    def __lt__(self, other: "Place") -> bool:
        return self.sort_key() < other.sort_key()

    @classmethod
    def parse(cls, text: str) -> "Place":
        text = text.strip()
        if text in ("inf", "oo", "real"):
            return REAL
        return cls.finite(int(text))


REAL = Place("real")


# ---------------------------------------------------------------------------
# Factorization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        n = self.sign
        for p, e in self.factors:
            n *= p**e
        return n

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __iter__(self):
        yield self.sign
        yield list(self.factors)


def _pollard_rho(n: int, budget: list[int]) -> int:
    # Brent's variant; `budget` is a one-element mutable counter shared
    # across calls for the same factorization.
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            budget[0] -= r
            if budget[0] < 0:
                raise FactorizationBudgetExceeded(
                    f"factorization budget exceeded while splitting {n}"
                )
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


_TRIAL_BOUND = 10_000


def _small_primes(n: int) -> tuple[int, ...]:
    sieve = bytearray([1]) * (n + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


_SMALL_PRIMES = _small_primes(_TRIAL_BOUND)


@lru_cache(maxsize=65536)
def _factor_cached(n: int, budget: int) -> tuple[tuple[int, int], ...]:
    counts: dict[int, int] = {}
    d = 2
    for d in _SMALL_PRIMES:
        if d * d > n:
            break
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            counts[d] = e
    work = [budget]
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if d * d > m or isprime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        g = _pollard_rho(m, work)
        stack.extend((g, m // g))
    return tuple(sorted(counts.items()))


def factorize(n: int, budget: int = DEFAULT_BUDGET) -> Factorization:
    """Prime factorization of a nonzero integer, with sign.

    Trial division handles everything up to 10**8; larger cofactors go to
    Pollard rho, which raises `FactorizationBudgetExceeded` once it has
    spent roughly `budget` modular squarings.

    >>> factorize(-56)
    Factorization(sign=-1, factors=((2, 3), (7, 1)))
    """
    n = int(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    return Factorization(1 if n > 0 else -1, _factor_cached(abs(n), budget))


def prime_divisors(n: int) -> tuple[int, ...]:
    return factorize(n).primes


# ---------------------------------------------------------------------------
# Valuations and symbols
# ---------------------------------------------------------------------------


def _as_fraction(x) -> Fraction:
    if isinstance(x, SquareClass):
        return Fraction(x.value)
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x, p: int) -> int:
    """p-adic valuation of a nonzero rational (negative for denominators)."""
    x = _as_fraction(x)
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    return _int_valuation(x.numerator, p) - _int_valuation(x.denominator, p)


def _split(n: int, p: int) -> tuple[int, int]:
    """Write the nonzero integer n as p**v * u with p not dividing u."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def legendre(a: int, p: int) -> int:
    if p == 2:
        raise ValueError("the Legendre symbol needs an odd prime")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _to_integer_rep(x) -> int:
    # a/b and a*b differ by the square b**2, so symbols only need a*b
    x = _as_fraction(x)
    if x == 0:
        raise ValueError("Hilbert symbol arguments must be nonzero")
    return x.numerator * x.denominator


def hilbert_symbol(a, b, v: Place) -> int:
    """(a, b)_v for nonzero rationals a, b.

    +1 when z^2 = a x^2 + b y^2 has a nonzero solution over Q_v, else -1.
    """
    a = _to_integer_rep(a)
    b = _to_integer_rep(b)
    if v.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = v.prime
    alpha, u = _split(a, p)
    beta, w = _split(b, p)
    if p == 2:
        eps_u = ((u - 1) // 2) % 2
        eps_w = ((w - 1) // 2) % 2
        om_u = ((u * u - 1) // 8) % 2
        om_w = ((w * w - 1) // 8) % 2
        e = (eps_u * eps_w + alpha * om_w + beta * om_u) % 2
        return -1 if e else 1
    s = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        s *= legendre(u, p)
    if alpha % 2:
        s *= legendre(w, p)
    return s


# ---------------------------------------------------------------------------
# Square classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SquareClass:
    """Nonzero rational modulo squares, stored as a signed squarefree integer."""

    sign: int
    primes: tuple[int, ...] = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if list(self.primes) != sorted(set(self.primes)):
            raise ValueError("primes must be strictly increasing")

    @classmethod
    def of(cls, x) -> "SquareClass":
        return squarefree_class(x)

    @property
    def value(self) -> int:
        return self.sign * math.prod(self.primes)

    def __int__(self):
        return self.value

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return multiply_classes(self, other)

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"SquareClass({self.value})"


def squarefree_class(x) -> SquareClass:
    """Signed squarefree integer representing x modulo nonzero squares."""
    if isinstance(x, SquareClass):
        return x
    n = _to_integer_rep(x)
    fac = factorize(n)
    return SquareClass(fac.sign, tuple(p for p, e in fac.factors if e % 2))


def multiply_classes(d1: SquareClass, d2: SquareClass) -> SquareClass:
    return SquareClass(d1.sign * d2.sign, tuple(sorted(set(d1.primes) ^ set(d2.primes))))


def is_local_square(d, v: Place) -> bool:
    """Whether the square class d is a square in Q_v."""
    d = squarefree_class(d)
    if v.is_real:
        return d.sign > 0
    p = v.prime
    if p in d.primes:
        return False
    n = d.value
    if p == 2:
        return n % 8 == 1
    return legendre(n, p) == 1


def product_of_signs(values) -> int:
    return reduce(lambda s, t: s * t, values, 1)
