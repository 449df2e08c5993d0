"""Binary quadratic forms f = a x^2 + b x y + c y^2 with integer coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import REAL, Place, SquareClass, factorize, hilbert_symbol, squarefree_class

__all__ = [
    "DegenerateFormError",
    "RationalRootError",
    "BinaryQuadraticForm",
    "Discriminant",
    "parse_form",
    "discriminant",
    "bad_places",
    "epsilon_invariant",
    "has_rational_root",
    "transform",
]


class DegenerateFormError(ValueError):
    """The form has discriminant 0 (a scaled square of a linear form)."""


class RationalRootError(ValueError):
    """The form vanishes at a rational point, so no epsilon invariant is needed."""


@dataclass(frozen=True)
class BinaryQuadraticForm:
    a: int
    b: int
    c: int

    def __post_init__(self):
        for name in ("a", "b", "c"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"coefficient {name} must be an int, got {value!r}")

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def __str__(self):
        return f"{self.a},{self.b},{self.c}"

    @property
    def q(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_degenerate(self) -> bool:
        return self.q == 0


def parse_form(text: str) -> BinaryQuadraticForm:
    """Parse ``"a,b,c"`` (decimal integers, optional whitespace)."""
    parts = [p.strip() for p in text.strip().strip("()[]").split(",")]
    if len(parts) != 3 or not all(parts):
        raise ValueError(f"expected 'a,b,c', got {text!r}")
    try:
        a, b, c = (int(p) for p in parts)
    except ValueError:
        raise ValueError(f"expected three integers in {text!r}") from None
    return BinaryQuadraticForm(a, b, c)


def _as_form(f) -> BinaryQuadraticForm:
    if isinstance(f, BinaryQuadraticForm):
        return f
    if isinstance(f, str):
        return parse_form(f)
    return BinaryQuadraticForm(*(int(t) for t in f))


@dataclass(frozen=True)
class Discriminant:
    q: int
    square_class: SquareClass
    bad_primes: tuple[int, ...]


def discriminant(f) -> Discriminant:
    f = _as_form(f)
    q = f.q
    if q == 0:
        raise DegenerateFormError(f"form {f} has discriminant 0")
    primes = factorize(2 * q).primes
    return Discriminant(q, squarefree_class(q), primes)


def bad_places(f) -> list[Place]:
    """The real place followed by the primes dividing 2q."""
    return [REAL] + [Place.finite(p) for p in discriminant(f).bad_primes]


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def has_rational_root(f) -> tuple[int, int] | None:
    """A primitive (x, y) with f(x, y) = 0, or None if q is not a square.

    Degenerate forms (q = 0) have a root too; callers that care route them
    through `discriminant` first.
    """
    f = _as_form(f)
    a, b, c = f
    q = f.q
    if not _is_square(q):
        return None
    if a == 0:
        return (1, 0)
    # root x/y = (-b + sqrt q) / 2a
    x, y = -b + math.isqrt(q), 2 * a
    g = math.gcd(x, y)
    x, y = x // g, y // g
    if y < 0 or (y == 0 and x < 0):
        x, y = -x, -y
    return (x, y)


def transform(f, gamma) -> BinaryQuadraticForm:
    """f∘γ, i.e. the form (x, y) -> f(αx + βy, γx + δy) for γ = [[α, β], [γ, δ]]."""
    f = _as_form(f)
    (al, be), (ga, de) = gamma
    al, be, ga, de = int(al), int(be), int(ga), int(de)
    if al * de - be * ga not in (1, -1):
        raise ValueError(f"matrix {gamma} is not unimodular")
    a, b, c = f
    return BinaryQuadraticForm(
        a * al * al + b * al * ga + c * ga * ga,
        2 * a * al * be + b * (al * de + be * ga) + 2 * c * ga * de,
        a * be * be + b * be * de + c * de * de,
    )


def epsilon_invariant(f, v: Place) -> int:
    """Hilbert-symbol invariant of f at v.

    Completing the square, f ~ <a, -q/(4a)> ~ <a, -a q>, so the invariant
    is (a, -a q)_v.
    """
    f = _as_form(f)
    q = f.q
    if q == 0:
        raise DegenerateFormError(f"form {f} has discriminant 0")
    if _is_square(q):
        raise RationalRootError(f"form {f} has a rational root; epsilon is not used")
    a, t = f.a, 1
    while a == 0:  # unreachable: a = 0 makes q = b^2 a square
        a = transform(f, ((1, 0), (t, 1))).a
        t += 1
    return hilbert_symbol(a, -a * q, v)
