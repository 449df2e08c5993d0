"""Invariants of tame stacky curves from signatures and stacky loci.

Covers the genus of a signature (g; e_1, ..., e_r), the degree
denominators d_P and d_X, the degree-zero Picard group when the coarse
space is P^1, and the simply-connected test.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as _sympy_snf

__all__ = [
    "Signature",
    "StackyLocusPoint",
    "FiniteAbelianGroup",
    "SmithForm",
    "parse_signature",
    "parse_points",
    "genus",
    "d_of_point",
    "d_of_curve",
    "pic0_group",
    "is_simply_connected",
    "smith_normal_form",
]


@dataclass(frozen=True)
class Signature:
    g_coarse: int
    orders: tuple[int, ...] = ()

    def __post_init__(self):
        if self.g_coarse < 0:
            raise ValueError("coarse genus must be nonnegative")
        if any(e < 1 for e in self.orders):
            raise ValueError("stabilizer orders must be positive")
        # (g; 1, ..., 1, e_1, ...) is the same signature as (g; e_1, ...)
        object.__setattr__(self, "orders", tuple(sorted(e for e in self.orders if e != 1)))

    def extend(self, e: int) -> "Signature":
        return Signature(self.g_coarse, self.orders + (e,))

    def points(self) -> list["StackyLocusPoint"]:
        """The stacky points viewed as degree-one points of the locus."""
        return [StackyLocusPoint(1, e) for e in self.orders]

    def __str__(self):
        return f"({self.g_coarse}; {', '.join(map(str, self.orders))})"


@dataclass(frozen=True)
class StackyLocusPoint:
    residue_degree: int
    stabilizer_order: int

    def __post_init__(self):
        if self.residue_degree < 1:
            raise ValueError("residue degree must be positive")
        if self.stabilizer_order < 2:
            raise ValueError("stabilizer order must be at least 2")


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """A finite abelian group by its invariant factors d_1 | d_2 | ... ."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(int(d) for d in self.invariant_factors)
        if any(d < 2 for d in fs):
            raise ValueError("invariant factors must be at least 2")
        if any(b % a for a, b in zip(fs, fs[1:])):
            raise ValueError(f"{fs} is not a divisibility chain")
        object.__setattr__(self, "invariant_factors", fs)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def __str__(self):
        if self.is_trivial:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


_SIG_RE = re.compile(r"^\(?\s*(\d+)\s*;\s*([\d\s,]*)\)?$")


def parse_signature(text: str) -> Signature:
    """Parse ``"(g; e1, ..., er)"``; ``"(0;)"`` is the plain coarse curve."""
    m = _SIG_RE.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse signature {text!r}")
    g, rest = m.groups()
    orders = [int(t) for t in rest.replace(" ", "").split(",") if t]
    return Signature(int(g), tuple(orders))


_POINT_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_points(text: str) -> list[StackyLocusPoint]:
    """Parse ``"(deg,e);(deg,e);..."``."""
    text = text.strip()
    if not text or text == "[]":
        return []
    chunks = [c for c in re.split(r"\s*;\s*", text.strip("[] ")) if c]
    points = []
    for chunk in chunks:
        m = _POINT_RE.fullmatch(chunk.strip())
        if not m:
            raise ValueError(f"cannot parse stacky point {chunk!r}")
        points.append(StackyLocusPoint(int(m.group(1)), int(m.group(2))))
    return points


def genus(sig: Signature) -> Fraction:
    return sig.g_coarse + Fraction(1, 2) * sum(
        (Fraction(e - 1, e) for e in sig.orders), Fraction(0)
    )


def d_of_point(P: StackyLocusPoint) -> int:
    """Denominator of deg [P] = [k(P):k] / e_P in lowest terms."""
    return P.stabilizer_order // math.gcd(P.residue_degree, P.stabilizer_order)


def d_of_curve(points) -> int:
    return reduce(math.lcm, (d_of_point(P) for P in points), 1)


@dataclass(frozen=True)
class SmithForm:
    diagonal: tuple[int, ...]
    rank: int

    @property
    def nontrivial(self) -> tuple[int, ...]:
        """Diagonal entries other than 1 (zeros give free summands)."""
        return tuple(d for d in self.diagonal if d != 1)


def smith_normal_form(M) -> SmithForm:
    """Smith normal form of an integer matrix, as its diagonal and rank."""
    M = Matrix(M)
    if M.rows == 0 or M.cols == 0:
        return SmithForm((), 0)
    if any(not float(v).is_integer() for v in M):
        raise ValueError("matrix entries must be integers")
    S = _sympy_snf(M, domain=ZZ)
    diag = tuple(abs(int(S[i, i])) for i in range(min(S.shape)))
    return SmithForm(diag, sum(1 for d in diag if d))


def _column_gcd_transform(w: list[int]) -> tuple[list[list[int]], int]:
    """Unimodular U with w U = (g, 0, ..., 0), g = gcd(w) >= 0."""
    r = len(w)
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    w = list(w)
    for j in range(1, r):
        # combine columns 0 and j with an extended-gcd step
        a, b = w[0], w[j]
        if b == 0:
            continue
        g, s, t = _xgcd(a, b)
        ag, bg = a // g, b // g
        for row in U:
            c0, cj = row[0], row[j]
            row[0], row[j] = s * c0 + t * cj, -bg * c0 + ag * cj
        w[0], w[j] = g, 0
    if w and w[0] < 0:
        for row in U:
            row[0] = -row[0]
        w[0] = -w[0]
    return U, (w[0] if w else 0)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r, old_s, s, old_t, t = a, b, 1, 0, 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_s, s = s, old_s - k * s
        old_t, t = t, old_t - k * t
    return old_r, old_s, old_t


def pic0_group(points) -> FiniteAbelianGroup:
    """Kernel of the degree map on the stacky part of Pic, coarse space P^1.

    Pic^0 is the kernel of  (+)_P Z/e_P -> (1/d_X)Z / Z,  [P] -> deg [P].
    Scaling by d_X, generator P goes to w_P = [k(P):k] * d_X / e_P mod d_X.
    The kernel is L / M with L = {x in Z^r : w.x = 0 mod d_X} and
    M = (+)_P e_P Z; its invariant factors come from the Smith form of M
    written in a basis of L.
    """
    points = list(points)
    if not points:
        return FiniteAbelianGroup(())
    dX = d_of_curve(points)
    e = [P.stabilizer_order for P in points]
    w = [(P.residue_degree * dX // P.stabilizer_order) % dX for P in points]
    r = len(points)
    U, g = _column_gcd_transform(w)
    # L = U * diag(dX / gcd(g, dX), 1, ..., 1) Z^r
    D = Matrix.diag(dX // math.gcd(g, dX), *([1] * (r - 1)))
    basis = Matrix(U) * D
    coords = basis.inv() * Matrix.diag(*e)
    if any(not v.is_integer for v in coords):
        raise AssertionError("relation lattice not contained in kernel lattice")
    snf = smith_normal_form(coords)
    factors = tuple(d for d in snf.diagonal if d > 1)
    group = FiniteAbelianGroup(factors)
    assert group.order * dX == math.prod(e)
    return group


def is_simply_connected(sig: Signature) -> bool:
    """Geometric test: (0;), (0; n) or (0; n, m) with gcd(n, m) = 1."""
    if sig.g_coarse != 0:
        return False
    if len(sig.orders) <= 1:
        return True
    if len(sig.orders) == 2:
        return math.gcd(*sig.orders) == 1
    return False
