"""Independent brute-force oracles used by the test-suite.

None of these call into the code they check.
"""

import itertools
import math
from functools import lru_cache

import numpy as np


def trial_division(n):
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def primes_upto(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, math.isqrt(p) + 1))]


def _reduce_mod_squares(a, p):
    # remove p**2 factors so the valuation is 0 or 1
    while a % (p * p) == 0:
        a //= p * p
    return a


@lru_cache(maxsize=None)
def _squares_mod(m):
    table = np.zeros(m, dtype=bool)
    table[(np.arange(m, dtype=np.int64) ** 2) % m] = True
    return table


@lru_cache(maxsize=None)
def _conic_solvable_mod(ar, br, p, k):
    m = p**k
    sq = _squares_mod(m)
    t = np.arange(m, dtype=np.int64)
    # primitive (x, y): scale so that x = 1, or p | x and y = 1
    vals_x1 = (ar + br * t * t) % m
    xs = t[t % p == 0]
    vals_y1 = (ar * xs * xs + br) % m
    return bool(sq[vals_x1].any() or sq[vals_y1].any())


def hilbert_brute(a, b, p):
    """(a, b)_p by searching for primitive solutions of z^2 = a x^2 + b y^2.

    After reducing a, b to valuations 0 or 1, a primitive solution mod p^k
    lifts by Hensel's lemma once k exceeds twice the valuation of a
    partial derivative: k = 1 + 2 max(v) for odd p, 3 + 2 max(v) for p = 2.
    """
    a = _reduce_mod_squares(a, p)
    b = _reduce_mod_squares(b, p)
    v = max(int(a % p == 0), int(b % p == 0))
    k = (1 + 2 * v) if p != 2 else (3 + 2 * v)
    m = p**k
    return 1 if _conic_solvable_mod(a % m, b % m, p, k) else -1


def is_square_mod_brute(d, p, k):
    m = p**k
    return any((z * z - d) % m == 0 for z in range(m))


def sqrt_mod_2k(d, k):
    """A square root of the odd d mod 2**k by bitwise lifting, or None."""
    roots = [z for z in range(8) if (z * z - d) % 8 == 0]
    if not roots:
        return None
    for j in range(3, k):
        roots = [z + t * 2**j for z in roots for t in (0, 1) if ((z + t * 2**j) ** 2 - d) % 2 ** (j + 1) == 0]
        roots = sorted(set(r % 2 ** (j + 1) for r in roots))
        if not roots:
            return None
    return roots[0]


def elementary_divisors_by_minors(M):
    """Invariant factors from gcds of k x k minors (determinantal divisors)."""
    M = [list(r) for r in M]
    rows, cols = len(M), len(M[0]) if M else 0
    out = []
    prev = 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                g = math.gcd(g, _det([[M[i][j] for j in cs] for i in rs]))
        if g == 0:
            out.extend([0] * (min(rows, cols) - k + 1))
            break
        out.append(g // prev)
        prev = g
    return out


def _det(A):
    n = len(A)
    if n == 1:
        return A[0][0]
    return sum((-1) ** j * A[0][j] * _det([row[:j] + row[j + 1:] for row in A[1:]]) for j in range(n))


def _group_from_counts(order, killed):
    """Invariant factors of an abelian group from #{x : m x = 0} for m | order."""
    factors = []
    for p, e in trial_division(order):
        # N_j = p ** (sum_i min(j, a_i)); successive differences count a_i >= j
        logs = [0]
        for j in range(1, e + 1):
            logs.append(round(math.log(killed(p**j), p)))
        ge = [logs[j] - logs[j - 1] for j in range(1, e + 1)]  # ge[j-1] = #{i : a_i >= j}
        parts = []
        for j in range(e, 0, -1):
            cnt = ge[j - 1] - (ge[j] if j < e else 0)
            parts.extend([j] * cnt)
        factors.append((p, sorted(parts, reverse=True)))
    width = max((len(parts) for _, parts in factors), default=0)
    inv = [1] * width
    for p, parts in factors:
        for i, a in enumerate(parts):
            inv[i] *= p**a
    return sorted(d for d in inv if d > 1)


def pic0_brute(points):
    """Kernel of the degree map on (+) Z/e_P, found by listing elements."""
    if not points:
        return []
    es = [e for _, e in points]
    dX = 1
    for deg, e in points:
        dX = math.lcm(dX, e // math.gcd(deg, e))
    kernel = []
    for x in itertools.product(*(range(e) for e in es)):
        total = sum(xi * deg * dX // e for xi, (deg, e) in zip(x, points))
        if total % dX == 0:
            kernel.append(x)

    def killed(m):
        return sum(1 for x in kernel if all((m * xi) % e == 0 for xi, e in zip(x, es)))

    return _group_from_counts(len(kernel), killed)
