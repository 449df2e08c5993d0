"""Compiled inner loop for the brute-force point search.

A projective point [x:y] is integral on the root stack exactly when
f(x, y) is nonzero and becomes a perfect square once every prime dividing
2q is divided out.  The kernel scans rows of the box and keeps the
earliest such point in search order, plus the earliest zero of f before it.
"""

from __future__ import annotations

import math

import numpy as np
from llvmlite import ir
from numba import njit, types, uint64
from numba.core import cgutils
from numba.extending import intrinsic

_MASK_MOD = 45045  # 9 * 5 * 7 * 11 * 13
_SQUARE_MASK = np.zeros(_MASK_MOD, dtype=np.bool_)
_SQUARE_MASK[(np.arange(_MASK_MOD, dtype=np.int64) ** 2) % _MASK_MOD] = True

# keeps |f(x, y)| and the running differences inside int64
INT64_SAFE = 1 << 61


@intrinsic
def _cttz(typingctx, x):
    sig = types.uint64(types.uint64)

    def codegen(context, builder, signature, args):
        fnty = ir.FunctionType(ir.IntType(64), [ir.IntType(64), ir.IntType(1)])
        fn = cgutils.get_or_insert_function(builder.module, fnty, "llvm.cttz.i64")
        return builder.call(fn, [args[0], ir.Constant(ir.IntType(1), 0)])

    return sig, codegen


@njit(nogil=True, cache=True, inline="always")
def _good_part_is_square(n, invs, lims, mask):
    # n > 0; divide out 2 and the odd bad primes, then test for a square
    un = uint64(n)
    un >>= _cttz(un)
    for i in range(invs.shape[0]):
        while un * invs[i] <= lims[i]:
            un = un * invs[i]
    if (un & uint64(7)) != uint64(1):
        return False
    if not mask[un % uint64(45045)]:
        return False
    r = uint64(math.sqrt(float(un)))
    while r * r > un:
        r -= uint64(1)
    while (r + uint64(1)) * (r + uint64(1)) <= un:
        r += uint64(1)
    return r * r == un


@njit(nogil=True, cache=True)
def _before(h1, y1, x1, h2, y2, x2):
    if h1 != h2:
        return h1 < h2
    if y1 != y2:
        return y1 < y2
    return x1 < x2


@njit(nogil=True, cache=True)
def scan_rows(a, b, c, invs, lims, mask, H, y_lo, y_hi):
    """Scan rows y_lo..y_hi of the box max(|x|, |y|) <= H.

    Returns (found, hx, hy, rooted, rx, ry): the integral point and the
    zero of f that come first in search order (height, then y, then x)
    among the scanned rows.  Row 0 contributes only (1, 0).  Once a hit
    of height hb is known, later rows and columns beyond hb are skipped.
    """
    big = H + 1
    bh, by, bx = big, 0, 0
    rh, ry, rx = big, 0, 0
    if y_lo == 0:
        if a == 0:
            rh, ry, rx = 1, 0, 1
        elif _good_part_is_square(a if a > 0 else -a, invs, lims, mask):
            bh, by, bx = 1, 0, 1
        y_lo = 1
    for y in range(y_lo, y_hi + 1):
        if y > bh:
            break
        w = H if bh > H else bh
        x = -w
        # on even rows only odd x can give a primitive pair; the reduced
        # form of any skipped pair lies in the box and is scanned anyway
        stride = 1
        if y % 2 == 0:
            stride = 2
            if x % 2 == 0:
                x += 1
        n = a * x * x + b * x * y + c * y * y
        step = stride * (a * (2 * x + stride) + b * y)
        inc = 2 * a * stride * stride
        while x <= w:
            if n == 0:
                h = y if y > -x and y > x else (x if x > 0 else -x)
                if _before(h, y, x, rh, ry, rx):
                    rh, ry, rx = h, y, x
            elif _good_part_is_square(n if n > 0 else -n, invs, lims, mask):
                h = y if y > -x and y > x else (x if x > 0 else -x)
                if _before(h, y, x, bh, by, bx):
                    bh, by, bx = h, y, x
                    if w > bh:
                        w = bh
            n += step
            step += inc
            x += stride
    found = bh <= H
    rooted = rh <= H and (not found or _before(rh, ry, rx, bh, by, bx))
    return found, bx, by, rooted, rx, ry


def prime_tables(odd_primes) -> tuple[np.ndarray, np.ndarray]:
    """Modular inverses mod 2**64 and divisibility limits for each odd prime."""
    invs = np.array([pow(p, -1, 1 << 64) for p in odd_primes], dtype=np.uint64)
    lims = np.array([((1 << 64) - 1) // p for p in odd_primes], dtype=np.uint64)
    return invs, lims
