from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from stackyhasse.arith import (
    REAL,
    FactorizationBudgetExceeded,
    Place,
    SquareClass,
    factorize,
    hilbert_symbol,
    is_local_square,
    legendre,
    multiply_classes,
    squarefree_class,
    valuation,
)

from oracles import hilbert_brute, is_square_mod_brute, primes_upto, sqrt_mod_2k, trial_division

nonzero = st.integers(-10**6, 10**6).filter(bool)
small_nonzero = st.integers(-500, 500).filter(bool)
PRIMES = primes_upto(60)


def places_of(*nums):
    ps = {2}
    for n in nums:
        ps.update(p for p, _ in trial_division(n))
    return [REAL] + [Place.finite(p) for p in sorted(ps)]


class TestFactorize:
    def test_examples(self):
        f = factorize(-56)
        assert (f.sign, f.factors) == (-1, ((2, 3), (7, 1)))
        f = factorize(1)
        assert (f.sign, f.factors) == (1, ())
        assert factorize(10199).factors == ((7, 1), (31, 1), (47, 1))

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            factorize(0)

    @given(nonzero)
    def test_matches_trial_division(self, n):
        f = factorize(n)
        assert list(f.factors) == trial_division(n)
        assert f.value() == n

    def test_large_semiprime(self):
        p, q = 1_000_000_007, 998_244_353
        assert factorize(p * q).factors == ((q, 1), (p, 1))

    def test_budget(self):
        n = 1_000_000_007 * 998_244_353 * 1_000_000_009
        with pytest.raises(FactorizationBudgetExceeded):
            factorize(n, budget=10)


class TestValuation:
    def test_examples(self):
        assert valuation(98, 7) == 2
        assert valuation(1, 5) == 0
        assert valuation(Fraction(1, 8), 2) == -3

    def test_zero(self):
        with pytest.raises(ValueError):
            valuation(0, 3)

    @given(nonzero, nonzero, st.sampled_from(PRIMES))
    def test_multiplicative(self, a, b, p):
        assert valuation(a * b, p) == valuation(a, p) + valuation(b, p)
        assert valuation(Fraction(a, b), p) == valuation(a, p) - valuation(b, p)


class TestLegendre:
    def test_examples(self):
        assert legendre(3, 7) == -1
        assert legendre(0, 7) == 0
        assert legendre(2, 7) == 1

    def test_rejects_two(self):
        with pytest.raises(ValueError):
            legendre(3, 2)

    @pytest.mark.parametrize("p", [p for p in PRIMES if p > 2])
    def test_against_square_table(self, p):
        squares = {x * x % p for x in range(1, p)}
        for a in range(1, p):
            assert legendre(a, p) == (1 if a in squares else -1)


class TestHilbert:
    def test_examples(self):
        assert hilbert_symbol(3, 42, Place.finite(7)) == -1
        assert hilbert_symbol(3, 42, REAL) == 1
        assert hilbert_symbol(3, 42, Place.finite(2)) == -1

    @given(small_nonzero, st.sampled_from([REAL] + [Place.finite(p) for p in PRIMES]))
    def test_a_minus_a(self, a, v):
        assert hilbert_symbol(a, -a, v) == 1

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            hilbert_symbol(0, 3, REAL)

    @pytest.mark.parametrize("p", primes_upto(50))
    def test_brute_force_conic_oracle(self, p):
        v = Place.finite(p)
        rng = [n for n in range(-50, 51) if n]
        bad = [(a, b) for a in rng for b in rng if hilbert_symbol(a, b, v) != hilbert_brute(a, b, p)]
        assert bad == []

    @settings(max_examples=300)
    @given(nonzero, nonzero)
    def test_product_formula(self, a, b):
        prod = 1
        for v in places_of(a, b):
            prod *= hilbert_symbol(a, b, v)
        assert prod == 1

    @given(nonzero, nonzero, st.sampled_from([REAL] + [Place.finite(p) for p in PRIMES]))
    def test_symmetric(self, a, b, v):
        assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)

    @given(small_nonzero, small_nonzero, small_nonzero, st.sampled_from([REAL] + [Place.finite(p) for p in PRIMES]))
    def test_bimultiplicative(self, a, a2, b, v):
        assert hilbert_symbol(a * a2, b, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a2, b, v)

    @given(small_nonzero, small_nonzero, small_nonzero, st.integers(1, 50),
           st.sampled_from([REAL] + [Place.finite(p) for p in PRIMES]))
    def test_square_invariance(self, a, b, s_num, s_den, v):
        s = Fraction(s_num, s_den)
        assert hilbert_symbol(a * s * s, b, v) == hilbert_symbol(a, b, v)

    @given(small_nonzero, small_nonzero, st.sampled_from([REAL] + [Place.finite(p) for p in PRIMES]))
    def test_local_square_splits(self, d, b, v):
        if is_local_square(d, v):
            assert hilbert_symbol(d, b, v) == 1


class TestLocalSquare:
    def test_examples(self):
        assert is_local_square(-7, Place.finite(2))
        assert not is_local_square(-7, REAL)
        assert not is_local_square(-7, Place.finite(7))

    def test_minus_seven_lifts_at_two(self):
        for k in range(3, 16):
            z = sqrt_mod_2k(-7, k)
            assert z is not None and (z * z + 7) % 2**k == 0

    @pytest.mark.parametrize("p", primes_upto(23))
    def test_against_brute_force(self, p):
        k = 5 if p == 2 else 3
        for d in range(-60, 61):
            if d == 0 or any(e > 1 for _, e in trial_division(d)):
                continue
            assert is_local_square(d, Place.finite(p)) == is_square_mod_brute(d, p, k), d


class TestSquareClass:
    def test_examples(self):
        assert squarefree_class(-56).value == -14
        assert squarefree_class(Fraction(9, 4)).value == 1
        assert squarefree_class(98).value == 2
        assert multiply_classes(SquareClass.of(-7), SquareClass.of(-14)).value == 2

    @given(small_nonzero)
    def test_identity_and_inverse(self, a):
        d = SquareClass.of(a)
        assert multiply_classes(d, d) == SquareClass(1)
        assert multiply_classes(d, SquareClass(1)) == d

    @given(small_nonzero, small_nonzero, small_nonzero)
    def test_group_law(self, a, b, c):
        x, y, z = map(SquareClass.of, (a, b, c))
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x
        assert x * y == SquareClass.of(a * b)

    @given(small_nonzero, st.integers(1, 40))
    def test_square_factor(self, a, s):
        assert SquareClass.of(a * s * s) == SquareClass.of(a)
        assert SquareClass.of(Fraction(a, s * s)) == SquareClass.of(a)

    def test_validation(self):
        with pytest.raises(ValueError):
            SquareClass(2)
        with pytest.raises(ValueError):
            SquareClass(1, (3, 2))


def test_place_parse_and_order():
    assert Place.parse("inf") == REAL
    assert Place.parse("7") == Place.finite(7)
    assert sorted([Place.finite(7), REAL, Place.finite(2)]) == [REAL, Place.finite(2), Place.finite(7)]
    assert str(REAL) == "inf" and str(Place.finite(31)) == "31"
