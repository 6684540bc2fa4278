from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ctlucas.ring import (
    InvalidModulus,
    ModularInteger,
    ModulusMismatch,
    binomial,
    is_prime,
    mod_reduce,
    rat_cmp,
)

moduli = st.integers(2, 2**63 - 1)
ints = st.integers(-(10**40), 10**40)


def test_mod_reduce_examples():
    assert mod_reduce(-1, 5).residue == 4
    assert mod_reduce(0, 7).residue == 0
    # 54091 = 7 * 7727 + 2 by long division
    assert 7 * 7727 + 2 == 54091
    assert mod_reduce(54091, 7).residue == 2


@pytest.mark.parametrize("m", [1, 0, -3, 2**63])
def test_mod_reduce_rejects_bad_modulus(m):
    with pytest.raises(InvalidModulus):
        mod_reduce(3, m)


def test_largest_modulus_is_exact():
    m = 2**63 - 25
    a, b = mod_reduce(m - 1, m), mod_reduce(m - 2, m)
    assert (a * b).residue == ((m - 1) * (m - 2)) % m == 2


def test_mismatched_moduli():
    with pytest.raises(ModulusMismatch):
        mod_reduce(1, 5) + mod_reduce(1, 7)


def test_residue_must_be_reduced():
    with pytest.raises(ValueError):
        ModularInteger(5, 5)


@given(ints, ints, moduli)
def test_reduction_is_a_ring_homomorphism(x, y, m):
    rx, ry = mod_reduce(x, m), mod_reduce(y, m)
    assert mod_reduce(x * y, m) == rx * ry
    assert mod_reduce(x + y, m) == rx + ry
    assert mod_reduce(x - y, m) == rx - ry
    assert 0 <= (rx - ry).residue < m


@pytest.mark.parametrize("a, b, expected", [
    (Fraction(1, 2), Fraction(1, 3), 1),
    (Fraction(2, 4), Fraction(1, 2), 0),
    (Fraction(0, 1), Fraction(1, 1000000), -1),
])
def test_rat_cmp_examples(a, b, expected):
    assert rat_cmp(a, b) == expected


def test_rationals_are_canonical():
    q = Fraction(2, -4)
    assert (q.numerator, q.denominator) == (-1, 2)
    assert Fraction(0, 5) == Fraction(0, 1) and Fraction(0, 5).denominator == 1


@given(st.integers(-1000, 1000), st.integers(1, 1000), st.integers(-1000, 1000), st.integers(1, 1000))
def test_rat_cmp_matches_cross_multiplication(a, b, c, d):
    expected = (a * d > c * b) - (a * d < c * b)
    assert rat_cmp(Fraction(a, b), Fraction(c, d)) == expected
    s = Fraction(a, b) + Fraction(c, d)
    assert s == Fraction(a * d + c * b, b * d)


def test_binomial_examples():
    assert binomial(4, 2) == 6
    assert binomial(5, 7) == 0
    assert binomial(5, -1) == 0
    # Pascal triangle row 10 built by repeated addition
    row = [1]
    for _ in range(10):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    assert binomial(10, 3) == row[3] == 120


def test_pascal_rule():
    for n in range(1, 65):
        for k in range(1, n + 1):
            assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
