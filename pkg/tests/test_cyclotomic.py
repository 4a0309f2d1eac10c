import random
from fractions import Fraction
from math import lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasilang.cyclotomic import (
    CyclotomicNumber,
    cyc_arith,
    cyc_inv,
    cyc_root,
    cyclotomic_from_json,
    cyclotomic_polynomial,
    cyclotomic_to_json,
    euler_phi,
)


def test_euler_phi_small():
    assert [euler_phi(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_root_examples():
    assert cyc_root(4, 2) == -1
    assert cyc_root(6, 3) == -1
    assert cyc_root(5, 5) == 1
    assert cyc_root(7, 0) == 1


def test_root_of_unity_and_phi_vanishing():
    # zeta_N^N = 1 and Phi_N(zeta_N) = 0 for all N <= 24, exactly.
    for n in range(1, 25):
        z = cyc_root(n, 1)
        assert z**n == 1
        acc = CyclotomicNumber.zero(n)
        for k, c in enumerate(cyclotomic_polynomial(n)):
            acc = acc + z**k * c
        assert acc.is_zero()


def test_arith_examples():
    z3 = cyc_root(3, 1)
    assert cyc_arith("add", z3, z3 * z3) == -1
    z4 = cyc_root(4, 1)
    assert cyc_arith("mul", z4, z4) == -1
    one_plus_z5 = CyclotomicNumber.one(5) + cyc_root(5, 1)
    assert cyc_arith("mul", one_plus_z5, CyclotomicNumber.one()) == one_plus_z5


def test_mixed_order_embedding():
    assert cyc_root(2, 1).lift(6) == cyc_root(6, 3)
    # equality already lifts to the lcm order
    assert cyc_root(2, 1) == cyc_root(6, 3)
    assert cyc_root(3, 1) + cyc_root(2, 1) == cyc_root(6, 2) - 1


def test_inverse_examples():
    two = CyclotomicNumber.from_rational(2)
    assert cyc_inv(two) == Fraction(1, 2)
    for n in (3, 4, 5, 12):
        z = cyc_root(n, 1)
        assert cyc_inv(z) == cyc_root(n, n - 1)
    # oracle: extended Euclid result must multiply back to 1
    a = CyclotomicNumber.one(3) + cyc_root(3, 1)
    inv = cyc_inv(a)
    assert a * inv == 1
    assert inv == -cyc_root(3, 1)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        cyc_inv(CyclotomicNumber.zero(5))


def _random_element(rng: random.Random, order: int) -> CyclotomicNumber:
    coeffs = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(euler_phi(order))]
    return CyclotomicNumber(order, coeffs)


@given(st.integers(min_value=1, max_value=12), st.integers())
@settings(max_examples=60, deadline=None)
def test_field_axioms_random(order, seed):
    rng = random.Random(seed)
    a = _random_element(rng, order)
    b = _random_element(rng, order)
    c = _random_element(rng, order)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    if not a.is_zero():
        assert a * cyc_inv(a) == 1


def test_cross_order_distributivity():
    rng = random.Random(7)
    for _ in range(20):
        a = _random_element(rng, rng.choice([2, 3, 4]))
        b = _random_element(rng, rng.choice([3, 4, 6]))
        c = _random_element(rng, rng.choice([2, 6]))
        assert a * (b + c) == a * b + a * c
        assert (a + b).order == lcm(a.order, b.order)


def test_conjugate():
    z5 = cyc_root(5, 1)
    assert z5.conjugate() == cyc_root(5, 4)
    a = _random_element(random.Random(3), 7)
    assert a.conjugate().conjugate() == a
    assert (a * a.conjugate()).conjugate() == a * a.conjugate()


def test_integrality_flag():
    assert cyc_root(8, 3).is_integral()
    assert not CyclotomicNumber.from_rational(Fraction(1, 2)).is_integral()
    assert (cyc_root(4, 1) + 3).is_integral()


def test_json_round_trip():
    vals = [
        CyclotomicNumber.from_rational(Fraction(-7, 3)),
        cyc_root(12, 5) + Fraction(1, 2),
        CyclotomicNumber.zero(9),
    ]
    for v in vals:
        blob = cyclotomic_to_json(v)
        back = cyclotomic_from_json(blob)
        assert back == v and back.order == v.order
        assert cyclotomic_to_json(back) == blob
