import math
from fractions import Fraction

from hypothesis import given, strategies as st

from hypcox.qfield import Q5, Q23, cos_pi_over

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)


def q5s():
    return st.builds(Q5, rationals, rationals)


def q23s():
    return st.builds(Q23, rationals, rationals, rationals, rationals)


@given(q5s(), q5s(), q5s())
def test_q5_ring_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert x + (y + z) == (x + y) + z


@given(q5s())
def test_q5_inverse(x):
    if x:
        assert x * x.inverse() == Q5(1)


@given(q5s())
def test_q5_sign_matches_float(x):
    approx = float(x)
    if abs(approx) > 1e-9:
        assert x.sign() == (1 if approx > 0 else -1)
    if not x:
        assert x.sign() == 0


@given(q23s(), q23s(), q23s())
def test_q23_ring_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x * (y * z) == (x * y) * z


@given(q23s())
def test_q23_inverse(x):
    if x:
        assert x * x.inverse() == Q23(1)


@given(q23s())
def test_q23_sign_matches_float(x):
    approx = float(x)
    if abs(approx) > 1e-9:
        assert x.sign() == (1 if approx > 0 else -1)
    if not x:
        assert x.sign() == 0


def test_cos_table():
    for m in (2, 3, 4, 6):
        exact = cos_pi_over(m)
        assert abs(float(exact) - math.cos(math.pi / m)) < 1e-15
    assert cos_pi_over(5) is None
    assert cos_pi_over(7) is None


def test_mixed_arithmetic_with_fractions():
    a = Q5(Fraction(1, 2)) + Fraction(1, 2)
    assert a == Q5(1)
    assert 2 * Q23(0, Fraction(1, 2)) == Q23(0, 1)
    assert 1 / Q5(0, 1) == Q5(0, Fraction(1, 5))
