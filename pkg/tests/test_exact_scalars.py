"""Cyclotomic arithmetic against sympy and complex floats."""

import cmath
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from gvblocks.exact_scalars import (
    CycNumber, InvalidOrderError, RootOfUnity, arith, cyclotomic_polynomial, is_equal,
    root_exponent, root_of_unity,
)

orders = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16, 24])
fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def cyc(draw, order=None):
    n = order or draw(orders)
    coeffs = draw(st.lists(fracs, min_size=0, max_size=n))
    return CycNumber(n, coeffs)


def approx(x, z, tol=1e-9):
    return abs(complex(x) - z) < tol


@pytest.mark.parametrize("n", range(1, 31))
def test_cyclotomic_polynomial_matches_sympy(n):
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert [Fraction(int(c)) for c in expected] == list(cyclotomic_polynomial(n))


def test_known_identities():
    z8 = root_of_unity(8, 1)
    assert z8 * root_of_unity(8, 7) == 1
    assert z8 ** 4 == -1
    z3 = root_of_unity(3, 1)
    assert 1 + z3 + z3 ** 2 == 0
    # ζ₆ = -ζ₃², written in two different fields
    assert root_of_unity(6, 1) == -(z3 ** 2)
    assert hash(root_of_unity(6, 1)) == hash(-(z3 ** 2))
    assert root_of_unity(4, 1) ** 2 == root_of_unity(2, 1)


def test_invalid_order():
    with pytest.raises(InvalidOrderError):
        root_of_unity(0, 1)
    with pytest.raises(InvalidOrderError):
        CycNumber(-3, [1])


@given(cyc(), cyc())
def test_ring_operations_match_floats(a, b):
    za, zb = complex(a), complex(b)
    assert approx(a + b, za + zb)
    assert approx(a * b, za * zb)
    assert approx(a - b, za - zb)
    if not b.is_zero():
        assert approx(a / b, za / zb, 1e-6 * max(1, abs(za / zb)))


@given(cyc(), cyc(), cyc())
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(cyc())
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == 1


@given(cyc(), st.sampled_from([1, 2, 3, 5]))
def test_embedding_preserves_value_and_hash(a, k):
    b = a.embed(a.order * k)
    assert b == a
    assert hash(b) == hash(a)
    assert approx(b, complex(a))


@given(orders, st.integers(-50, 50))
def test_root_exponent_round_trip(n, k):
    x = root_of_unity(n, k)
    e = root_exponent(x)
    assert e is not None
    assert root_of_unity(e[1], e[0]) == x
    assert approx(x, cmath.exp(2j * cmath.pi * k / n))


def test_root_exponent_rejects_non_roots():
    assert root_exponent(CycNumber(4, [1, 1])) is None
    assert root_exponent(CycNumber(1, [2])) is None


@given(st.fractions(min_value=-3, max_value=3, max_denominator=24),
       st.fractions(min_value=-3, max_value=3, max_denominator=24))
def test_root_of_unity_type_agrees_with_cyc(s, t):
    a, b = RootOfUnity(s), RootOfUnity(t)
    assert (a * b).cyc == a.cyc * b.cyc
    assert (a / b).cyc == a.cyc / b.cyc
    assert a.inverse().cyc == a.cyc.inverse()
    assert RootOfUnity.of(a.cyc) == a
    assert a * b.cyc == a.cyc * b.cyc


def test_arith_and_is_equal():
    a, b = root_of_unity(5, 2), root_of_unity(3, 1)
    assert arith(a, b, "add") == a + b
    assert arith(a, b, "mul") == a * b
    assert arith(a, b, "div") == a / b
    assert is_equal(a * b, b * a)
    with pytest.raises(ValueError):
        arith(a, b, "pow")


def test_json_round_trip():
    x = root_of_unity(12, 5) + Fraction(1, 3)
    assert CycNumber.from_json(x.to_json()) == x


def test_sympy_minimal_value():
    # sqrt(2) = ζ₈ + ζ₈⁷
    s = root_of_unity(8, 1) + root_of_unity(8, 7)
    assert s * s == 2
    assert approx(s, complex(sympy.sqrt(2).evalf()))
