from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from slab.quadratic import (QuadraticReal, UnsupportedFieldError, cf_evaluate, cf_expand, convergents,
                            periodic_cf_value, qr, qr_compare, qr_floor)

import oracles

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=40)
positive = st.fractions(min_value=Fraction(1, 500), max_value=1000, max_denominator=500)
radicands = st.sampled_from([2, 3, 5, 6, 7, 10, 13])


@st.composite
def quadratics(draw, D=None):
    return QuadraticReal(draw(fractions), draw(fractions), D or draw(radicands))


def to_sympy(x: QuadraticReal):
    return sympy.Rational(x.a.numerator, x.a.denominator) + sympy.Rational(
        x.b.numerator, x.b.denominator) * sympy.sqrt(x.D)


@given(st.data())
def test_compare_agrees_with_sympy(data):
    D = data.draw(radicands)
    x, y = data.draw(quadratics(D)), data.draw(quadratics(D))
    expected = sympy.sign(to_sympy(x) - to_sympy(y))
    assert qr_compare(x, y) == int(expected)


@given(st.data())
def test_compare_is_a_total_order(data):
    D = data.draw(radicands)
    xs = [data.draw(quadratics(D)) for _ in range(5)]
    ordered = sorted(xs)
    assert all(qr_compare(a, b) <= 0 for a, b in zip(ordered, ordered[1:]))
    for a in xs:
        for b in xs:
            assert qr_compare(a, b) == -qr_compare(b, a)


@given(quadratics())
def test_floor_agrees_with_sympy(x):
    assert qr_floor(x) == int(sympy.floor(to_sympy(x)))


@given(st.data())
def test_field_arithmetic(data):
    D = data.draw(radicands)
    x, y = data.draw(quadratics(D)), data.draw(quadratics(D))
    assert x + y - y == x
    assume(y.sign() != 0)
    assert (x * y) / y == x
    assert x * x.conjugate() == QuadraticReal(x.norm())


def test_mixed_fields_are_refused():
    with pytest.raises(UnsupportedFieldError):
        qr("sqrt(2)") + qr("sqrt(3)")


def test_parse_and_normalise():
    assert qr("sqrt(8)") == QuadraticReal(0, 2, 2)
    assert qr("1/2+1/2*sqrt(5)") * qr("1/2+1/2*sqrt(5)") == qr("3/2+1/2*sqrt(5)")
    assert qr("sqrt(4)").is_rational


@given(positive)
def test_cf_round_trip_on_rationals(x):
    cf = cf_expand(x)
    assert cf.status == "terminated"
    assert list(cf.partial_quotients) == oracles.cf_of_fraction(x)
    assert cf_evaluate(cf.partial_quotients) == x


@given(st.integers(2, 200))
def test_cf_of_square_roots_matches_integer_recurrence(n):
    assume(int(n ** 0.5) ** 2 != n)
    cf = cf_expand(QuadraticReal.sqrt(n))
    assert cf.status == "periodic"
    L = len(cf.partial_quotients) + 3 * len(cf.period)
    assert cf.terms(L) == oracles.cf_of_sqrt(n, L)


@given(st.lists(st.integers(1, 6), min_size=0, max_size=3), st.lists(st.integers(1, 6), min_size=1, max_size=3),
       st.integers(0, 5))
def test_periodic_value_regenerates_the_expansion(pre, per, a0):
    pre = [a0] + pre
    x = periodic_cf_value(pre, per)
    cf = cf_expand(x)
    assert cf.status == "periodic"
    L = len(pre) + 3 * len(per)
    assert cf.terms(L) == [pre[i] if i < len(pre) else per[(i - len(pre)) % len(per)] for i in range(L)]


def test_convergents_alternate_and_approach():
    phi = qr("1/2+1/2*sqrt(5)")
    cs = convergents(cf_expand(phi), 20)
    assert cs[:5] == [1, 2, Fraction(3, 2), Fraction(5, 3), Fraction(8, 5)]
    for k, c in enumerate(cs):
        assert (phi - c).sign() == (1 if k % 2 == 0 else -1)
    # |phi - p/q| < 1/q^2
    for c in cs:
        assert abs(phi - c) < Fraction(1, c.denominator ** 2)


def test_spec_examples():
    assert str(cf_expand(Fraction(17, 6))) == "[2;1,5]"
    assert str(cf_expand(qr("sqrt(2)"))) == "[1;period(2)]"
    assert str(cf_expand(qr("1/2+1/2*sqrt(5)"))) == "[period(1)]"
    with pytest.raises(ValueError):
        cf_expand(0)
