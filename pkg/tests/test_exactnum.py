from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from tsurf.errors import FieldMismatch, Reducible, RootNotIsolated
from tsurf.exactnum import QQ, elem_sign, field_make, parse_rational, rational_dependence

K2 = field_make([-2, 0, 1], (1, 2))
K3 = field_make([-2, 0, 0, 1], (1, 2))  # real cube root of 2
ORACLE = {K2: sympy.sqrt(2), K3: sympy.cbrt(2)}

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def elements(K):
    return st.lists(fracs, min_size=K.degree, max_size=K.degree).map(K.element)


def symbolic(x):
    a = ORACLE[x.field]
    return sum(sympy.Rational(c.numerator, c.denominator) * a**i for i, c in enumerate(x.coords))


def test_field_make_rational_mode():
    K = field_make([0, 1], (-1, 1))
    assert K.degree == 1 and K.is_rational


def test_field_make_sqrt2():
    lo, hi = K2.root_interval(Fraction(1, 10**6))
    assert lo < Fraction(14142136, 10**7) and hi > Fraction(14142135, 10**7)


def test_field_make_two_roots():
    with pytest.raises(RootNotIsolated):
        field_make([-2, 0, 1], (-2, 2))


def test_field_make_no_root():
    with pytest.raises(RootNotIsolated):
        field_make([-2, 0, 1], (2, 3))


def test_field_make_reducible():
    with pytest.raises(Reducible):
        field_make([-4, 0, 1], (1, 3))


def test_sign_examples():
    a = K2.gen()
    assert elem_sign(K2.zero()) == 0
    assert elem_sign(a - 1) == 1
    assert elem_sign(3 - 2 * a) == 1
    # tight: 665857/470832 is a continued fraction convergent of sqrt 2 from above
    assert (a - Fraction(665857, 470832)).sign() == -1


@given(elements(K2))
def test_sign_matches_sympy_quadratic(x):
    assert x.sign() == int(sympy.sign(symbolic(x)))


@given(elements(K3))
def test_sign_matches_sympy_cubic(x):
    assert x.sign() == int(sympy.sign(symbolic(x)))


@given(elements(K3), elements(K3))
def test_ring_morphism(x, y):
    assert sympy.expand(symbolic(x * y) - symbolic(x) * symbolic(y)) == 0
    assert sympy.expand(symbolic(x + y) - symbolic(x) - symbolic(y)) == 0


@given(elements(K2), elements(K2))
def test_sign_multiplicative(x, y):
    assert (x * y).sign() == x.sign() * y.sign()


@given(elements(K2), elements(K2))
def test_sign_of_sum_within_interval_bounds(x, y):
    s = (x + y).sign()
    lo_x, hi_x = x.enclosure()
    lo_y, hi_y = y.enclosure()
    if lo_x + lo_y > 0:
        assert s == 1
    if hi_x + hi_y < 0:
        assert s == -1


@given(elements(K3))
def test_inverse(x):
    if x.is_zero():
        return
    assert x * x.inverse() == 1


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        K2.gen() + K3.gen()


def test_rational_dependence_examples():
    a = K2.gen()
    rank, rel = rational_dependence([K2.one(), a, 1 + a])
    assert rank == 2
    assert [tuple(r) for r in rel] == [(1, 1, -1)]
    assert rational_dependence([QQ.coerce(1), QQ.coerce(2), QQ.coerce(3)])[0] == 1
    assert rational_dependence([QQ.zero()])[0] == 0


@given(st.lists(elements(K3), min_size=1, max_size=6))
def test_rational_dependence_relations_annihilate(xs):
    rank, rels = rational_dependence(xs)
    assert rank + len(rels) == len(xs)
    for r in rels:
        total = K3.zero()
        for c, x in zip(r, xs):
            total = total + x * c
        assert total.is_zero()


def test_floor_and_approx():
    a = K2.gen()
    assert (a * 10).floor() == 14
    assert (-a).floor() == -2
    assert a.approx(12) == "1.41421356237"


def test_parse_rational():
    assert parse_rational("3:4") == Fraction(3, 4)
    assert parse_rational("-1.5") == Fraction(-3, 2)
    assert parse_rational("7/2") == Fraction(7, 2)


def test_parse_format_roundtrip():
    x = K3.element([Fraction(1, 2), -3, Fraction(5, 7)])
    assert K3.parse(K3.format(x)) == x
    assert K2.parse("1") == K2.one()
