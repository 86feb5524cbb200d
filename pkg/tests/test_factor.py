from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ddgalois.factor import integer_roots, poly_factor, rational_roots
from ddgalois.markers import DegreeCap
from ddgalois.polys import Poly

x = Poly.x()


def test_linear_times_linear():
    fac = poly_factor(x**2 + x)
    assert fac.unit == 1
    assert fac.factors == ((x, 1), (x + 1, 1))


def test_cyclotomic_like_split():
    fac = poly_factor(x**4 - 1)
    assert fac.factors == ((x - 1, 1), (x + 1, 1), (x**2 + 1, 1))


def test_irreducible_quadratic_stays_whole():
    fac = poly_factor(x**2 - 2)
    assert fac.factors == ((x**2 - 2, 1),)


def test_multiplicities():
    fac = poly_factor((x - 3) ** 4 * (x**2 + x + 1) ** 2)
    assert fac.factors == ((x - 3, 4), (x**2 + x + 1, 2))


def test_unit_and_rational_coefficients():
    p = Fraction(3, 2) * (x - Fraction(1, 2)) * (x + 2)
    fac = poly_factor(p)
    assert fac.unit == Fraction(3, 2)
    assert fac.expand() == p


def test_constant_input():
    fac = poly_factor(Poly.const(Fraction(7, 3)))
    assert fac.unit == Fraction(7, 3) and fac.factors == ()


def test_degree_cap():
    with pytest.raises(DegreeCap):
        poly_factor(x**31)


def test_zero_rejected():
    with pytest.raises(ValueError):
        poly_factor(Poly.zero())


def test_rational_roots():
    p = (2 * x - 1) * (x + 3) * (x**2 + 1)
    assert set(rational_roots(p)) == {Fraction(1, 2), Fraction(-3)}
    assert integer_roots(p) == (-3,)


def test_high_degree_mixed():
    p = (x**3 - 2) * (x**2 - 3) * (x - 1) ** 2
    fac = poly_factor(p)
    assert fac.expand() == p
    degs = sorted(q.degree for q, _ in fac.factors)
    assert degs == [1, 2, 3]


@settings(deadline=None, max_examples=60)
@given(
    st.lists(
        st.tuples(
            st.integers(min_value=-8, max_value=8), st.integers(min_value=1, max_value=2)
        ),
        min_size=1,
        max_size=3,
    ),
    st.integers(min_value=1, max_value=5),
)
def test_factor_refactors_products_of_linears(roots, lead):
    p = Poly.const(lead)
    for r, e in roots:
        p = p * (x - r) ** e
    fac = poly_factor(p)
    assert fac.expand() == p
    for q, _ in fac.factors:
        assert q.lc == 1


@settings(deadline=None, max_examples=40)
@given(
    st.lists(st.integers(min_value=-6, max_value=6), min_size=2, max_size=5),
    st.lists(st.integers(min_value=-6, max_value=6), min_size=2, max_size=5),
)
def test_factor_round_trip(ca, cb):
    a, b = Poly(tuple(ca)), Poly(tuple(cb))
    if a.is_zero() or b.is_zero():
        return
    fac = poly_factor(a * b)
    assert fac.expand() == a * b
