from fractions import Fraction

import pytest

from ddgalois.fields import (
    AlgNum,
    NumberField,
    algnum_sqrt,
    is_root_of_unity,
    multiplicative_relation_lattice,
    quadratic_field,
    sqrt_in_field,
    squarefree_part,
    torsion_link,
)
from ddgalois.markers import NotRootOfUnity, UnsupportedField
from ddgalois.polys import Poly

Q5 = quadratic_field(5)
QI = quadratic_field(-1)


def phi_psi():
    s5 = Q5.gen()
    return (1 + s5) / 2, (1 - s5) / 2


def test_field_requires_irreducible():
    with pytest.raises(ValueError):
        NumberField(Poly((-1, 0, 1)))  # x^2 - 1 splits


def test_quadratic_arithmetic():
    s = Q5.gen()
    assert s * s == 5
    phi, psi = phi_psi()
    assert phi + psi == 1
    assert phi * psi == -1
    assert phi.conjugate() == psi
    assert phi.norm() == -1
    assert (phi / phi) == 1
    assert phi**2 == phi + 1


def test_inverse():
    s = Q5.gen()
    v = 2 + s
    assert v * v.inverse() == 1
    with pytest.raises(ZeroDivisionError):
        Q5.embed(0).inverse()


def test_rational_embedding_hash():
    half = Q5.embed(Fraction(1, 2))
    assert half == Fraction(1, 2)
    assert hash(half) == hash(Fraction(1, 2))


def test_cross_field_arithmetic_rejected():
    with pytest.raises(UnsupportedField):
        Q5.gen() + QI.gen()


def test_sqrt_in_field_canonicalizes():
    r8 = sqrt_in_field(Fraction(8))
    assert r8.field.minpoly == Poly((-2, 0, 1))
    assert r8 * r8 == 8
    assert sqrt_in_field(Fraction(9, 4)) == Fraction(3, 2)
    assert squarefree_part(Fraction(8)) == 2
    assert squarefree_part(Fraction(-4)) == -1
    assert squarefree_part(Fraction(9, 2)) == 2


def test_algnum_sqrt():
    s2 = quadratic_field(2).gen()
    v = 3 + 2 * s2  # (1 + sqrt 2)^2
    r = algnum_sqrt(v)
    assert r is not None and r * r == v
    assert algnum_sqrt(s2) is None


class TestRootsOfUnity:
    def test_rationals(self):
        assert is_root_of_unity(Fraction(1)) == 1
        assert is_root_of_unity(Fraction(-1)) == 2
        assert is_root_of_unity(Fraction(1, 2)) is NotRootOfUnity

    def test_quartic_root(self):
        i = QI.gen()
        assert is_root_of_unity(i) == 4
        assert is_root_of_unity(-i) == 4
        assert is_root_of_unity(QI.embed(-1)) == 2

    def test_sixth_root(self):
        # (1 + sqrt(-3))/2 is a primitive 6th root of unity.
        w = (1 + quadratic_field(-3).gen()) / 2
        assert is_root_of_unity(w) == 6

    def test_golden_ratio_is_not(self):
        phi, _ = phi_psi()
        assert is_root_of_unity(phi) is NotRootOfUnity


class TestRelationLattice:
    def test_multiplicatively_independent(self):
        assert multiplicative_relation_lattice(Fraction(2), Fraction(3)) == ()

    def test_inverse_pair(self):
        lat = multiplicative_relation_lattice(Fraction(2), Fraction(1, 2))
        assert lat == ((1, 1),)

    def test_power_relation(self):
        lat = multiplicative_relation_lattice(Fraction(4), Fraction(8))
        assert lat == ((3, -2),)

    def test_sign_doubling(self):
        lat = multiplicative_relation_lattice(Fraction(-2), Fraction(2))
        assert lat == ((2, -2),)

    def test_torsion_times_free(self):
        lat = multiplicative_relation_lattice(Fraction(-1), Fraction(3))
        assert lat == ((2, 0),)

    def test_both_torsion(self):
        i = QI.gen()
        lat = multiplicative_relation_lattice(i, QI.embed(-1))
        assert lat == ((4, 0), (2, 1))

    def test_golden_pair(self):
        phi, psi = phi_psi()
        assert multiplicative_relation_lattice(phi, psi) == ((2, 2),)

    def test_unit_vs_inverse_square(self):
        s2 = quadratic_field(2).gen()
        u = 1 + s2
        v = 3 - 2 * s2  # (sqrt2 - 1)^2, so u^2 * v = 1
        assert multiplicative_relation_lattice(u, v) == ((2, 1),)

    def test_independent_quadratic(self):
        s2 = quadratic_field(2).gen()
        assert multiplicative_relation_lattice(1 + s2, 2 + s2) == ()


def test_torsion_link_equal_orders():
    # c = i, d = -i: gcd 4, e solves i^e * (-i) = 1, so e = 1.
    i = QI.gen()
    assert torsion_link(i, 4, -i, 4) == (1, 1, 1)


def test_torsion_link_coprime_orders():
    w = (1 + quadratic_field(-3).gen()) / 2  # primitive 6th root
    c = w * w  # primitive cube root
    assert is_root_of_unity(c) == 3
    assert torsion_link(c, 3, Fraction(-1), 2) == (1, 3, 2)


def test_torsion_link_shared_factor():
    i = QI.gen()
    assert torsion_link(i, 4, Fraction(-1), 2) == (1, 2, 1)
