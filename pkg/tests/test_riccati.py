from fractions import Fraction
from itertools import product

import pytest

from ddgalois.fields import quadratic_field
from ddgalois.markers import Cardinality, Completeness, ZeroInput
from ddgalois.polys import Poly
from ddgalois.ratfunc import RationalFunction as RF
from ddgalois.riccati import (
    infinite_certificate_family,
    interlacing_coefficient,
    second_riccati_coefficients,
    solve_first_riccati,
    solve_second_riccati,
)

x = Poly.x()
X = RF.of(x)


def riccati_holds(u, a, b, step=1):
    return (u * u.shift(step) + a * u + b).is_zero()


def check_all_solutions(result, a, b, step=1):
    for u in result:
        assert riccati_holds(u, a, b, step)


class TestFirstRiccati:
    def test_zero_input(self):
        with pytest.raises(ZeroInput):
            solve_first_riccati(RF.of(x), RF.zero())

    def test_single_polynomial_solution(self):
        # u*u(x+1) - (2x+1)u + x^2 = 0 has exactly one solution, u = x.
        a = RF.of(-(2 * x + 1))
        b = RF.of(x**2)
        out = solve_first_riccati(a, b)
        assert out.cardinality is Cardinality.One
        assert out.completeness is Completeness.Complete
        assert list(out) == [X]
        check_all_solutions(out, a, b)

    def test_triangular_with_distinct_diagonal(self):
        # u = x, with b/u = 2x on the other diagonal entry.
        a = RF.of(-(3 * x + 1))
        b = RF.of(2 * x**2)
        out = solve_first_riccati(a, b)
        assert out.cardinality is Cardinality.One
        assert out.completeness is Completeness.Complete
        assert list(out) == [X]
        check_all_solutions(out, a, b)

    def test_two_constant_solutions(self):
        a = RF.const(-5)
        b = RF.const(6)
        out = solve_first_riccati(a, b)
        assert out.cardinality is Cardinality.Two
        assert out.completeness is Completeness.Complete
        assert sorted(u.value_at_infinity() for u in out) == [2, 3]
        check_all_solutions(out, a, b)

    def test_golden_ratio_pair_needs_field_extension(self):
        a = RF.const(-1)
        b = RF.const(-1)
        out = solve_first_riccati(a, b)
        assert out.cardinality is Cardinality.Two
        assert out.completeness is Completeness.Complete
        sols = list(out)
        assert len(sols) == 2
        s5 = quadratic_field(5).gen()
        phi = (1 + s5) / 2
        psi = (1 - s5) / 2
        values = {u.value_at_infinity() for u in sols}
        assert values == {phi, psi}
        check_all_solutions(out, a, b)

    def test_double_root_gives_infinitely_many(self):
        # u*u(x+1) - 2u + 1 = 0: the family (x+c+1)/(x+c) plus u = 1.
        a = RF.const(-2)
        b = RF.const(1)
        out = solve_first_riccati(a, b)
        assert out.cardinality is Cardinality.ThreeOrMore
        assert out.completeness is Completeness.Complete
        check_all_solutions(out, a, b)

    def test_no_solution_small_witness(self):
        # u*u(x+1) + x*u + 1 = 0 has no rational solution.
        a = RF.of(x)
        b = RF.one()
        out = solve_first_riccati(a, b)
        assert out.cardinality is Cardinality.Zero
        assert out.completeness is Completeness.Complete
        assert list(out) == []

    def test_no_solution_rational_coefficients(self):
        a = RF.zero()
        b = RF(x + 1, 2 * x)
        out = solve_first_riccati(a, b)
        assert out.cardinality is Cardinality.Zero
        assert list(out) == []

    def test_zero_claims_against_candidate_scan(self):
        cases = [(RF.of(x), RF.one()), (RF.zero(), RF(x + 1, 2 * x))]
        shapes = [RF.one(), X, 1 / X, X + 1, 1 / (X + 1), X / (X + 1), (X + 1) / X]
        consts = [Fraction(1), Fraction(-1), Fraction(2), Fraction(-2),
                  Fraction(1, 2), Fraction(-1, 2)]
        for a, b in cases:
            assert solve_first_riccati(a, b).cardinality is Cardinality.Zero
            for c, s in product(consts, shapes):
                assert not riccati_holds(c * s, a, b)

    def test_step_two(self):
        # u*u(x+2) - 5u + 6 = 0, constants again.
        out = solve_first_riccati(RF.const(-5), RF.const(6), step=2)
        assert out.cardinality is Cardinality.Two
        check_all_solutions(out, RF.const(-5), RF.const(6), step=2)

    def test_rational_solution_with_denominator(self):
        # Plant u = 1/x: choose a = -1/x - something. u*sigma(u) = 1/(x(x+1)).
        u = 1 / X
        a = RF.of(x + 2)
        b = -(u * u.shift(1)) - a * u
        out = solve_first_riccati(a, b)
        assert any(v == u for v in out)
        check_all_solutions(out, a, b)


class TestSecondRiccati:
    def test_coefficient_construction(self):
        a = RF.of(x)
        b = RF.one()
        P, Q = second_riccati_coefficients(a, b)
        assert Q == RF(Poly.one(), x**2)
        expected = (b / a).shift(2) - a.shift(1) + b.shift(1) / a
        assert P == expected
        assert P == RF((x + 1) * Poly((2, -2, -1)), x * (x + 2))

    def test_zero_input_on_vanishing_middle_coefficient(self):
        with pytest.raises(ZeroInput):
            second_riccati_coefficients(RF.zero(), RF.one())

    def test_interlaced_example_has_no_solution(self):
        out = solve_second_riccati(RF.of(x), RF.one())
        assert out.cardinality is Cardinality.Zero

    def test_planted_interlaced_solution(self):
        # e solves e*sigma^2(e) + P e + Q = 0 when the original equation
        # is built so that e = x is a solution of the step-2 equation.
        e = X
        P = RF.of(-(x**2 + x + 2))
        Q = -(e * e.shift(2)) - P * e
        outs = solve_first_riccati(P, Q, step=2)
        assert any(v == e for v in outs)


class TestInterlacingCoefficient:
    def test_difference_of_witnesses(self):
        a = RF.of(x)
        b = RF.one()
        e1 = 1 / X
        e2 = X + 1
        r1 = interlacing_coefficient(a, b, e1)
        r2 = interlacing_coefficient(a, b, e2)
        assert r1 - r2 == a * (e1 - e2).shift(2)

    def test_zero_middle_coefficient_uses_b(self):
        b = RF(x + 1, 2 * x)
        assert interlacing_coefficient(RF.zero(), b, RF.zero()) == b

    def test_formula(self):
        a = RF.const(2)
        b = RF.of(x)
        e = RF.one()
        got = interlacing_coefficient(a, b, e)
        want = -a * a.shift(1) + b.shift(1) + a * (b / a).shift(2) + a * e.shift(2)
        assert got == want


class TestInfiniteFamily:
    def test_quotient_ratio(self):
        # For a = -2, b = 1: certificates 1 and (x+1)/x differ by a
        # shift quotient with constant 1.
        assert infinite_certificate_family(RF.one(), (X + 1) / X)

    def test_constant_ratio(self):
        # For a = -5, b = 6: 3/2 is a nontrivial constant.
        assert not infinite_certificate_family(RF.const(2), RF.const(3))

    def test_symmetric(self):
        pairs = [
            (RF.one(), (X + 1) / X),
            (RF.const(2), RF.const(3)),
            (X, (X + 1) * (X + 1) / X),
        ]
        for u, v in pairs:
            assert infinite_certificate_family(u, v) == (
                infinite_certificate_family(v, u)
            )
