"""Relation certificates: emission per constraint and replay checking."""

import pytest

from ddgalois.classify import LinearDeltaOp, classify_full
from ddgalois.fields import quadratic_field
from ddgalois.ratfunc import RationalFunction as RF
from ddgalois.relations import (
    CasoratianLogDeriv,
    CasoratianPower,
    Hypergeometric,
    Independence,
    LogDerivRational,
    MonomialLogDeriv,
    MonomialRational,
    ProductZero,
    UnipotentRelation,
    emit_relations,
    explain_verification,
    verify_certificate,
)

x = RF.x()


def relate(a, b, **kw):
    result = classify_full(a, b, **kw)
    return result, emit_relations(result.G, result)


def assert_all_verify(rels, context):
    for cert in rels:
        ok, reason = explain_verification(cert, context)
        assert ok, (str(cert), reason)


class TestTriangularExample:
    def test_emission(self):
        result, rels = relate(-(2 * x + 1), x * x)
        assert rels == [
            Hypergeometric("y1", x),
            Hypergeometric("y0", x),
            MonomialRational(1, -1, RF.one()),
            UnipotentRelation(LinearDeltaOp((1,)), RF.zero()),
        ]
        assert_all_verify(rels, result)

    def test_unnormalized_additive_witness_rejected(self):
        result, _ = relate(-(2 * x + 1), x * x)
        shifted = UnipotentRelation(LinearDeltaOp((1,)), RF.one())
        ok, reason = explain_verification(shifted, result)
        assert not ok
        assert reason == "additive witness is not normalized"

    def test_wrong_operator_rejected(self):
        result, _ = relate(-(2 * x + 1), x * x)
        wrong = UnipotentRelation(LinearDeltaOp((2,)), RF.zero())
        assert not verify_certificate(wrong, result)

    def test_wrong_monomial_cofactor_rejected(self):
        result, _ = relate(-(2 * x + 1), x * x)
        assert verify_certificate(MonomialRational(1, -1, RF.one()), result)
        assert not verify_certificate(MonomialRational(1, -1, x), result)


class TestInterlacingExample:
    def test_emission(self):
        result, rels = relate(RF.zero(), (x + 1) / (2 * x))
        assert rels == [
            ProductZero(),
            CasoratianLogDeriv(RF.one() / x),
        ]
        assert_all_verify(rels, result)

    def test_wrong_witness_rejected(self):
        result, _ = relate(RF.zero(), (x + 1) / (2 * x))
        assert not verify_certificate(CasoratianLogDeriv(x), result)

    def test_product_zero_needs_the_interlacing_shape(self):
        other, _ = relate(x, RF.one())
        assert not verify_certificate(ProductZero(), other)


class TestLargeExample:
    def test_emission(self):
        result, rels = relate(x, RF.one())
        assert rels == [CasoratianPower(1, RF.one())]
        assert_all_verify(rels, result)

    def test_free_case_emits_independence(self):
        result, rels = relate(RF.one(), x)
        assert rels == [
            Independence(
                "y1, y2, y1(x+1), y2(x+1) are differentially independent "
                "over the rational functions"
            )
        ]
        assert_all_verify(rels, result)

    def test_independence_rejected_when_relations_exist(self):
        constrained, _ = relate(x, RF.one())
        foreign = Independence("anything")
        assert not verify_certificate(foreign, constrained)


class TestDiagonalEmission:
    def test_split_constants(self):
        result, rels = relate(RF.of(-5), RF.of(6))
        assert rels == [
            Hypergeometric("y1", RF.of(3)),
            Hypergeometric("y2", RF.of(2)),
            LogDerivRational("y1", RF.zero()),
            LogDerivRational("y2", RF.zero()),
        ]
        assert_all_verify(rels, result)

    def test_fibonacci_torsion_monomial(self):
        result, rels = relate(
            RF.of(-1), RF.of(-1), extra_field=quadratic_field(5)
        )
        monomials = [r for r in rels if isinstance(r, MonomialRational)]
        assert monomials == [MonomialRational(2, 2, RF.one())]
        assert sum(isinstance(r, Hypergeometric) for r in rels) == 2
        assert sum(isinstance(r, LogDerivRational) for r in rels) == 2
        assert_all_verify(rels, result)

    def test_delta_constant_monomial(self):
        # u = x, v = 2x via a = -(3x+1), b = 2x^2: y1/y0 has rational
        # delta-log witness 0 after normalization.
        result, rels = relate(-(3 * x + 1), 2 * x * x)
        assert MonomialLogDeriv(1, -1, RF.zero()) in rels
        assert_all_verify(rels, result)


class TestScalarEmission:
    def test_trivial_character(self):
        result, rels = relate(RF.of(-2), RF.of(1))
        assert Hypergeometric("y1", RF.one()) in rels
        assert MonomialRational(1, 0, RF.one()) in rels
        assert LogDerivRational("y1", RF.zero()) in rels
        assert_all_verify(rels, result)


class TestCasoratianTorsion:
    def test_dihedral_power(self):
        # a = 0, b = -(x+1)/x: the quotient has constant -1 (order 2).
        result, rels = relate(RF.zero(), -(x + 1) / x)
        assert ProductZero() in rels
        assert CasoratianPower(2, x * x) in rels
        assert_all_verify(rels, result)

    def test_dihedral_free_independence(self):
        result, rels = relate(RF.zero(), x)
        assert rels[0] == ProductZero()
        assert isinstance(rels[1], Independence)
        assert_all_verify(rels, result)


class TestForeignCertificates:
    def test_hypergeometric_must_solve_riccati(self):
        result, _ = relate(RF.of(-5), RF.of(6))
        assert verify_certificate(Hypergeometric("y1", RF.of(2)), result)
        assert not verify_certificate(Hypergeometric("y1", RF.of(5)), result)

    def test_logderiv_must_telescope(self):
        result, _ = relate(RF.of(-5), RF.of(6))
        assert not verify_certificate(LogDerivRational("y1", x), result)

    def test_never_raises_on_mismatched_context(self):
        large, _ = relate(x, RF.one())
        for cert in [
            MonomialRational(1, 0, RF.one()),
            LogDerivRational("y1", RF.zero()),
            UnipotentRelation(LinearDeltaOp((1,)), RF.zero()),
            CasoratianLogDeriv(x),
        ]:
            ok, reason = explain_verification(cert, large)
            assert not ok
            assert reason
