"""Certificates of differential-algebraic relations among solutions.

Every structural constraint found by the classifier is backed here by an
explicit witness that a checker can confirm with rational-function
arithmetic alone.  The certificates speak about a fixed solution basis:

* ``y1`` is the hypergeometric solution attached to the first Riccati
  certificate ``u`` (``y1(x+1) = u * y1(x)``),
* ``y2`` is the second basis solution; in the diagonal case it is
  hypergeometric for the second certificate ``v``,
* ``y0 = y2(x+1) - u * y2(x)`` is the second diagonal coordinate in the
  triangular case (it satisfies ``y0(x+1) = (b/u) * y0(x)``),
* ``w = y1(x) * y2(x+1) - y2(x) * y1(x+1)`` is the Casoratian.

For the dihedral and unstructured branches the power and log-derivative
certificates concern the Casoratian of the zero-trace equation actually
analysed (``y(x+2) = -r * y(x)``); reports should restate that basis.

``emit_relations`` turns a group descriptor plus the classification
context into a list of certificates; ``verify_certificate`` replays each
one against the context and never raises on a bad certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .classify import (
    Classification,
    DeltaConstAlpha,
    DeltaConstDet,
    DeltaConstLambda,
    DeltaConstMonomial,
    DetTorsion,
    DetTorsionDihedral,
    FullGroup,
    GroupDescriptor,
    LinearDeltaOp,
    MonomialTorsion,
    Shape,
    TorsionAlpha,
    TorsionLambda,
    TorsionLink,
    UnipotentEmbedding,
    solve_L_coefficients,
)
from .fields import constant_is_one
from .markers import Empty, InternalInconsistency, NoSolution, NotEquivalent
from .ratfunc import RF
from .summation import (
    abramov_rational_solutions,
    solve_multiplicative,
    solve_telescoper,
)


# -- certificate variants ------------------------------------------------------


class RelationCertificate:
    """Base class; subclasses are frozen dataclasses with witness fields."""

    @property
    def kind(self) -> str:
        return type(self).__name__

    def witnesses(self) -> dict:
        return {}

    def __str__(self) -> str:
        inner = ", ".join(str(v) for v in self.witnesses().values())
        return f"{self.kind}({inner})"


@dataclass(frozen=True)
class Hypergeometric(RelationCertificate):
    """target(x+1) = u * target(x) for a basis solution."""

    target: str
    u: RF

    def witnesses(self) -> dict:
        return {"target": self.target, "u": str(self.u)}


@dataclass(frozen=True)
class MonomialRational(RelationCertificate):
    """y1^m * y2^n = f (with y0 in place of y2 in the triangular case)."""

    m: int
    n: int
    f: RF

    def witnesses(self) -> dict:
        return {"m": self.m, "n": self.n, "f": str(self.f)}


@dataclass(frozen=True)
class LogDerivRational(RelationCertificate):
    """delta(target) = f * target for a basis solution."""

    target: str
    f: RF

    def witnesses(self) -> dict:
        return {"target": self.target, "f": str(self.f)}


@dataclass(frozen=True)
class MonomialLogDeriv(RelationCertificate):
    """delta(y1^m * y2^n) = f * y1^m * y2^n."""

    m: int
    n: int
    f: RF

    def witnesses(self) -> dict:
        return {"m": self.m, "n": self.n, "f": str(self.f)}


@dataclass(frozen=True)
class UnipotentRelation(RelationCertificate):
    """y2 = y1 * L(delta(y1)/y1) + g * y1 on the connected component.

    ``g`` is pinned by requiring the constant coefficient of its
    polynomial part to vanish; the relation holds after rescaling y2 by
    a delta-constant.
    """

    op: LinearDeltaOp
    g: RF

    def witnesses(self) -> dict:
        return {"coeffs": [str(c) for c in self.op.coeffs], "g": str(self.g)}

    def __str__(self) -> str:
        return f"UnipotentRelation({self.op}, {self.g})"


@dataclass(frozen=True)
class ProductZero(RelationCertificate):
    """y1 * y2 = 0 for the branch that permutes two isotropic lines."""


@dataclass(frozen=True)
class CasoratianPower(RelationCertificate):
    """w^m = f for the Casoratian w of the analysed equation."""

    m: int
    f: RF

    def witnesses(self) -> dict:
        return {"m": self.m, "f": str(self.f)}


@dataclass(frozen=True)
class CasoratianLogDeriv(RelationCertificate):
    """delta(w) = f * w for the Casoratian w of the analysed equation."""

    f: RF

    def witnesses(self) -> dict:
        return {"f": str(self.f)}


@dataclass(frozen=True)
class Independence(RelationCertificate):
    """No further relations: the stated solutions are differentially
    independent over the rational functions and their delta-closure."""

    statement: str

    def witnesses(self) -> dict:
        return {"statement": self.statement}

    def __str__(self) -> str:
        return f"Independence({self.statement})"


# -- emission helpers ----------------------------------------------------------


def _cofactor_for_unit_constant(w: RF, step: int = 1) -> RF:
    """f with sigma(f) = w * f when w is a shift quotient (constant 1)."""
    solved = solve_multiplicative(w, step)
    if solved is NotEquivalent:
        raise InternalInconsistency(
            "constraint promised a shift quotient but none exists"
        )
    c, f = solved
    if not constant_is_one(c):
        raise InternalInconsistency(
            "constraint promised constant 1 but the constant is " + str(c)
        )
    return f


def _telescoped(f: RF, step: int = 1) -> RF:
    g = solve_telescoper(f, step)
    if g is NoSolution:
        raise InternalInconsistency(
            "constraint promised a summable log-derivative but the "
            "telescoper failed"
        )
    return g


def _power(base: RF, exponent: int) -> RF:
    if exponent == 0:
        return RF.one()
    return base**exponent


def _monomial(u: RF, v, m: int, n: int) -> RF:
    w = _power(u, m)
    if n:
        w = w * _power(RF.of(v), n)
    return w


def _cross_checked_embedding_g(context: Classification, op: LinearDeltaOp) -> RF:
    """The additive witness for the unipotent relation, telescoped and,
    at shift step one, confirmed against an independent solver route."""
    iterates = context.iterates
    t = iterates.t
    u_t = iterates.u_t
    applied = op.apply(u_t.log_derivative())
    w = context.w_witness
    if w is None:
        solved = solve_multiplicative(iterates.w_t_equation_coefficient, t)
        if solved is NotEquivalent or not constant_is_one(solved[0]):
            raise InternalInconsistency(
                "unipotent embedding recorded without a rational ratio witness"
            )
        w = solved[1]
    g = context.embedding_g
    if g is None:
        g = _telescoped(w - applied, t)
    if t == 1:
        a, b, u = context.a, context.b, context.u
        rhs = b * applied - u * u.shift(1) * applied.shift(1)
        coeffs = [b, a * u, u * u.shift(1)]
        solved = abramov_rational_solutions(coeffs, rhs)
        if solved is Empty:
            raise InternalInconsistency(
                "telescoper found the unipotent witness but the direct "
                "recurrence solver found none"
            )
        diff = solved.particular - g
        residual = sum(
            (c * diff.shift(i) for i, c in enumerate(coeffs)), RF.zero()
        )
        if not residual.is_zero():
            raise InternalInconsistency(
                "the two unipotent witness routes disagree beyond the "
                "kernel of the recurrence"
            )
    return g


# -- emission ------------------------------------------------------------------


def _emit_character_pair(
    constraints, u: RF, v: RF, second: str
) -> list:
    """Certificates for constraints on a pair of first-order characters."""
    out = []
    for constraint in constraints:
        if isinstance(constraint, TorsionAlpha):
            m = constraint.m
            f = _cofactor_for_unit_constant(_power(u, m))
            out.append(MonomialRational(m, 0, f))
        elif isinstance(constraint, TorsionLambda):
            n = constraint.n
            f = _cofactor_for_unit_constant(_power(v, n))
            out.append(MonomialRational(0, n, f))
        elif isinstance(constraint, TorsionLink):
            m = constraint.e * constraint.g_m
            n = constraint.g_n
            f = _cofactor_for_unit_constant(_monomial(u, v, m, n))
            out.append(MonomialRational(m, n, f))
        elif isinstance(constraint, MonomialTorsion):
            m, n = constraint.m, constraint.n
            f = _cofactor_for_unit_constant(_monomial(u, v, m, n))
            out.append(MonomialRational(m, n, f))
        elif isinstance(constraint, DeltaConstAlpha):
            out.append(LogDerivRational("y1", _telescoped(u.log_derivative())))
        elif isinstance(constraint, DeltaConstLambda):
            out.append(
                LogDerivRational(second, _telescoped(v.log_derivative()))
            )
        elif isinstance(constraint, DeltaConstMonomial):
            m, n = constraint.m, constraint.n
            w = _monomial(u, v, m, n)
            out.append(MonomialLogDeriv(m, n, _telescoped(w.log_derivative())))
        elif isinstance(constraint, FullGroup):
            out.append(
                Independence(
                    "y1 and y2 are differentially independent over the "
                    "rational functions"
                )
            )
    return out


def _emit_diagonal(G: GroupDescriptor, context: Classification) -> list:
    u, v = context.u, context.v
    out = [Hypergeometric("y1", u), Hypergeometric("y2", v)]
    out.extend(_emit_character_pair(G.constraints, u, v, "y2"))
    return out


def _emit_scalar(G: GroupDescriptor, context: Classification) -> list:
    certs = context.scalar_certificates
    out = [
        Hypergeometric(f"y{i + 1}", cert) for i, cert in enumerate(certs[:2])
    ]
    u = certs[0]
    for constraint in G.constraints:
        if isinstance(constraint, TorsionAlpha):
            m = constraint.m
            f = _cofactor_for_unit_constant(_power(u, m))
            out.append(MonomialRational(m, 0, f))
        elif isinstance(constraint, DeltaConstAlpha):
            out.append(LogDerivRational("y1", _telescoped(u.log_derivative())))
        elif isinstance(constraint, FullGroup):
            out.append(
                Independence(
                    "the common character of the solutions is "
                    "differentially independent over the rational functions"
                )
            )
    return out


def _emit_reducible(G: GroupDescriptor, context: Classification) -> list:
    u = context.u
    v = context.b / u
    out = [Hypergeometric("y1", u), Hypergeometric("y0", v)]
    out.extend(_emit_character_pair(G.constraints, u, v, "y0"))
    for constraint in G.constraints:
        if isinstance(constraint, UnipotentEmbedding):
            g = _cross_checked_embedding_g(context, constraint.op)
            out.append(UnipotentRelation(constraint.op, g))
    return out


def _emit_casoratian(constraints, base: RF, independence: str) -> list:
    out = []
    for constraint in constraints:
        if isinstance(constraint, (DetTorsionDihedral, DetTorsion)):
            m = constraint.m
            f = _cofactor_for_unit_constant(_power(base, m))
            out.append(CasoratianPower(m, f))
        elif isinstance(constraint, DeltaConstDet):
            out.append(CasoratianLogDeriv(_telescoped(base.log_derivative())))
        elif isinstance(constraint, FullGroup):
            out.append(Independence(independence))
    return out


def _emit_imprimitive(G: GroupDescriptor, context: Classification) -> list:
    out = [ProductZero()]
    out.extend(
        _emit_casoratian(
            G.constraints,
            context.r,
            "beyond the vanishing product, y1 and y2 are differentially "
            "independent over the rational functions",
        )
    )
    return out


def _emit_large(G: GroupDescriptor, context: Classification) -> list:
    return _emit_casoratian(
        G.constraints,
        context.b,
        "y1, y2, y1(x+1), y2(x+1) are differentially independent over "
        "the rational functions",
    )


_EMITTERS = {
    Shape.Diagonalizable: _emit_diagonal,
    Shape.ScalarOrTrivial: _emit_scalar,
    Shape.TriangularReducible: _emit_reducible,
    Shape.ImprimitiveDihedral: _emit_imprimitive,
    Shape.Sl2Extension: _emit_large,
}


def emit_relations(G: GroupDescriptor, context: Classification) -> list:
    """Certificates witnessing every constraint recorded in ``G``.

    The context must come from the classification that produced ``G``;
    all witnesses are recomputed or cross-checked here rather than
    trusted, so an inconsistent context raises InternalInconsistency.
    """
    return _EMITTERS[G.shape](G, context)


# -- verification --------------------------------------------------------------


def _character_pair(context: Classification):
    if context.branch == "reducible":
        return context.u, context.b / context.u
    return context.u, context.v


def _casoratian_base(context: Classification):
    if context.branch == "imprimitive":
        return context.r
    if context.branch == "large":
        return context.b
    return None


def _verify(cert: RelationCertificate, context: Classification):
    a, b = context.a, context.b
    if isinstance(cert, Hypergeometric):
        w = cert.u
        if cert.target == "y0":
            u = context.u
            if u is None:
                return False, "no first character in this context"
            if not (u * u.shift(1) + a * u + b).is_zero():
                return False, "first character fails its Riccati equation"
            if w * u != b:
                return False, "witness is not the quotient character"
            return True, "ok"
        if not (w * w.shift(1) + a * w + b).is_zero():
            return False, "witness fails the Riccati equation"
        return True, "ok"
    if isinstance(cert, MonomialRational):
        u, v = _character_pair(context)
        if u is None:
            u = (
                context.scalar_certificates[0]
                if context.scalar_certificates
                else None
            )
            v = RF.one()
        if u is None:
            return False, "no characters in this context"
        target = _monomial(u, v, cert.m, cert.n)
        if cert.f.shift(1) != target * cert.f:
            return False, "cofactor fails the shift identity"
        return True, "ok"
    if isinstance(cert, LogDerivRational):
        u, v = _character_pair(context)
        if cert.target == "y1":
            w = u if u is not None else (
                context.scalar_certificates[0]
                if context.scalar_certificates
                else None
            )
        else:
            w = v
        if w is None:
            return False, "no matching character in this context"
        if cert.f.shift(1) - cert.f != RF.of(w).log_derivative():
            return False, "witness fails the telescoping identity"
        return True, "ok"
    if isinstance(cert, MonomialLogDeriv):
        u, v = _character_pair(context)
        if u is None:
            return False, "no characters in this context"
        w = _monomial(u, v, cert.m, cert.n)
        if cert.f.shift(1) - cert.f != w.log_derivative():
            return False, "witness fails the telescoping identity"
        return True, "ok"
    if isinstance(cert, UnipotentRelation):
        iterates = context.iterates
        if iterates is None:
            return False, "no triangular iterate data in this context"
        t = iterates.t
        w = context.w_witness
        if w is None:
            solved = solve_multiplicative(iterates.w_t_equation_coefficient, t)
            if solved is NotEquivalent or not constant_is_one(solved[0]):
                return False, "no rational ratio witness for this context"
            w = solved[1]
        applied = cert.op.apply(iterates.u_t.log_derivative())
        if cert.g.shift(t) - cert.g != w - applied:
            return False, "witness fails the inhomogeneous identity"
        polypart, _ = cert.g.partial_fractions()
        if polypart.coeff(0) != Fraction(0):
            return False, "additive witness is not normalized"
        return True, "ok"
    if isinstance(cert, ProductZero):
        if context.G.shape is not Shape.ImprimitiveDihedral:
            return False, "the solution lines are not permuted"
        return True, "ok"
    if isinstance(cert, CasoratianPower):
        base = _casoratian_base(context)
        if base is None:
            return False, "no Casoratian base in this context"
        target = _power(base, cert.m)
        if cert.f.shift(1) != target * cert.f:
            return False, "cofactor fails the shift identity"
        return True, "ok"
    if isinstance(cert, CasoratianLogDeriv):
        base = _casoratian_base(context)
        if base is None:
            return False, "no Casoratian base in this context"
        if cert.f.shift(1) - cert.f != base.log_derivative():
            return False, "witness fails the telescoping identity"
        return True, "ok"
    if isinstance(cert, Independence):
        if not context.G.has(FullGroup):
            return False, "the group descriptor records relations"
        return True, "ok"
    return False, "unknown certificate kind"


def verify_certificate(cert: RelationCertificate, context: Classification) -> bool:
    """Replay a certificate against the classification context.

    Returns False (never raises) when the witnesses fail their defining
    identities; ``explain_verification`` exposes the reason tag.
    """
    ok, _ = _verify(cert, context)
    return ok


def explain_verification(cert: RelationCertificate, context: Classification):
    """(ok, reason) pair behind ``verify_certificate``."""
    return _verify(cert, context)
