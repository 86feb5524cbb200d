"""Galois group descriptors for second-order linear difference equations.

For sigma^2(y) + a*sigma(y) + b*y = 0 over Q(x), with sigma the shift
x -> x+1 and delta the derivative d/dx, this module computes descriptors
for two groups attached to the solution space: the difference Galois
group H (shift symmetries only) and its refinement G, which also records
every differential-algebraic constraint the solutions satisfy.  A
descriptor is a shape, a list of defining constraints, a connected
component count, and the list of decision tags that produced it.

Erasing the differential constraints from G always recovers H; the
``erase_delta`` function implements that projection and ``classify``
returns the pair (H, G).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .factor import DEFAULT_DEGREE_CAP
from .fields import (
    AlgNum,
    constant_is_one,
    is_root_of_unity,
    multiplicative_relation_lattice,
    torsion_link,
)
from .markers import (
    AllRelations,
    Cardinality,
    Completeness,
    Inconclusive,
    InternalInconsistency,
    Marker,
    NoEmbedding,
    NoRelation,
    NoSolution,
    NotEquivalent,
    NotRootOfUnity,
    UnsupportedField,
    ZeroInput,
)
from .polys import Poly
from .ratfunc import RationalFunction as RF
from .riccati import (
    interlacing_coefficient,
    solve_first_riccati,
    solve_second_riccati,
)
from .summation import (
    _poly_key,
    discrete_residues,
    integer_residue_relation,
    is_summable,
    log_derivative_orbit_sums,
    solve_multiplicative,
    solve_telescoper,
)

__all__ = [
    "Shape",
    "Constraint",
    "TorsionAlpha",
    "TorsionLambda",
    "TorsionLink",
    "MonomialTorsion",
    "DeltaConstAlpha",
    "DeltaConstLambda",
    "DeltaConstMonomial",
    "UnipotentFull",
    "UnipotentTrivial",
    "UnipotentEmbedding",
    "DetTorsionDihedral",
    "DeltaConstDet",
    "DetTorsion",
    "FullGroup",
    "LinearDeltaOp",
    "IterateData",
    "GroupDescriptor",
    "Classification",
    "classify",
    "classify_full",
    "classify_diagonalizable",
    "classify_reducible",
    "classify_imprimitive",
    "classify_large",
    "reduce_to_connected",
    "solve_L_coefficients",
    "erase_delta",
]


class Shape(str, Enum):
    Diagonalizable = "Diagonalizable"
    TriangularReducible = "TriangularReducible"
    ImprimitiveDihedral = "ImprimitiveDihedral"
    Sl2Extension = "Sl2Extension"
    ScalarOrTrivial = "ScalarOrTrivial"


# -- constraints --------------------------------------------------------------


class Constraint:
    """One defining condition cutting the group out of its ambient shape."""

    @property
    def kind(self) -> str:
        return type(self).__name__

    def params(self) -> dict:
        return {}

    def __str__(self) -> str:
        ps = self.params()
        if not ps:
            return self.kind
        return f"{self.kind}({', '.join(str(v) for v in ps.values())})"


@dataclass(frozen=True)
class TorsionAlpha(Constraint):
    """The first character is a root of unity of order dividing m."""

    m: int

    def params(self):
        return {"m": self.m}


@dataclass(frozen=True)
class TorsionLambda(Constraint):
    """The second character is a root of unity of order dividing n."""

    n: int

    def params(self):
        return {"n": self.n}


@dataclass(frozen=True)
class TorsionLink(Constraint):
    """Exponent relation alpha^(e*g_m) * lambda^(g_n) = 1 tying the two
    torsion characters together."""

    e: int
    g_m: int
    g_n: int

    def params(self):
        return {"e": self.e, "g_m": self.g_m, "g_n": self.g_n}


@dataclass(frozen=True)
class MonomialTorsion(Constraint):
    """The monomial alpha^m * lambda^n equals 1."""

    m: int
    n: int

    def params(self):
        return {"m": self.m, "n": self.n}


@dataclass(frozen=True)
class DeltaConstAlpha(Constraint):
    """The first character has derivative zero."""


@dataclass(frozen=True)
class DeltaConstLambda(Constraint):
    """The second character has derivative zero."""


@dataclass(frozen=True)
class DeltaConstMonomial(Constraint):
    """The monomial alpha^m * lambda^n has derivative zero."""

    m: int
    n: int

    def params(self):
        return {"m": self.m, "n": self.n}


@dataclass(frozen=True)
class UnipotentFull(Constraint):
    """The unipotent coordinate ranges over the whole additive group."""


@dataclass(frozen=True)
class UnipotentTrivial(Constraint):
    """The unipotent coordinate vanishes identically."""


@dataclass(frozen=True)
class UnipotentEmbedding(Constraint):
    """The unipotent coordinate is determined by the diagonal one through
    a linear differential operator: beta = alpha * L(delta(alpha)/alpha)."""

    op: "LinearDeltaOp"

    def params(self):
        return {"coeffs": [str(c) for c in self.op.coeffs]}

    def __str__(self):
        return f"UnipotentEmbedding({self.op})"


@dataclass(frozen=True)
class DetTorsionDihedral(Constraint):
    """Dihedral case: the determinant character is torsion of order m; the
    parity case records how the flip part sits over the torus part."""

    m: int
    parity: str

    def params(self):
        return {"m": self.m, "parity": self.parity}


@dataclass(frozen=True)
class DeltaConstDet(Constraint):
    """The determinant character has derivative zero."""


@dataclass(frozen=True)
class DetTorsion(Constraint):
    """The determinant character is a root of unity of order m."""

    m: int

    def params(self):
        return {"m": self.m}


@dataclass(frozen=True)
class FullGroup(Constraint):
    """No constraint beyond the shape itself."""


# -- supporting types ----------------------------------------------------------


@dataclass(frozen=True)
class LinearDeltaOp:
    """Linear differential operator sum_i c_i * delta^i with rational
    constant coefficients; coeffs[i] multiplies the i-th derivative and the
    leading coefficient is nonzero (the zero operator is rejected)."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        if not cs:
            raise ValueError("the zero operator is never emitted")
        object.__setattr__(self, "coeffs", cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def apply(self, f) -> RF:
        """Evaluate the operator on a rational function."""
        term = RF.of(f)
        total = RF.zero()
        for c in self.coeffs:
            if c:
                total = total + RF.of(c) * term
            term = term.derivative()
        return total

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.coeffs) + "]"


@dataclass(frozen=True)
class IterateData:
    """Step-t power of the triangular system sigma(Y) = [[u, 1], [0, v]] Y.

    u_t, v_t, f_t obey u_{n+1} = sigma^n(u) u_n, v_{n+1} = sigma^n(v) v_n,
    f_{n+1} = sigma^n(u) f_n + v_n with u_1 = u, v_1 = v, f_1 = 1.  The
    last field is the coefficient W of the first-order equation
    sigma^t(w) = W * w satisfied by the off-diagonal ratio."""

    t: int
    u_t: RF
    v_t: RF
    f_t: RF
    w_t_equation_coefficient: RF


@dataclass(frozen=True)
class GroupDescriptor:
    """Shape + constraints presentation of a classified group."""

    shape: Shape
    constraints: tuple
    components: int
    provenance: tuple = ()

    def has(self, kind) -> bool:
        return any(isinstance(c, kind) for c in self.constraints)

    def get(self, kind):
        for c in self.constraints:
            if isinstance(c, kind):
                return c
        return None

    def __str__(self):
        cons = ", ".join(str(c) for c in self.constraints)
        return f"{self.shape.value}[{cons}] (components: {self.components})"


@dataclass(frozen=True)
class Classification:
    """Full classification context: the descriptor pair plus every witness
    the relation emitter needs to reconstruct explicit certificates."""

    H: GroupDescriptor
    G: GroupDescriptor
    branch: str
    a: RF | None = None
    b: RF | None = None
    u: RF | None = None
    v: RF | None = None
    r: RF | None = None
    iterates: IterateData | None = None
    w_witness: RF | None = None
    embedding_g: RF | None = None
    scalar_certificates: tuple = ()


# -- shared analysis helpers ---------------------------------------------------


def _orbit_sort_key(orbit):
    return (orbit.rep.degree, _poly_key(orbit.rep), orbit.residue)


def _require_rational(f: RF, what: str) -> None:
    """Non-constant certificates must live over Q: the pole-orbit analysis
    factors numerators and denominators, which is implemented for rational
    coefficients only.  Constants over a number field pass through, since
    they never reach the factoring code."""
    if f.is_constant():
        return
    for p in (f.num, f.den):
        for c in p.coeffs:
            if isinstance(c, AlgNum) and not c.is_rational:
                raise UnsupportedField(
                    f"{what} has non-constant algebraic coefficients; only "
                    "constant certificates over a number field are supported"
                )


def _multiplicative_data(f: RF):
    """(c, witness) for f = c * sigma(witness)/witness; the caller already
    knows the orbit sums vanish, so failure is a bug."""
    res = solve_multiplicative(f)
    if res is NotEquivalent:
        raise InternalInconsistency(
            "a function with vanishing orbit sums failed the multiplicative solve"
        )
    return res


def _diagonal_constraints(u: RF, v: RF):
    """Constraints on a pair of first-order certificates (characters).

    Returns (constraints, components, tags) where the constraint list may
    be empty (the caller decides whether an empty list means FullGroup).
    The decision ladder: a common integer relation between the residue
    rows, then the constant parts' torsion/lattice structure, then honest
    per-character summability tests for the differential constraints.
    """
    if u.is_zero() or v.is_zero():
        raise ZeroInput("diagonal certificates must be nonzero")
    _require_rational(u, "the first certificate")
    _require_rational(v, "the second certificate")

    sums_u = log_derivative_orbit_sums(u)
    sums_v = log_derivative_orbit_sums(v)
    orbits = sorted(set(sums_u) | set(sums_v), key=_orbit_sort_key)
    rows = [(sums_u.get(o, 0), sums_v.get(o, 0)) for o in orbits]
    relation = integer_residue_relation(rows)

    if relation is NoRelation:
        # The residue rows span rank two: no monomial in the characters can
        # be pole-free, which rules out torsion, monomial, and differential
        # constraints alike.
        return [], 1, ["char-pair-free"]

    constraints: list = []
    tags: list = []

    if relation is AllRelations:
        # Both characters are multiplicatively equivalent to constants.
        c_u, _ = _multiplicative_data(u)
        c_v, _ = _multiplicative_data(v)
        lattice = multiplicative_relation_lattice(c_u, c_v)
        components = 1
        if len(lattice) == 2:
            m = is_root_of_unity(c_u)
            n = is_root_of_unity(c_v)
            if m is NotRootOfUnity or n is NotRootOfUnity:
                raise InternalInconsistency(
                    "a rank-two relation lattice requires both constants torsion"
                )
            e, g_m, g_n = torsion_link(c_u, m, c_v, n)
            constraints += [TorsionAlpha(m), TorsionLambda(n), TorsionLink(e, g_m, g_n)]
            tags.append("char-pair-torsion")
            components = math.lcm(m, n)
        elif len(lattice) == 1:
            m, n = lattice[0]
            constraints.append(MonomialTorsion(m, n))
            tags.append("char-monomial-torsion")
            components = math.gcd(abs(m), abs(n))
        # Both differential constraints hold exactly: a character that is a
        # constant times a shift quotient has summable log derivative.
        constraints += [DeltaConstAlpha(), DeltaConstLambda()]
        tags += ["char-alpha-delta-constant", "char-lambda-delta-constant"]
        return constraints, components, tags

    # A unique primitive relation (m0, n0) between the residue rows.
    m0, n0 = relation
    monomial = (u**m0) * (v**n0)
    c, _ = _multiplicative_data(monomial)
    ell = is_root_of_unity(c)
    components = 1
    if ell is not NotRootOfUnity:
        m, n = ell * m0, ell * n0
        constraints.append(MonomialTorsion(m, n))
        tags.append("char-monomial-torsion")
        components = math.gcd(abs(m), abs(n))
    if is_summable(u.log_derivative()):
        constraints.append(DeltaConstAlpha())
        tags.append("char-alpha-delta-constant")
    if is_summable(v.log_derivative()):
        constraints.append(DeltaConstLambda())
        tags.append("char-lambda-delta-constant")
    if ell is NotRootOfUnity and m0 and n0:
        constraints.append(DeltaConstMonomial(m0, n0))
        tags.append("char-monomial-delta-constant")
    return constraints, components, tags


# -- public branch classifiers -------------------------------------------------


def classify_diagonalizable(u, v) -> GroupDescriptor:
    """Descriptor of the refined group when the solution space splits into
    two character lines with certificates u and v."""
    u, v = RF.of(u), RF.of(v)
    constraints, components, tags = _diagonal_constraints(u, v)
    if not constraints:
        constraints = [FullGroup()]
    return GroupDescriptor(
        Shape.Diagonalizable, tuple(constraints), components, tuple(tags)
    )


def _classify_scalar(certificate: RF) -> GroupDescriptor:
    """Descriptor when every solution is hypergeometric with a common
    character class (three or more first-order certificates)."""
    _require_rational(certificate, "the scalar certificate")
    sm = solve_multiplicative(certificate)
    if sm is NotEquivalent:
        return GroupDescriptor(
            Shape.ScalarOrTrivial, (FullGroup(),), 1, ("scalar-free",)
        )
    c, _ = sm
    m = is_root_of_unity(c)
    if m is not NotRootOfUnity:
        return GroupDescriptor(
            Shape.ScalarOrTrivial,
            (TorsionAlpha(m), DeltaConstAlpha()),
            m,
            ("scalar-torsion",),
        )
    return GroupDescriptor(
        Shape.ScalarOrTrivial, (DeltaConstAlpha(),), 1, ("scalar-delta-constant",)
    )


def reduce_to_connected(u, v, t: int) -> IterateData:
    """Iterate the triangular system to its step-t power.

    Restricting attention to the subgroup fixed by the t-th shift power
    makes the diagonal part connected; the returned data feeds the
    unipotent analysis at step t."""
    u, v = RF.of(u), RF.of(v)
    if t < 1:
        raise ValueError("the component count must be a positive integer")
    u_t, v_t, f_t = u, v, RF.one()
    for n in range(1, t):
        shifted_u = u.shift(n)
        f_t = shifted_u * f_t + v_t
        u_t = shifted_u * u_t
        v_t = v.shift(n) * v_t
    w_coeff = f_t.shift(t) * v_t / (u_t.shift(t) * f_t)
    return IterateData(t, u_t, v_t, f_t, w_coeff)


def _scalar_quotient(num: Poly, den: Poly):
    """Rational constant c with num == c * den, or None."""
    if num.is_zero():
        return Fraction(0)
    if den.is_zero() or num.degree != den.degree:
        return None
    c = num.lc / den.lc
    if isinstance(c, AlgNum):
        if not c.is_rational:
            return None
        c = c.as_rational()
    if den * c != num:
        return None
    return c


def solve_L_coefficients(u_t, w_t, step: int = 1):
    """Constant coefficients embedding the unipotent coordinate.

    Finds rational constants c_i such that w_t - sum_i c_i delta^i(q) is
    step-summable, where q = delta(u_t)/u_t.  Working down from the highest
    pole multiplicity of w_t, each level determines one c_i orbit by orbit;
    any inconsistency (an orbit carried by w_t but not by q, an entry that
    is not a scalar multiple, a non-rational or conflicting scalar) means
    no such operator exists.  Returns (LinearDeltaOp, g) with
    sigma^step(g) - g = w_t - L(q), or NoEmbedding.
    """
    u_t, w_t = RF.of(u_t), RF.of(w_t)
    if step < 1:
        raise ValueError("step must be a positive integer")
    w_table = discrete_residues(w_t, step)
    if w_table.is_empty():
        raise InternalInconsistency(
            "a summable unipotent witness would need the zero operator, "
            "which is never emitted"
        )
    top = max(w_table.max_level(o) for o in w_table.orbits())
    derivatives = []
    q = u_t.log_derivative()
    for _ in range(top):
        derivatives.append(q)
        q = q.derivative()

    coeffs = [Fraction(0)] * top
    residual = w_t
    for i in range(top - 1, -1, -1):
        level = i + 1
        residual_table = discrete_residues(residual, step)
        derivative_table = discrete_residues(derivatives[i], step)
        orbits = sorted(
            set(residual_table.orbits()) | set(derivative_table.orbits()),
            key=_orbit_sort_key,
        )
        c_i = None
        for orbit in orbits:
            target = residual_table.level(orbit, level)
            source = derivative_table.level(orbit, level)
            if source.is_zero():
                if target.is_zero():
                    continue
                return NoEmbedding
            candidate = _scalar_quotient(target, source)
            if candidate is None:
                return NoEmbedding
            if c_i is None:
                c_i = candidate
            elif c_i != candidate:
                return NoEmbedding
        if c_i:
            coeffs[i] = c_i
            residual = residual - RF.of(c_i) * derivatives[i]

    if not coeffs[-1]:
        raise InternalInconsistency(
            "the highest-multiplicity level must force a nonzero leading coefficient"
        )
    g = solve_telescoper(residual, step)
    if g is NoSolution:
        raise InternalInconsistency(
            "the residue elimination left a non-summable remainder"
        )
    return LinearDeltaOp(tuple(coeffs)), g


def _reducible_analysis(u: RF, b: RF):
    """(descriptor, iterates, w_witness, embedding_g) for the one-certificate
    branch: reductive constraints from the diagonal pair (u, b/u), then the
    unipotent determination at step t."""
    u, b = RF.of(u), RF.of(b)
    if u.is_zero() or b.is_zero():
        raise ZeroInput("the certificate and the determinant coefficient must be nonzero")
    v = b / u
    constraints, components, tags = _diagonal_constraints(u, v)
    data = reduce_to_connected(u, v, components)
    step = data.t
    w_witness = None
    embedding_g = None

    shifted = solve_multiplicative(data.u_t, step=step)
    if shifted is not NotEquivalent:
        # The diagonal certificate is a constant times a step-t shift
        # quotient; the unipotent coordinate is unconstrained either way.
        c, _ = shifted
        unipotent: Constraint = UnipotentFull()
        tags.append("unip-shift-quotient" if constant_is_one(c) else "unip-logderiv-summable")
    else:
        w_solve = solve_multiplicative(data.w_t_equation_coefficient, step=step)
        if w_solve is NotEquivalent or not constant_is_one(w_solve[0]):
            # The off-diagonal ratio has no rational incarnation, so no
            # differential relation can pin the unipotent coordinate.
            unipotent = UnipotentFull()
            tags.append("unip-w-irrational")
        else:
            w_witness = w_solve[1]
            embedded = solve_L_coefficients(data.u_t, w_witness, step=step)
            if embedded is NoEmbedding:
                unipotent = UnipotentFull()
                tags.append("unip-no-embedding")
            else:
                op, embedding_g = embedded
                unipotent = UnipotentEmbedding(op)
                tags.append("unip-embedding")

    descriptor = GroupDescriptor(
        Shape.TriangularReducible,
        tuple(constraints) + (unipotent,),
        components,
        tuple(tags),
    )
    return descriptor, data, w_witness, embedding_g


def classify_reducible(u, b) -> GroupDescriptor:
    """Descriptor of the refined group when exactly one first-order
    certificate u exists; b is the constant-term coefficient, so the second
    diagonal entry is b/u."""
    descriptor, _, _, _ = _reducible_analysis(RF.of(u), RF.of(b))
    return descriptor


def classify_imprimitive(r) -> GroupDescriptor:
    """Descriptor when the solutions interlace two sublattices swapped by
    the shift; r is the coefficient of the reduced first-order equation
    satisfied by the determinant-like coordinate."""
    r = RF.of(r)
    if r.is_zero():
        raise ZeroInput("the interlacing coefficient must be nonzero")
    _require_rational(r, "the interlacing coefficient")
    if is_summable(r.log_derivative()):
        c = r.value_at_infinity()
        if isinstance(c, Marker):
            raise InternalInconsistency(
                "a summable log derivative forces a finite nonzero value at infinity"
            )
        m = is_root_of_unity(c)
        if m is not NotRootOfUnity:
            if m % 2 == 1:
                parity = "a"
            elif m % 4 == 0:
                parity = "b"
            else:
                parity = "c"
            return GroupDescriptor(
                Shape.ImprimitiveDihedral,
                (DetTorsionDihedral(m, parity),),
                2 * m,
                ("det-torsion-dihedral",),
            )
        return GroupDescriptor(
            Shape.ImprimitiveDihedral, (DeltaConstDet(),), 2, ("det-delta-constant",)
        )
    return GroupDescriptor(
        Shape.ImprimitiveDihedral, (FullGroup(),), 2, ("det-free",)
    )


def classify_large(b) -> GroupDescriptor:
    """Descriptor when the shift group already contains the full special
    linear group; only the determinant character can carry constraints,
    and b is its first-order certificate."""
    b = RF.of(b)
    if b.is_zero():
        raise ZeroInput("the determinant coefficient must be nonzero")
    _require_rational(b, "the determinant coefficient")
    sm = solve_multiplicative(b)
    if sm is NotEquivalent:
        return GroupDescriptor(Shape.Sl2Extension, (FullGroup(),), 1, ("det-free",))
    c, _ = sm
    m = is_root_of_unity(c)
    if m is not NotRootOfUnity:
        return GroupDescriptor(
            Shape.Sl2Extension, (DetTorsion(m),), m, ("det-torsion",)
        )
    return GroupDescriptor(
        Shape.Sl2Extension, (DeltaConstDet(),), 1, ("det-delta-constant",)
    )


# -- erasure and the top-level dispatch ---------------------------------------

_SHIFT_ONLY_KINDS = (
    TorsionAlpha,
    TorsionLambda,
    TorsionLink,
    MonomialTorsion,
    UnipotentFull,
    UnipotentTrivial,
    DetTorsionDihedral,
    DetTorsion,
    FullGroup,
)


def erase_delta(descriptor: GroupDescriptor) -> GroupDescriptor:
    """Project a refined descriptor onto its shift-only part.

    Differential constraints are dropped; an embedded unipotent coordinate
    relaxes to the full additive group (the embedding is an analytic
    relation invisible to the shift structure); an emptied constraint list
    means the shape itself is the whole group."""
    kept: list = []
    for constraint in descriptor.constraints:
        if isinstance(constraint, UnipotentEmbedding):
            replacement: Constraint = UnipotentFull()
            if replacement not in kept:
                kept.append(replacement)
        elif isinstance(constraint, _SHIFT_ONLY_KINDS):
            if constraint not in kept:
                kept.append(constraint)
    if not kept:
        kept = [FullGroup()]
    return GroupDescriptor(
        descriptor.shape, tuple(kept), descriptor.components, descriptor.provenance
    )


def classify_full(a, b, max_degree: int | None = None, extra_field=None) -> Classification:
    """Classify sigma^2(y) + a*sigma(y) + b*y = 0 and keep every witness.

    Dispatches on the number of first-order certificates: two distinct ones
    split the space (diagonalizable), three or more collapse it to a common
    character (scalar), exactly one forces a triangular presentation, and
    none leads to the interlacing or large cases depending on whether the
    step-2 certificate equation is solvable.  Raises Inconclusive whenever
    a branch decision would rest on a "no solution" claim that the solver
    could not certify within the supported constant fields.
    """
    a, b = RF.of(a), RF.of(b)
    if b.is_zero():
        raise ZeroInput("the coefficient of y(x) must be nonzero")
    cap = DEFAULT_DEGREE_CAP if max_degree is None else max_degree

    first = solve_first_riccati(a, b, 1, cap, extra_field)
    incomplete = first.completeness is Completeness.PossiblyIncomplete

    if first.cardinality is Cardinality.ThreeOrMore:
        certificates = tuple(first.solutions)
        G = _classify_scalar(certificates[0])
        return _finish(
            "scalar",
            a,
            b,
            G,
            u=certificates[0],
            scalar_certificates=certificates,
        )

    if first.cardinality is Cardinality.Two:
        if incomplete:
            raise Inconclusive(
                "two first-order certificates were found, but the search was "
                "cut short; a larger family cannot be excluded"
            )
        u, v = first.solutions[0], first.solutions[1]
        G = classify_diagonalizable(u, v)
        return _finish("diagonalizable", a, b, G, u=u, v=v)

    if first.cardinality is Cardinality.One:
        if incomplete:
            raise Inconclusive(
                "one first-order certificate was found, but the search was "
                "cut short; a second certificate cannot be excluded"
            )
        u = first.solutions[0]
        G, iterates, w_witness, embedding_g = _reducible_analysis(u, b)
        return _finish(
            "reducible",
            a,
            b,
            G,
            u=u,
            v=b / u,
            iterates=iterates,
            w_witness=w_witness,
            embedding_g=embedding_g,
        )

    # No first-order certificate.
    if incomplete:
        raise Inconclusive(
            "no first-order certificate was found, but the search was cut "
            "short; the branch decision needs a certified empty answer"
        )
    if a.is_zero():
        r = b
        G = classify_imprimitive(r)
        return _finish("imprimitive", a, b, G, r=r)

    second = solve_second_riccati(a, b, cap, extra_field)
    if second.cardinality is Cardinality.Zero:
        if second.completeness is Completeness.PossiblyIncomplete:
            raise Inconclusive(
                "the step-2 certificate search was cut short; the large "
                "branch needs a certified empty answer"
            )
        G = classify_large(b)
        return _finish("large", a, b, G)

    # A step-2 certificate exists; incompleteness is harmless because the
    # branch decision only needs existence.
    e = second.solutions[0]
    r = interlacing_coefficient(a, b, e)
    G = classify_imprimitive(r)
    return _finish("imprimitive", a, b, G, r=r)


def _finish(branch: str, a: RF, b: RF, G: GroupDescriptor, **extras) -> Classification:
    H = erase_delta(G)
    return Classification(H=H, G=G, branch=branch, a=a, b=b, **extras)


def classify(a, b, max_degree: int | None = None, extra_field=None):
    """(H, G) descriptor pair for sigma^2(y) + a*sigma(y) + b*y = 0."""
    result = classify_full(a, b, max_degree=max_degree, extra_field=extra_field)
    return result.H, result.G
