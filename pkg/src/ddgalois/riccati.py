"""Rational solutions of first-order quadratic shift equations.

solve_first_riccati finds the u with u * u(x + t) + a*u + b = 0, which are
the ratios of the hypergeometric solutions of the associated second-order
linear equation. The enumeration runs over candidate monic divisor pairs
and leading constants, over Q and over the quadratic fields where the
trailing and leading coefficients acquire new factors; constants may lie
in a quadratic extension even when the divisors do not.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .factor import poly_factor
from .fields import (
    AlgNum,
    algnum_sqrt,
    quadratic_field,
    sqrt_in_field,
    squarefree_part,
)
from .markers import Cardinality, Completeness, UnsupportedField, ZeroInput
from .polys import Poly
from .ratfunc import RationalFunction as RF
from .summation import polynomial_solutions, solve_multiplicative


@dataclass(frozen=True)
class RiccatiSolutionSet:
    solutions: tuple
    cardinality: Cardinality
    completeness: Completeness

    def __iter__(self):
        return iter(self.solutions)


def _demote_rational(f: RF) -> RF:
    """Rewrite AlgNum coefficients that are secretly rational as Fractions."""

    def demote_poly(p: Poly) -> Poly:
        out = []
        changed = False
        for c in p.coeffs:
            if isinstance(c, AlgNum) and c.is_rational:
                out.append(c.as_rational())
                changed = True
            else:
                out.append(c)
        return Poly(tuple(out)) if changed else p

    num, den = demote_poly(f.num), demote_poly(f.den)
    if num is f.num and den is f.den:
        return f
    return RF(num, den)


def _linear_mean(p: Poly):
    """Mean root of a monic factor, as Fraction or AlgNum."""
    n = p.degree
    c = p.coeff(n - 1)
    if isinstance(c, AlgNum):
        return -c / n
    return Fraction(-c, n)


def _shift_offset(p: Poly, q: Poly):
    """Integer k with q(x) = p(x + k), allowing AlgNum coefficients."""
    if p.degree != q.degree or p.degree < 1:
        return None
    diff = _linear_mean(p) - _linear_mean(q)
    if isinstance(diff, AlgNum):
        if not diff.is_rational:
            return None
        diff = diff.as_rational()
    if diff.denominator != 1:
        return None
    k = int(diff)
    return k if p.shift(k) == q else None


def _pair_disjoint_under_shift(afactors, bfactors) -> bool:
    """No h >= 0 with gcd(A(x), B(x + h)) nonconstant, factor-wise."""
    for a, _ in afactors:
        for b, _ in bfactors:
            k = _shift_offset(b, a)
            if k is not None and k >= 0:
                return False
    return True


def _factor_in_field(p: Poly, field):
    """Monic irreducible factors over Q, refined over a quadratic field.

    Returns (factors, may_split_more): Q-quadratics that split over the
    field are replaced by linear pairs; irreducible factors of even degree
    four or more are kept whole, and flagged since they might also split.
    """
    fac = poly_factor(p)
    if field is None:
        return list(fac.factors), False
    d_field = -field.minpoly.coeff(0)  # minpoly is x^2 - D
    out = []
    may_split_more = False
    for q, e in fac.factors:
        if q.degree == 2:
            disc = q.coeff(1) ** 2 - 4 * q.coeff(0)
            prod = disc * d_field
            root = _rational_sqrt(prod)
            if root is not None:
                s = root / d_field  # sqrt(disc) = s * sqrt(D)
                sq = field.gen() * s
                beta = q.coeff(1)
                r1 = (-beta + sq) / 2
                r2 = (-beta - sq) / 2
                out.append((Poly((-r1, field.embed(1))), e))
                out.append((Poly((-r2, field.embed(1))), e))
                continue
        elif q.degree >= 4 and q.degree % 2 == 0:
            may_split_more = True
        out.append((q, e))
    return out, may_split_more


def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _monic_divisors(factors, limit: int = 4096):
    """All monic divisors as factor sublists, smallest degree first."""
    ranges = [range(e + 1) for _, e in factors]
    combos = []
    for exps in itertools.product(*ranges):
        combo = [(p, k) for (p, _), k in zip(factors, exps) if k]
        combos.append(combo)
        if len(combos) > limit:
            raise UnsupportedField("divisor lattice too large to enumerate")
    combos.sort(key=lambda c: (sum(p.degree * k for p, k in c), str(c)))
    return combos


def _expand(combo) -> Poly:
    p = Poly.one()
    for q, k in combo:
        p = p * q**k
    return p


def _balance_constants(t2: Poly, t1: Poly, t0: Poly, field):
    """Nonzero z with e2 z^2 + e1 z + e0 = 0 from the top-degree balance.

    Returns (candidates, dropped) where dropped notes a root outside the
    working field.
    """
    m = max(t2.degree, t1.degree, t0.degree)
    e2 = t2.lc if t2.degree == m else Fraction(0)
    e1 = t1.lc if t1.degree == m else Fraction(0)
    e0 = t0.lc if t0.degree == m else Fraction(0)
    if not e2:
        if not e1:
            return [], False
        z = -e0 / e1
        return ([z] if z else []), False
    disc = e1 * e1 - 4 * e2 * e0
    if isinstance(disc, AlgNum):
        if disc.is_rational:
            disc = disc.as_rational()
        else:
            root = algnum_sqrt(disc)
            if root is None:
                return [], True
            out = [(-e1 + root) / (2 * e2), (-e1 - root) / (2 * e2)]
            return [z for z in out if z], False
    if isinstance(disc, Fraction):
        if field is not None:
            d_field = -field.minpoly.coeff(0)
            prod = disc * d_field
            root = _rational_sqrt(prod)
            if root is not None:
                sq = field.gen() * (root / d_field)
            else:
                r = _rational_sqrt(disc)
                if r is None:
                    return [], True
                sq = field.embed(r)
        else:
            sq = sqrt_in_field(disc)
        out = [(-e1 + sq) / (2 * e2), (-e1 - sq) / (2 * e2)]
        seen = []
        for z in out:
            if z and z not in seen:
                seen.append(z)
        return seen, False
    raise UnsupportedField("unexpected constant type in balance equation")


def solve_first_riccati(
    a, b, step: int = 1, max_degree: int = 30, extra_field=None
) -> RiccatiSolutionSet:
    """All rational u with u(x) * u(x + step) + a*u(x) + b = 0.

    Cardinality ThreeOrMore means the solution set is infinite; Two is
    definitive independently of the field search, while Zero and One carry
    the completeness flag of the enumeration.  extra_field adds a designated
    NumberField to the constant-field search beyond the automatic quadratic
    candidates.
    """
    a = RF.of(a)
    b = RF.of(b)
    if b.is_zero():
        raise ZeroInput("second coefficient must be nonzero")
    if step < 1:
        raise ValueError("step must be a positive integer")
    if step > 1:
        inner = solve_first_riccati(
            a.scale(step), b.scale(step), 1, max_degree, extra_field
        )
        back = Fraction(1, step)
        return RiccatiSolutionSet(
            tuple(u.scale(back) for u in inner.solutions),
            inner.cardinality,
            inner.completeness,
        )

    den = (a.den * b.den) // a.den.gcd(b.den)
    p2 = den
    p1 = (a * den).num
    p0 = (b * den).num

    fields = [None]
    if extra_field is not None:
        fields.append(extra_field)
    seen_discs = set()
    for src in (p0, p2.shift(-1)):
        if src.is_constant():
            continue
        for q, _ in poly_factor(src, max_degree).factors:
            if q.degree != 2:
                continue
            disc = q.coeff(1) ** 2 - 4 * q.coeff(0)
            d = squarefree_part(disc)
            if d != 1 and d not in seen_discs:
                seen_discs.add(d)
                fields.append(quadratic_field(Fraction(d)))

    solutions = []
    incomplete = False
    infinite = False

    for field in fields:
        a_factors, flag_a = _factor_in_field(p0, field)
        b_factors, flag_b = _factor_in_field(p2.shift(-1), field)
        if flag_a or flag_b:
            incomplete = True
        for acombo in _monic_divisors(a_factors):
            for bcombo in _monic_divisors(b_factors):
                if not _pair_disjoint_under_shift(acombo, bcombo):
                    continue
                A = _expand(acombo)
                B = _expand(bcombo)
                t2 = p2 * A * A.shift(1)
                t1 = p1 * A * B.shift(1)
                t0 = p0 * B * B.shift(1)
                zs, dropped = _balance_constants(t2, t1, t0, field)
                if dropped:
                    incomplete = True
                for z in zs:
                    found = polynomial_solutions(
                        [t0, t1 * z, t2 * (z * z)], Poly.zero(), cap=100
                    )
                    basis = found.basis
                    if len(basis) >= 2:
                        infinite = True
                    for c_poly in basis[:2]:
                        u = RF.of(z) * RF(A, B) * (c_poly.shift(1) / c_poly)
                        u = _demote_rational(u)
                        if u not in solutions:
                            solutions.append(u)

    if not infinite and len(solutions) >= 3:
        infinite = True
    if not infinite and len(solutions) == 2:
        if infinite_certificate_family(solutions[0], solutions[1]):
            infinite = True

    if infinite:
        card = Cardinality.ThreeOrMore
    elif len(solutions) == 2:
        card = Cardinality.Two
    elif len(solutions) == 1:
        card = Cardinality.One
    else:
        card = Cardinality.Zero
    if card in (Cardinality.Two, Cardinality.ThreeOrMore):
        completeness = Completeness.Complete
    else:
        completeness = (
            Completeness.PossiblyIncomplete if incomplete else Completeness.Complete
        )
    return RiccatiSolutionSet(tuple(solutions), card, completeness)


def _constant_is_one(c) -> bool:
    if isinstance(c, AlgNum):
        return c.is_rational and c.as_rational() == 1
    return c == 1


def infinite_certificate_family(u, v) -> bool:
    """Whether two distinct certificates span infinitely many.

    True iff v/u = sigma(f)/f for a rational f with constant part 1; the
    whole family u * sigma(g)/g with g = c1 + c2*f is then made of
    certificates, so the solution set is infinite.  Symmetric in u and v
    since f inverts.
    """
    u = RF.of(u)
    v = RF.of(v)
    ratio = v / u
    if ratio.is_constant():
        # sigma(f)/f is constant only for constant f, where it is 1;
        # distinct certificates have ratio != 1.
        return False
    from .markers import NotEquivalent

    eq = solve_multiplicative(ratio, step=1)
    return eq is not NotEquivalent and _constant_is_one(eq[0])


def second_riccati_coefficients(a: RF, b: RF):
    """The step-two equation e * e(x+2) + P*e + Q = 0 detecting imprimitivity."""
    if a.is_zero():
        raise ZeroInput("second-level test needs a nonzero middle coefficient")
    p = (b / a).shift(2) - a.shift(1) + b.shift(1) / a
    q = b.shift(1) * b / (a * a)
    return p, q


def solve_second_riccati(a, b, max_degree: int = 30, extra_field=None) -> RiccatiSolutionSet:
    a = RF.of(a)
    b = RF.of(b)
    p, q = second_riccati_coefficients(a, b)
    return solve_first_riccati(p, q, step=2, max_degree=max_degree, extra_field=extra_field)


def interlacing_coefficient(a: RF, b: RF, e: RF) -> RF:
    """The r with sigma(Y) = ((0, 1), (-r, 0)) Y equivalent to the input system.

    Any solution e of the step-two equation gives one; a = 0 gives r = b
    directly.
    """
    a = RF.of(a)
    b = RF.of(b)
    if a.is_zero():
        return b
    e = RF.of(e)
    return -a * a.shift(1) + b.shift(1) + a * (b / a).shift(2) + a * e.shift(2)
