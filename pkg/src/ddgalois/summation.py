"""Indefinite summation machinery for the shift x -> x + 1.

Everything here reduces questions about sigma^t(g) - g = f (additive) and
c * sigma^t(f)/f = r (multiplicative) to bookkeeping on shift-orbits of the
monic irreducible factors of denominators. The per-orbit obstruction tables
double as the discrete-residue data consumed by the classifier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .factor import poly_factor
from .markers import (
    AllRelations,
    Empty,
    NoRelation,
    NoSolution,
    ZeroInput,
)
from .polys import Poly
from .ratfunc import RationalFunction as RF


def _orbit_position(p: Poly) -> Fraction:
    """Mean of the roots of a monic p; shifts by k move it by k."""
    n = p.degree
    if n <= 0:
        raise ValueError("orbit position needs a nonconstant polynomial")
    c = p.coeff(n - 1)
    if not isinstance(c, Fraction):
        c = c.as_rational()
    return Fraction(-c, n)


def orbit_data(p: Poly):
    """(representative, k) with p(x) = rep(x - k) and rep's mean root in [0, 1)."""
    mu = _orbit_position(p)
    k = math.floor(mu)
    return p.shift(k), k


def shift_equivalent(p: Poly, q: Poly):
    """Integer k with q(x) = p(x + k), or None."""
    if p.degree != q.degree or p.degree < 1:
        return None
    if p.lc != q.lc:
        return None
    diff = _orbit_position(p) - _orbit_position(q)
    if diff.denominator != 1:
        return None
    k = int(diff)
    return k if p.shift(k) == q else None


def dispersion(p: Poly, q: Poly) -> tuple:
    """All h >= 0 such that gcd(p(x), q(x + h)) is nonconstant, sorted."""
    if p.is_zero() or q.is_zero() or p.is_constant() or q.is_constant():
        return ()
    out = set()
    for a, _ in poly_factor(p).factors:
        for b, _ in poly_factor(q).factors:
            k = shift_equivalent(b, a)
            if k is not None and k >= 0:
                out.add(k)
    return tuple(sorted(out))


@dataclass(frozen=True)
class OrbitClass:
    """A shift-orbit of monic irreducibles, refined mod the step t."""

    rep: Poly
    residue: int
    step: int

    def member(self, k: int) -> Poly:
        return self.rep.shift(-k)

    def __repr__(self):
        return f"OrbitClass({self.rep}, {self.residue} mod {self.step})"


class ResidueTable:
    """Obstruction data for sigma^t-summability of a rational function.

    entries[orbit][j] is a polynomial of degree < deg(orbit.rep); it is the
    sum over the factors p = rep(x - k) in the orbit class of the order-j
    partial-fraction numerators, transported to the representative's frame.
    f is sigma^t-summable if and only if the table is empty.
    """

    def __init__(self, step: int):
        self.step = step
        self.entries: dict = {}
        self._terms: dict = {}

    def _bump(self, orbit: OrbitClass, j: int, numerator: Poly, k: int):
        level = self.entries.setdefault(orbit, {})
        level[j] = level.get(j, Poly.zero()) + numerator
        self._terms.setdefault(orbit, []).append((k, j, numerator))

    def _prune(self):
        for orbit in list(self.entries):
            level = self.entries[orbit]
            for j in list(level):
                if level[j].is_zero():
                    del level[j]
            if not level:
                del self.entries[orbit]

    def is_empty(self) -> bool:
        return not self.entries

    def orbits(self):
        return sorted(self.entries, key=lambda o: (o.rep.degree, _poly_key(o.rep), o.residue))

    def level(self, orbit: OrbitClass, j: int) -> Poly:
        return self.entries.get(orbit, {}).get(j, Poly.zero())

    def max_level(self, orbit: OrbitClass) -> int:
        return max(self.entries.get(orbit, {0: None}))


def _poly_key(p: Poly):
    return tuple(str(c) for c in p.coeffs)


def discrete_residues(f: RF, step: int = 1) -> ResidueTable:
    """Residue table of f with respect to sigma^step-summation."""
    if step < 1:
        raise ValueError("step must be a positive integer")
    table = ResidueTable(step)
    _, terms = f.partial_fractions()
    for p, j, n in terms:
        rep, k = orbit_data(p)
        orbit = OrbitClass(rep, k % step, step)
        table._bump(orbit, j, n.shift(k), k)
    table._prune()
    return table


def is_summable(f: RF, step: int = 1) -> bool:
    """Whether f = sigma^step(g) - g for some rational g."""
    if f.is_zero():
        return True
    return discrete_residues(f, step).is_empty()


def _poly_telescope(p: Poly, step: int) -> Poly:
    """Q with Q(x + step) - Q(x) = p, constant term zero."""
    if p.is_zero():
        return Poly.zero()
    n = p.degree
    # sigma^t Q - Q drops the degree by exactly one, so deg Q = n + 1;
    # solve from the top coefficient down.
    coeffs = [Fraction(0)] * (n + 2)
    remaining = p
    for d in range(n + 1, 0, -1):
        target = remaining.coeff(d - 1)
        basis = Poly([0] * d + [1])
        delta = basis.shift(step) - basis
        lead = delta.coeff(d - 1)
        c = target / lead
        coeffs[d] = c
        remaining = remaining - delta * c
    if not remaining.is_zero():
        raise ArithmeticError("polynomial telescoping did not terminate")
    return Poly(tuple(coeffs))


def solve_telescoper(f: RF, step: int = 1):
    """g with g(x + step) - g(x) = f(x), or NoSolution.

    The solution is normalized so that its polynomial part has zero
    constant term; solutions differ by constants.
    """
    f = RF.of(f)
    if f.is_zero():
        return RF.zero()
    polypart, terms = f.partial_fractions()
    if not discrete_residues(f, step).is_empty():
        return NoSolution
    g = RF.of(_poly_telescope(polypart, step))
    groups: dict = {}
    for p, j, n in terms:
        rep, k = orbit_data(p)
        orbit = OrbitClass(rep, k % step, step)
        groups.setdefault((orbit, j), []).append((k, n))
    for (orbit, j), members in sorted(
        groups.items(), key=lambda it: (_poly_key(it[0][0].rep), it[0][0].residue, it[0][1])
    ):
        c = orbit.residue
        base = orbit.rep.shift(-c)
        for k, n in members:
            m = (k - c) // step
            rho = RF(n.shift(k - c), base**j)
            if m > 0:
                for ell in range(1, m + 1):
                    g = g - rho.shift(-ell * step)
            elif m < 0:
                for ell in range(0, -m):
                    g = g + rho.shift(ell * step)
    return g


def solve_multiplicative(r: RF, step: int = 1):
    """(c, f) with r = c * f(x + step)/f(x) and c constant, or None.

    The constant is pinned by evaluating at infinity, where the ratio of
    shifts tends to 1. Constants r short-circuit: (r, 1).
    """
    from .markers import InternalInconsistency, NotEquivalent

    r = RF.of(r)
    if r.is_zero():
        raise ZeroInput("multiplicative problem for zero")
    if r.is_constant():
        return r.constant_value(), RF.one()
    orders: dict = {}
    for poly, sgn in ((r.num, 1), (r.den, -1)):
        if poly.is_constant():
            continue
        for p, e in poly_factor(poly).factors:
            rep, k = orbit_data(p)
            orbit = OrbitClass(rep, k % step, step)
            orders.setdefault(orbit, []).append((k, sgn * e))
    f = RF.one()
    for orbit, members in sorted(
        orders.items(), key=lambda it: (_poly_key(it[0].rep), it[0].residue)
    ):
        if sum(e for _, e in members) != 0:
            return NotEquivalent
        c = orbit.residue
        base = orbit.rep.shift(-c)
        for k, e in members:
            m = (k - c) // step
            if m > 0:
                for ell in range(1, m + 1):
                    f = f * RF(base.shift(-ell * step), Poly.one()) ** (-e)
            elif m < 0:
                for ell in range(0, -m):
                    f = f * RF(base.shift(ell * step), Poly.one()) ** e
    ratio = r / (f.shift(step) / f)
    if not ratio.is_constant():
        raise InternalInconsistency("multiplicative residual failed to be constant")
    return ratio.constant_value(), f


def log_derivative_orbit_sums(r: RF, step: int = 1) -> dict:
    """OrbitClass -> total zero/pole order of r along that class."""
    sums: dict = {}
    for poly, sgn in ((r.num, 1), (r.den, -1)):
        if poly.is_constant():
            continue
        for p, e in poly_factor(poly).factors:
            rep, k = orbit_data(p)
            orbit = OrbitClass(rep, k % step, step)
            sums[orbit] = sums.get(orbit, 0) + sgn * e
    return {o: s for o, s in sums.items() if s}


def integer_residue_relation(rows):
    """Primitive (m, n) != (0, 0) with m*row[0] + n*row[1] = 0 for all rows.

    Returns AllRelations when every row vanishes, NoRelation when the rows
    span rank two, and the sign-canonical primitive pair otherwise.
    """
    nz = [r for r in rows if r != (0, 0)]
    if not nz:
        return AllRelations
    a, b = nz[0]
    for c, d in nz[1:]:
        if a * d - b * c != 0:
            return NoRelation
    g = math.gcd(abs(a), abs(b))
    m, n = -b // g, a // g
    if m < 0 or (m == 0 and n < 0):
        m, n = -m, -n
    return (m, n)


# -- linear difference equations with polynomial solutions -------------------


@dataclass(frozen=True)
class AffineSolutionSet:
    """particular + span(basis); basis elements are linearly independent."""

    particular: RF
    basis: tuple

    def is_unique(self) -> bool:
        return not self.basis


def _degree_bound(coeffs, rhs: Poly, cap: int):
    """Abramov-style bound on deg z for sum coeffs[i] * z(x+i) = rhs.

    Uses the difference-operator expansion: with M_k = sum_i C(i, k) q_i,
    the top coefficient of the image of x^n is phi(n) = sum over the
    dominant k of lc(M_k) * falling_factorial(n, k).
    """
    r = len(coeffs) - 1
    mk = []
    for k in range(r + 1):
        m = Poly.zero()
        for i in range(k, r + 1):
            m = m + coeffs[i] * math.comb(i, k)
        mk.append(m)
    b = max((m.degree - k for k, m in enumerate(mk) if not m.is_zero()), default=None)
    if b is None:
        return None
    dominant = [k for k, m in enumerate(mk) if not m.is_zero() and m.degree - k == b]
    candidates = set()
    if not rhs.is_zero():
        candidates.add(rhs.degree - b)

    def phi(n: int):
        total = Fraction(0)
        for k in dominant:
            ff = 1
            for j in range(k):
                ff *= n - j
            total = total + mk[k].lc * ff
        return total

    # phi is a nonzero polynomial in n of degree max(dominant); its
    # nonnegative integer roots are the only degrees it can miss.
    top = max(dominant)
    if top == 0:
        pass  # phi is a nonzero constant
    else:
        n = 0
        found = 0
        while n <= cap and found <= top:
            if phi(n) == 0:
                candidates.add(n)
                found += 1
            n += 1
    candidates = {c for c in candidates if c >= 0}
    if not candidates:
        return -1
    bound = max(candidates)
    if bound > cap:
        from .markers import DegreeCap

        raise DegreeCap(f"polynomial solution degree bound {bound} exceeds cap {cap}")
    return bound


def polynomial_solutions(coeffs, rhs: Poly, cap: int = 200):
    """All polynomial z with sum coeffs[i] * z(x + i) = rhs.

    coeffs are polynomials indexed by shift; returns AffineSolutionSet or
    Empty. The search degree is bounded by the operator's indicial data,
    clamped to cap.
    """
    coeffs = [c if isinstance(c, Poly) else Poly.const(c) for c in coeffs]
    if isinstance(rhs, RF):
        if not rhs.is_polynomial():
            raise ValueError("polynomial_solutions wants a polynomial right side")
        rhs = rhs.num
    if all(c.is_zero() for c in coeffs):
        raise ZeroInput("all operator coefficients vanish")
    bound = _degree_bound(coeffs, rhs, cap)
    if bound is None or bound < 0:
        if rhs.is_zero():
            return AffineSolutionSet(RF.zero(), ())
        return Empty
    n_unknowns = bound + 1
    # Image degree is bounded by bound + max coefficient degree.
    max_deg = max(c.degree for c in coeffs if not c.is_zero()) + bound
    rows = max(max_deg, rhs.degree) + 1
    matrix = [[Fraction(0)] * n_unknowns for _ in range(rows)]
    for j in range(n_unknowns):
        basis = Poly([0] * j + [1])
        image = Poly.zero()
        for i, c in enumerate(coeffs):
            if not c.is_zero():
                image = image + c * basis.shift(i)
        for d in range(rows):
            matrix[d][j] = image.coeff(d)
    target = [rhs.coeff(d) for d in range(rows)]
    solved = _solve_affine(matrix, target)
    if solved is Empty:
        return Empty
    particular, kernel = solved
    return AffineSolutionSet(
        RF.of(Poly(tuple(particular))),
        tuple(RF.of(Poly(tuple(v))) for v in kernel),
    )


def _solve_affine(matrix, target):
    """Exact Gaussian elimination: (particular, kernel basis) or Empty."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    aug = [list(matrix[i]) + [target[i]] for i in range(rows)]
    pivots = []
    rank = 0
    for col in range(cols):
        pivot = None
        for i in range(rank, rows):
            if aug[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        inv = 1 / aug[rank][col]
        aug[rank] = [v * inv for v in aug[rank]]
        for i in range(rows):
            if i != rank and aug[i][col]:
                factor = aug[i][col]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[rank])]
        pivots.append(col)
        rank += 1
        if rank == rows:
            break
    for i in range(rank, rows):
        if aug[i][cols]:
            return Empty
    particular = [Fraction(0)] * cols
    for i, col in enumerate(pivots):
        particular[col] = aug[i][cols]
    free = [c for c in range(cols) if c not in pivots]
    kernel = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, col in enumerate(pivots):
            v[col] = -aug[i][fc]
        kernel.append(v)
    return particular, kernel


def abramov_rational_solutions(coeffs, rhs, step: int = 1, cap: int = 200):
    """All rational y with sum coeffs[i] * y(x + step*i) = rhs.

    coeffs is a sequence of rational functions indexed by the shift
    multiple; returns AffineSolutionSet or Empty. Steps t > 1 reduce to
    step one through the substitution x = t * xt.
    """
    coeffs = [RF.of(c) for c in coeffs]
    rhs = RF.of(rhs)
    if all(c.is_zero() for c in coeffs):
        raise ZeroInput("all operator coefficients vanish")
    if step < 1:
        raise ValueError("step must be a positive integer")
    if step > 1:
        scaled = [c.scale(step) for c in coeffs]
        solved = abramov_rational_solutions(scaled, rhs.scale(step), 1, cap)
        if solved is Empty:
            return Empty
        back = Fraction(1, step)
        return AffineSolutionSet(
            solved.particular.scale(back),
            tuple(v.scale(back) for v in solved.basis),
        )

    # Clear denominators to polynomial coefficients and right side.
    den = Poly.one()
    for c in coeffs:
        den = _poly_lcm(den, c.den)
    den = _poly_lcm(den, rhs.den)
    p_coeffs = [(c * den).num for c in coeffs]
    p_rhs = (rhs * den).num

    r = len(p_coeffs) - 1
    while r > 0 and p_coeffs[r].is_zero():
        r -= 1
    p_coeffs = p_coeffs[: r + 1]
    low = next(i for i, c in enumerate(p_coeffs) if not c.is_zero())
    if low > 0:
        # Solve for w = y(x + low) and shift back.
        solved = abramov_rational_solutions(
            [RF.of(c) for c in p_coeffs[low:]], RF(p_rhs, Poly.one()), 1, cap
        )
        if solved is Empty:
            return Empty
        return AffineSolutionSet(
            solved.particular.shift(-low), tuple(v.shift(-low) for v in solved.basis)
        )
    if r == 0:
        y = RF(p_rhs, p_coeffs[0])
        return AffineSolutionSet(y, ())

    a = p_coeffs[r].shift(-r)
    b = p_coeffs[0]
    u = Poly.one()
    for j in sorted(dispersion(a, b), reverse=True):
        d = a.shift(j).gcd(b)
        if d.is_constant():
            continue
        a = a // d.shift(-j)
        b = b // d
        for k in range(j + 1):
            u = u * d.shift(-k)

    # Substitute y = z/u and clear the new denominators.
    shifted_u = [u.shift(i) for i in range(r + 1)]
    m = Poly.one()
    for su in shifted_u:
        m = _poly_lcm(m, su)
    q_coeffs = [p_coeffs[i] * (m // shifted_u[i]) for i in range(r + 1)]
    new_rhs = RF(p_rhs, Poly.one()) * m
    scale = Poly.one()
    if not new_rhs.is_polynomial():
        scale = new_rhs.den
        q_coeffs = [q * scale for q in q_coeffs]
        new_rhs = new_rhs * scale
    solved = polynomial_solutions(q_coeffs, new_rhs.num, cap)
    if solved is Empty:
        return Empty
    u_rf = RF.of(u)
    return AffineSolutionSet(
        solved.particular / u_rf, tuple(v / u_rf for v in solved.basis)
    )


def _poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly.zero()
    return ((a * b) // a.gcd(b)).monic()
