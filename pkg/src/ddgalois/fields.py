"""Real or complex algebraic numbers of small degree over Q.

Constants produced by the summation and classification routines live in
number fields of the form Q(s) with s a root of a monic irreducible
polynomial over Q. Degree two is the workhorse (conjugate pairs coming
from quadratic factors of leading and trailing coefficients); anything
the multiplicative-lattice machinery cannot certify raises
UnsupportedField rather than guessing.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .factor import integer_roots, poly_factor
from .markers import NotRootOfUnity, UnsupportedField
from .polys import Poly

Rational = Union[int, Fraction]


def _euler_phi(n: int) -> int:
    result = n
    for p in _prime_factors(n):
        result -= result // p
    return result


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple:
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def factor_rational(q: Fraction) -> dict:
    """Prime -> exponent map of a nonzero rational, sign excluded."""
    if q == 0:
        raise ValueError("cannot factor zero")
    exps: dict = {}
    for n, sgn in ((q.numerator, 1), (q.denominator, -1)):
        n = abs(n)
        for p in _prime_factors(n):
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            exps[p] = exps.get(p, 0) + sgn * e
    return {p: e for p, e in exps.items() if e}


@dataclass(frozen=True)
class NumberField:
    """Q[s]/(minpoly), minpoly monic irreducible over Q."""

    minpoly: Poly

    def __post_init__(self):
        mp = self.minpoly
        if mp.degree < 2:
            raise ValueError("number field needs degree >= 2")
        if mp.lc != 1:
            raise ValueError("minimal polynomial must be monic")
        fac = poly_factor(mp)
        if len(fac.factors) != 1 or fac.factors[0][1] != 1:
            raise ValueError("minimal polynomial must be irreducible")

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def gen(self) -> "AlgNum":
        return AlgNum(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    def embed(self, q: Rational) -> "AlgNum":
        return AlgNum(self, (Fraction(q),) + (Fraction(0),) * (self.degree - 1))

    def __repr__(self):
        return f"NumberField({self.minpoly})"


def quadratic_field(disc: Rational) -> NumberField:
    """Q(sqrt(disc)) for a rational non-square disc."""
    d = Fraction(disc)
    if d == 0:
        raise ValueError("discriminant must be nonzero")
    return NumberField(Poly((-d, Fraction(0), Fraction(1))))


def _sqrt_exact(q: Fraction):
    """Rational square root, or None."""
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class AlgNum:
    """Element of a NumberField, coefficients in the power basis of s."""

    field: NumberField
    coeffs: tuple

    _ddg_scalar = True

    def __post_init__(self):
        n = self.field.degree
        cs = self.coeffs
        if (
            type(cs) is tuple
            and len(cs) == n
            and all(type(c) is Fraction for c in cs)
        ):
            return
        cs = tuple(Fraction(c) for c in cs)
        if len(cs) != n:
            cs = cs[:n] + (Fraction(0),) * (n - len(cs))
        object.__setattr__(self, "coeffs", cs)

    # -- structure ---------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __hash__(self):
        if self.is_rational:
            return hash(self.coeffs[0])
        return hash((self.field.minpoly.coeffs, self.coeffs))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def _coerce(self, v):
        if isinstance(v, AlgNum):
            if v.field != self.field:
                if v.is_rational:
                    return self.field.embed(v.as_rational())
                if self.is_rational:
                    return NotImplemented
                raise UnsupportedField(
                    "arithmetic across distinct number fields is not supported"
                )
            return v
        if isinstance(v, (int, Fraction)):
            return self.field.embed(v)
        return NotImplemented

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return AlgNum(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return AlgNum(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.field.degree == 2:
            a0, a1 = self.coeffs
            b0, b1 = other.coeffs
            cross = a1 * b1
            p = self.field.minpoly.coeff(1)
            q = self.field.minpoly.coeff(0)
            return AlgNum(
                self.field,
                (a0 * b0 - q * cross, a0 * b1 + a1 * b0 - p * cross),
            )
        prod = Poly(self.coeffs) * Poly(other.coeffs)
        rem = prod % self.field.minpoly
        cs = tuple(rem.coeff(i) for i in range(self.field.degree))
        return AlgNum(self.field, cs)

    __rmul__ = __mul__

    def inverse(self) -> "AlgNum":
        if self.is_zero():
            raise ZeroDivisionError("division by zero algebraic number")
        # Extended Euclid in Q[s] against the minimal polynomial.
        a, b = self.field.minpoly, Poly(self.coeffs)
        s0, s1 = Poly.zero(), Poly.one()
        while not b.is_zero():
            q, r = divmod(a, b)
            a, b = b, r
            s0, s1 = s1, s0 - q * s1
        # a = gcd = unit since minpoly is irreducible and self != 0
        inv = s0 * Poly((Fraction(1) / a.coeff(0),)) if a.degree == 0 else None
        if inv is None:
            raise ArithmeticError("element shares a factor with the minimal polynomial")
        inv = inv % self.field.minpoly
        return AlgNum(self.field, tuple(inv.coeff(i) for i in range(self.field.degree)))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.embed(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- quadratic-specific helpers ----------------------------------------

    def conjugate(self) -> "AlgNum":
        """Galois conjugate in a quadratic field: s -> -s - (trace coeff)."""
        if self.field.degree != 2:
            raise UnsupportedField("conjugation is implemented for quadratic fields only")
        # minpoly = x^2 + p x + q, the other root of which is -p - s.
        p = self.field.minpoly.coeff(1)
        a, b = self.coeffs
        return AlgNum(self.field, (a - b * p, -b))

    def norm(self) -> Fraction:
        """Field norm down to Q (quadratic fields)."""
        return (self * self.conjugate()).as_rational()

    def trace(self) -> Fraction:
        return (self + self.conjugate()).as_rational()

    def __repr__(self):
        if self.is_rational:
            return str(self.coeffs[0])
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*s" if c != 1 else "s")
            else:
                parts.append(f"{c}*s^{i}" if c != 1 else f"s^{i}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


Constant = Union[Fraction, AlgNum]


def as_constant(v) -> Constant:
    """Normalize ints to Fraction; pass Fractions and AlgNums through."""
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, (Fraction, AlgNum)):
        return v
    raise TypeError(f"not a constant: {v!r}")


def constant_is_one(c: Constant) -> bool:
    if isinstance(c, AlgNum):
        return c.is_rational and c.as_rational() == 1
    return c == 1


def _rationalize(c: Constant) -> Constant:
    if isinstance(c, AlgNum) and c.is_rational:
        return c.as_rational()
    return c


def is_root_of_unity(c: Constant):
    """Smallest m >= 1 with c**m == 1, or NotRootOfUnity.

    A root of unity lying in a field of degree d over Q has phi(m) <= d,
    which bounds the orders to scan.
    """
    c = _rationalize(as_constant(c))
    if isinstance(c, Fraction):
        if c == 1:
            return 1
        if c == -1:
            return 2
        return NotRootOfUnity
    if c.is_zero():
        return NotRootOfUnity
    d = c.field.degree
    # phi(m) >= sqrt(m) for m > 6, so phi(m) <= d forces m <= max(6, d*d).
    bound = max(6, d * d)
    for m in range(1, bound + 1):
        if _euler_phi(m) > d:
            continue
        if constant_is_one(c**m):
            return m
    return NotRootOfUnity


def torsion_link(c_u: Constant, order_u: int, c_v: Constant, order_v: int) -> tuple:
    """Exponent data tying two roots of unity of orders m and n.

    Returns (e, g_m, g_n) with g_m = m/gcd(m, n), g_n = n/gcd(m, n), and e
    the least positive integer satisfying c_u**(e*g_m) * c_v**(g_n) == 1.
    Both c_u**g_m and c_v**g_n are primitive gcd(m, n)-th roots of unity,
    so e exists in 1..gcd(m, n) and is coprime to gcd(m, n).
    """
    from .markers import InternalInconsistency

    g = math.gcd(order_u, order_v)
    g_m = order_u // g
    g_n = order_v // g
    base = as_constant(c_u) ** g_m
    target = as_constant(c_v) ** g_n
    acc = base
    for e in range(1, g + 1):
        if constant_is_one(acc * target):
            if math.gcd(e, g) != 1:
                raise InternalInconsistency(
                    "torsion link exponent shares a factor with gcd of orders"
                )
            return (e, g_m, g_n)
        acc = acc * base
    raise InternalInconsistency("no torsion link exponent found below gcd of orders")


# -- multiplicative relation lattices ---------------------------------------


def _lattice_from_single(gen: tuple) -> tuple:
    """Sign-canonical single generator; the caller owns its scale."""
    m, n = gen
    if m < 0 or (m == 0 and n < 0):
        m, n = -m, -n
    return ((m, n),)


def _rational_pair_lattice(c: Fraction, d: Fraction) -> tuple:
    """All (m, n) with c^m * d^n = 1 for nonzero rationals, via prime exponents."""
    ec = factor_rational(c)
    ed = factor_rational(d)
    primes = sorted(set(ec) | set(ed))
    # Solve m*ec + n*ed = 0 over the primes, then correct for sign.
    if not primes:
        # Both are +-1; pure torsion, full rank up to sign conditions.
        oc = 1 if c == 1 else 2
        od = 1 if d == 1 else 2
        return ((oc, 0), (0, od)) if (oc, od) != (2, 2) else ((2, 0), (1, 1))
    rows = [(ec.get(p, 0), ed.get(p, 0)) for p in primes]
    # Kernel of a 2-column integer matrix: rank 0, 1, or 2.
    nz = [r for r in rows if r != (0, 0)]
    if not nz:
        raise AssertionError("unreachable: primes nonempty implies a nonzero row")
    r0 = nz[0]
    if all(r[0] * r0[1] - r[1] * r0[0] == 0 for r in nz):
        if r0[0] == 0:
            base = (1, 0)
        elif r0[1] == 0:
            base = (0, 1)
        else:
            g = math.gcd(abs(r0[0]), abs(r0[1]))
            base = (-(r0[1] // g), r0[0] // g)
        m, n = base
        val = Fraction(c) ** m * Fraction(d) ** n
        if val == 1:
            return _lattice_from_single(base)
        if val == -1:
            return _lattice_from_single((2 * m, 2 * n))
        raise AssertionError("exponent kernel vector must give a sign")
    return ()


def _torsion_order(c: Constant):
    m = is_root_of_unity(c)
    return None if m is NotRootOfUnity else m


def _both_torsion_lattice(c: Constant, oc: int, d: Constant, od: int) -> tuple:
    """Rank-2 lattice {(m, n): c^m d^n = 1} for roots of unity, HNF basis."""
    # Smallest n1 > 0 with d^n1 in <c>, then the matching s with c^s d^n1 = 1.
    for n1 in range(1, od + 1):
        dn = as_constant(d) ** n1
        acc = as_constant(c)
        target = dn
        if constant_is_one(target):
            return ((oc, 0), (0, n1))
        for s in range(1, oc + 1):
            if constant_is_one(acc * target):
                return ((oc, 0), (s, n1))
            acc = acc * as_constant(c)
    raise AssertionError("unreachable: n1 = od always lands in <c>")


def multiplicative_relation_lattice(c: Constant, d: Constant) -> tuple:
    """Basis of {(m, n) in Z^2 : c^m * d^n = 1} for nonzero constants.

    Returns a tuple of 0, 1, or 2 generators. Raises UnsupportedField when
    the constants live in a field where the search cannot be certified.
    """
    c = _rationalize(as_constant(c))
    d = _rationalize(as_constant(d))
    if (isinstance(c, Fraction) and c == 0) or (isinstance(d, AlgNum) and d.is_zero()):
        raise ValueError("lattice of a zero constant")
    if (isinstance(d, Fraction) and d == 0) or (isinstance(c, AlgNum) and c.is_zero()):
        raise ValueError("lattice of a zero constant")

    oc, od = _torsion_order(c), _torsion_order(d)
    if oc and od:
        return _both_torsion_lattice(c, oc, d, od)
    if oc:
        return ((oc, 0),)
    if od:
        return ((0, od),)

    if isinstance(c, Fraction) and isinstance(d, Fraction):
        return _rational_pair_lattice(c, d)

    # At least one lives in a proper extension; require a common quadratic home.
    if isinstance(c, Fraction) or isinstance(d, Fraction):
        field = c.field if isinstance(c, AlgNum) else d.field
        c = field.embed(c) if isinstance(c, Fraction) else c
        d = field.embed(d) if isinstance(d, Fraction) else d
    if c.field != d.field:
        raise UnsupportedField("constants live in distinct number fields")
    if c.field.degree != 2:
        raise UnsupportedField(
            f"relation lattice over degree-{c.field.degree} fields is not supported"
        )

    # Reduce by the norm map N: Q(s) -> Q. A relation c^m d^n = 1 forces
    # N(c)^m N(d)^n = 1, so the lattice embeds in the norm-pair lattice.
    nc, nd = c.norm(), d.norm()
    norm_lat = _rational_pair_lattice_or_torsion(nc, nd)
    if not norm_lat:
        return ()
    if len(norm_lat) == 1:
        (m1, n1) = norm_lat[0]
        val = c**m1 * d**n1
        t = _torsion_order(val)
        if t is None:
            return ()
        return _lattice_from_single((t * m1, t * n1))

    # Norms are both torsion (+-1): pass to conjugate ratios, which kill
    # the norm and are never torsion here (val^2 = ratio * norm-power).
    tau_c = c / c.conjugate()
    tau_d = d / d.conjugate()
    for bound in range(1, 7):
        for p, q in _primitive_pairs(bound):
            if constant_is_one(tau_c**p * tau_d**q):
                val = c**p * d**q
                if constant_is_one(val):
                    return _lattice_from_single((p, q))
                if constant_is_one(val * val):
                    return _lattice_from_single((2 * p, 2 * q))
                raise AssertionError("conjugate-ratio relation must pin the value to +-1")
    raise UnsupportedField("no small multiplicative relation found and none excluded")


def _rational_pair_lattice_or_torsion(c: Fraction, d: Fraction) -> tuple:
    oc = 1 if c == 1 else (2 if c == -1 else None)
    od = 1 if d == 1 else (2 if d == -1 else None)
    if oc and od:
        return _both_torsion_lattice(c, oc, d, od)
    if oc:
        return ((oc, 0),)
    if od:
        return ((0, od),)
    return _rational_pair_lattice(c, d)


def _primitive_pairs(bound: int):
    """Primitive integer pairs (p, q), max(|p|, |q|) == bound, canonical signs."""
    seen = []
    for p, q in itertools.product(range(-bound, bound + 1), repeat=2):
        if max(abs(p), abs(q)) != bound or (p, q) == (0, 0):
            continue
        if math.gcd(abs(p), abs(q)) != 1:
            continue
        if p < 0 or (p == 0 and q < 0):
            continue
        seen.append((p, q))
    return sorted(seen)


def sqrt_in_field(q: Fraction):
    """Square root of a rational: Fraction if a perfect square, else an AlgNum.

    Irrational roots are expressed over the canonical field Q(sqrt(D)) with
    D the signed squarefree part, so equal inputs land in equal fields.
    """
    q = Fraction(q)
    r = _sqrt_exact(q)
    if r is not None:
        return r
    d = squarefree_part(q)
    scale = _sqrt_exact(q / d)
    return quadratic_field(Fraction(d)).gen() * scale


def squarefree_part(q: Fraction) -> int:
    """Signed squarefree integer D with q = D * (rational square)."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("squarefree part of zero")
    n = q.numerator * q.denominator
    d = 1
    for p in _prime_factors(n):
        e = 0
        m = abs(n)
        while m % p == 0:
            m //= p
            e += 1
        if e % 2:
            d *= p
    return d if n > 0 else -d


def algnum_sqrt(d: "AlgNum"):
    """Square root of d inside its own quadratic field, or None."""
    if d.field.degree != 2:
        raise UnsupportedField("in-field square roots only for quadratic fields")
    bb = d.field.minpoly.coeff(1)
    gg = d.field.minpoly.coeff(0)
    d0, d1 = d.coeffs
    if d1 == 0:
        r = _sqrt_exact(d0)
        return d.field.embed(r) if r is not None else None
    # (p + q*s)^2 = d leads to a quadratic in q^2.
    aa = bb * bb - 4 * gg
    lin = 2 * bb * d1 - 4 * d0
    disc = lin * lin - 4 * aa * d1 * d1
    root = _sqrt_exact(disc)
    if root is None:
        return None
    for sign in (1, -1):
        qq = (-lin + sign * root) / (2 * aa)
        if qq <= 0:
            continue
        q = _sqrt_exact(qq)
        if q is None or q == 0:
            continue
        p = (d1 + bb * q * q) / (2 * q)
        cand = AlgNum(d.field, (p, q))
        if cand * cand == d:
            return cand
    return None
