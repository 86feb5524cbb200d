"""Rational functions in x over Q or a small number field.

Stored reduced with a monic denominator, so equality is structural. The
partial-fraction routine returns the complete expansion over the monic
irreducible factors of the denominator, which is what the discrete-residue
machinery consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .factor import poly_factor
from .markers import PoleAtInfinity, ZeroAtInfinity, ZeroInput
from .polys import Poly


def _gcdex(a: Poly, b: Poly):
    """(g, s, t) with s*a + t*b = g, g monic (or zero)."""
    s0, s1 = Poly.one(), Poly.zero()
    t0, t1 = Poly.zero(), Poly.one()
    while not b.is_zero():
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a.is_zero():
        return a, s0, t0
    inv = 1 / a.lc
    return a.monic(), s0 * inv, t0 * inv


@dataclass(frozen=True)
class RationalFunction:
    num: Poly
    den: Poly

    def __post_init__(self):
        num, den = self.num, self.den
        if not isinstance(num, Poly):
            num = Poly.const(num) if not isinstance(num, tuple) else Poly(num)
        if not isinstance(den, Poly):
            den = Poly.const(den) if not isinstance(den, tuple) else Poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly.zero(), Poly.one()
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
            if den.lc != 1:
                inv = 1 / den.lc
                num, den = num * inv, den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    # -- construction --------------------------------------------------------

    @staticmethod
    def const(c) -> "RationalFunction":
        return RationalFunction(Poly.const(c), Poly.one())

    @staticmethod
    def zero() -> "RationalFunction":
        return RationalFunction(Poly.zero(), Poly.one())

    @staticmethod
    def one() -> "RationalFunction":
        return RationalFunction(Poly.one(), Poly.one())

    @staticmethod
    def x() -> "RationalFunction":
        return RationalFunction(Poly.x(), Poly.one())

    @staticmethod
    def of(v) -> "RationalFunction":
        if isinstance(v, RationalFunction):
            return v
        if isinstance(v, Poly):
            return RationalFunction(v, Poly.one())
        return RationalFunction.const(v)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.coeff(0)

    def is_polynomial(self) -> bool:
        return self.den == Poly.one()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction(other, Poly.one())
        if isinstance(other, (int, Fraction)) or getattr(other, "_ddg_scalar", False):
            return RationalFunction.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

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
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return RationalFunction(self.den**-n, self.num**-n)
        return RationalFunction(self.num**n, self.den**n)

    # -- difference/differential structure ------------------------------------

    def shift(self, k=1) -> "RationalFunction":
        """f(x + k)."""
        return RationalFunction(self.num.shift(k), self.den.shift(k))

    def scale(self, t) -> "RationalFunction":
        """f(t * x)."""
        return RationalFunction(self.num.scale(t), self.den.scale(t))

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def log_derivative(self) -> "RationalFunction":
        """derivative(f)/f, the logarithmic derivative."""
        if self.is_zero():
            raise ZeroInput("logarithmic derivative of zero")
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.num,
        )

    def value_at_infinity(self):
        """Limit at infinity: a constant, ZeroAtInfinity, or PoleAtInfinity."""
        if self.is_zero():
            return ZeroAtInfinity
        dn, dd = self.num.degree, self.den.degree
        if dn > dd:
            return PoleAtInfinity
        if dn < dd:
            return ZeroAtInfinity
        return self.num.lc / self.den.lc

    def __call__(self, v):
        dv = self.den(v)
        if not dv:
            raise ZeroDivisionError(f"pole at {v}")
        return self.num(v) / dv

    # -- partial fractions -----------------------------------------------------

    def partial_fractions(self):
        """(polynomial part, terms) with terms ((p, j, n), ...).

        Each term stands for n/p**j with p a monic irreducible factor of
        the denominator, 1 <= j <= its multiplicity, deg n < deg p, n != 0.
        Terms are ordered by (deg p, coefficients of p, j).
        """
        polypart, rem = divmod(self.num, self.den)
        if rem.is_zero():
            return polypart, ()
        terms = []
        fac = poly_factor(self.den)
        # den is monic so fac.unit == 1 and den = prod of p**e.
        for p, e in fac.factors:
            pe = p**e
            q = self.den // pe
            g, s, _ = _gcdex(q, pe)
            if g != Poly.one():
                raise ArithmeticError("denominator cofactor not coprime to p**e")
            local = (rem * s) % pe
            for i in range(e):
                local, digit = divmod(local, p)
                if not digit.is_zero():
                    terms.append((p, e - i, digit))
        terms.sort(key=lambda t: (t[0].degree, _coeff_key(t[0]), t[1]))
        return polypart, tuple(terms)

    # -- display ---------------------------------------------------------------

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        num_s = str(self.num)
        if _is_single_term(self.num):
            left = num_s
        else:
            left = f"({num_s})"
        den_s = str(self.den)
        if _is_atom(self.den):
            right = den_s
        else:
            right = f"({den_s})"
        return f"{left}/{right}"

    def __repr__(self):
        return f"RationalFunction({self})"


def _coeff_key(p: Poly):
    return tuple(str(c) for c in p.coeffs)


def _is_single_term(p: Poly) -> bool:
    return sum(1 for c in p.coeffs if c) <= 1


def _is_atom(p: Poly) -> bool:
    """True when p prints as a bare power of x or a positive integer."""
    nonzero = [(i, c) for i, c in enumerate(p.coeffs) if c]
    if len(nonzero) != 1:
        return False
    i, c = nonzero[0]
    if i == 0:
        return isinstance(c, Fraction) and c > 0 and c.denominator == 1
    return c == 1


RF = RationalFunction
