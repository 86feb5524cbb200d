"""Dense univariate polynomials with exact coefficients.

Coefficients are stored lowest degree first in a tuple, with no trailing
zeros.  Rational coefficients are `fractions.Fraction`; coefficients from a
quadratic extension (see `fields.AlgNum`) also work, since they implement the
same arithmetic protocol and interoperate with Fraction.

>>> p = Poly((1, 2, 1))
>>> str(p)
'x^2 + 2*x + 1'
>>> str(p.shift(1))
'x^2 + 4*x + 4'
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable


def _norm_scalar(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


@dataclass(frozen=True)
class Poly:
    coeffs: tuple

    def __post_init__(self):
        cs = [_norm_scalar(c) for c in self.coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(c) -> "Poly":
        return Poly((c,))

    @staticmethod
    def zero() -> "Poly":
        return Poly(())

    @staticmethod
    def one() -> "Poly":
        return Poly((1,))

    @staticmethod
    def x() -> "Poly":
        return Poly((0, 1))

    @staticmethod
    def from_roots(roots: Iterable) -> "Poly":
        p = Poly.one()
        for r in roots:
            p = p * Poly((-_norm_scalar(r), 1))
        return p

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self):
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    # -- ring operations ---------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(tuple(out))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(()), self
        quot = [Fraction(0)] * (dq + 1)
        inv_lc = 1 / other.lc
        for i in range(dq, -1, -1):
            c = rem[i + other.degree] * inv_lc
            quot[i] = c
            if c:
                for j, oc in enumerate(other.coeffs):
                    rem[i + j] = rem[i + j] - c * oc
        return Poly(tuple(quot)), Poly(tuple(rem[: other.degree]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    # -- field-of-coefficients helpers --------------------------------------

    def monic(self) -> "Poly":
        if self.is_zero() or self.lc == 1:
            return self
        inv = 1 / self.lc
        return Poly(tuple(c * inv for c in self.coeffs))

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    # -- calculus / substitution -------------------------------------------

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def shift(self, k) -> "Poly":
        """p(x + k).  k may be any rational (or field) constant.

        >>> str(Poly((0, 0, 1)).shift(-1))
        'x^2 - 2*x + 1'
        """
        k = _norm_scalar(k)
        if not k or self.is_constant():
            return self
        # Horner: p(x+k) built from the top coefficient down.
        out = Poly(())
        xk = Poly((k, 1))
        for c in reversed(self.coeffs):
            out = out * xk + Poly((c,))
        return out

    def scale(self, t) -> "Poly":
        """p(t * x)."""
        t = _norm_scalar(t)
        power = Fraction(1)
        cs = []
        for c in self.coeffs:
            cs.append(c * power)
            power = power * t
        return Poly(tuple(cs))

    def __call__(self, v):
        v = _norm_scalar(v)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    # -- display -------------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if not c:
                continue
            parts.append((i, c))
        pieces = []
        for idx, (i, c) in enumerate(parts):
            coeff_s = _scalar_str(c)
            neg = coeff_s.startswith("-")
            if neg:
                coeff_s = coeff_s[1:]
            if i == 0:
                term = coeff_s
            else:
                xs = "x" if i == 1 else f"x^{i}"
                if coeff_s == "1":
                    term = xs
                elif any(op in coeff_s for op in "+-") and not _is_simple_number(coeff_s):
                    term = f"({coeff_s})*{xs}"
                else:
                    term = f"{coeff_s}*{xs}"
            if idx == 0:
                pieces.append(("-" if neg else "") + term)
            else:
                pieces.append(("- " if neg else "+ ") + term)
        return " ".join(pieces)


def _is_simple_number(s: str) -> bool:
    return all(ch.isdigit() or ch == "/" for ch in s)


def _scalar_str(c) -> str:
    return str(c)


def _as_poly(v):
    if isinstance(v, Poly):
        return v
    if isinstance(v, (int, Fraction)) or getattr(v, "_ddg_scalar", False):
        return Poly((v,))
    return NotImplemented
