"""Exact factorization of univariate polynomials over Q.

Pipeline: clear denominators, Yun squarefree decomposition, then for each
squarefree part a Zassenhaus round: Cantor-Zassenhaus over a good prime,
quadratic multifactor Hensel lifting past the Mignotte bound, and subset
recombination with exact trial division.

The modular layer works on plain int tuples (lowest degree first) to keep
the lifting loop out of Fraction arithmetic.
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .markers import DegreeCap, UnsupportedField
from .polys import Poly

_CZ_SEED = 2654435769  # fixed golden-ratio-ish seed: byte-identical output

_PRIMES = (
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139,
)


@dataclass(frozen=True)
class FactoredPoly:
    """unit * prod(factor^multiplicity); factors monic irreducible over Q,
    sorted by (degree, coefficient tuple)."""

    unit: object
    factors: tuple  # of (Poly, int)

    def expand(self) -> Poly:
        p = Poly.const(self.unit)
        for q, m in self.factors:
            p = p * q ** m
        return p


DEFAULT_DEGREE_CAP = 30


def poly_factor(p: Poly, max_degree: int = None) -> FactoredPoly:
    """Factor p into monic irreducibles over Q.

    Raises DegreeCap when deg p exceeds max_degree (DEFAULT_DEGREE_CAP when
    not given), UnsupportedField when a nonconstant input has coefficients
    outside Q.
    """
    if max_degree is None:
        max_degree = DEFAULT_DEGREE_CAP
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.is_constant():
        return FactoredPoly(p.coeffs[0], ())
    if p.degree > max_degree:
        raise DegreeCap(f"degree {p.degree} exceeds cap {max_degree}")
    if not all(isinstance(c, Fraction) for c in p.coeffs):
        # A scalar multiple of a rational polynomial still factors over Q;
        # genuinely irrational monic parts do not.
        monic = p.monic()
        rational = []
        for c in monic.coeffs:
            if isinstance(c, Fraction):
                rational.append(c)
            elif getattr(c, "is_rational", False):
                rational.append(c.as_rational())
            else:
                raise UnsupportedField("factorization implemented over Q only")
        fac = _factor_cached(tuple(rational))
        return FactoredPoly(p.lc * fac.unit, fac.factors)
    return _factor_cached(p.coeffs)


@functools.lru_cache(maxsize=2048)
def _factor_cached(coeffs: tuple) -> FactoredPoly:
    p = Poly(coeffs)
    unit = p.lc
    monic = p.monic()
    factors = []
    for part, mult in _yun_squarefree(monic):
        for irr in _factor_squarefree(part):
            factors.append((irr, mult))
    factors.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return FactoredPoly(unit, tuple(factors))


def _yun_squarefree(f: Poly):
    """Yun's algorithm on a monic polynomial: yields (monic squarefree, mult)."""
    out = []
    g = f.gcd(f.derivative())
    if g.is_constant():
        return [(f, 1)]
    c = f // g
    w = f.derivative() // g
    i = 1
    while not c.is_constant():
        y = w - c.derivative()
        z = c.gcd(y)
        if not z.is_constant():
            out.append((z, i))
        c = c // z
        w = y // z
        i += 1
    return out


def _factor_squarefree(f: Poly):
    """Monic squarefree over Q -> list of monic irreducibles."""
    if f.degree == 1:
        return [f]
    fz, den = _to_int_poly(f)
    # den only scales the unit; f monic means the integer poly has lc = den.
    parts = _zassenhaus(fz)
    return sorted((_from_int_poly_monic(g) for g in parts),
                  key=lambda q: (q.degree, q.coeffs))


def _to_int_poly(f: Poly):
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if g > 1:
        ints = [c // g for c in ints]
    return tuple(ints), den


def _from_int_poly_monic(g: tuple) -> Poly:
    lc = g[-1]
    return Poly(tuple(Fraction(c, lc) for c in g))


# ---------------------------------------------------------------------------
# integer / modular polynomial helpers (tuples, lowest degree first)
# ---------------------------------------------------------------------------


def _z_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _z_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _z_trim(out)


def _z_add(a, b):
    n = max(len(a), len(b))
    return _z_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                    for i in range(n)])


def _z_sub(a, b):
    n = max(len(a), len(b))
    return _z_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                    for i in range(n)])


def _z_trunc(a, m):
    """Symmetric remainder mod m, coefficientwise."""
    half = m // 2
    out = []
    for c in a:
        c = c % m
        if c > half:
            c -= m
        out.append(c)
    return _z_trim(out)


def _z_divmod_monic(a, b, m):
    """Divide a by monic b, coefficients mod m (symmetric)."""
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return (), _z_trunc(rem, m)
    quot = [0] * (len(rem) - db)
    for i in range(len(rem) - db - 1, -1, -1):
        c = rem[i + db] % m
        quot[i] = c
        if c:
            for j in range(db + 1):
                rem[i + j] -= c * b[j]
    return _z_trunc(quot, m), _z_trunc(rem[:db], m)


def _gf_norm(a, p):
    return _z_trim([c % p for c in a])


def _gf_mul(a, b, p):
    return _gf_norm(_z_mul(a, b), p)


def _gf_divmod(a, b, p):
    b = _gf_norm(b, p)
    if not b:
        raise ZeroDivisionError
    inv = pow(b[-1], -1, p)
    rem = [c % p for c in a]
    db = len(b) - 1
    if len(rem) - 1 < db:
        return (), _z_trim(rem)
    quot = [0] * (len(rem) - db)
    for i in range(len(rem) - db - 1, -1, -1):
        c = (rem[i + db] * inv) % p
        quot[i] = c
        if c:
            for j in range(db + 1):
                rem[i + j] = (rem[i + j] - c * b[j]) % p
    return _z_trim(quot), _z_trim(rem[:db])


def _gf_gcd(a, b, p):
    a, b = _gf_norm(a, p), _gf_norm(b, p)
    while b:
        a, b = b, _gf_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = _gf_norm([c * inv for c in a], p)
    return a


def _gf_gcdex(a, b, p):
    """Extended gcd over GF(p): returns (s, t) with s*a + t*b = 1.
    Assumes gcd(a, b) = 1."""
    r0, r1 = _gf_norm(a, p), _gf_norm(b, p)
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = _gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _gf_norm(_z_sub(s0, _z_mul(q, s1)), p)
        t0, t1 = t1, _gf_norm(_z_sub(t0, _z_mul(q, t1)), p)
    if len(r0) != 1:
        raise ArithmeticError("gcdex of non-coprime polynomials")
    inv = pow(r0[0], -1, p)
    s = _gf_norm([c * inv for c in s0], p)
    t = _gf_norm([c * inv for c in t0], p)
    return s, t


def _gf_pow_mod(a, n, f, p):
    result = (1,)
    a = _gf_divmod(a, f, p)[1]
    while n:
        if n & 1:
            result = _gf_divmod(_gf_mul(result, a, p), f, p)[1]
        a = _gf_divmod(_gf_mul(a, a, p), f, p)[1]
        n >>= 1
    return result


def _gf_monic(a, p):
    a = _gf_norm(a, p)
    if not a or a[-1] == 1:
        return a
    inv = pow(a[-1], -1, p)
    return _gf_norm([c * inv for c in a], p)


def _gf_deriv(a, p):
    return _z_trim([(i * c) % p for i, c in enumerate(a)][1:])


def _cz_factor_mod(f, p, rng):
    """Cantor-Zassenhaus: monic squarefree f mod p -> list of monic irreducibles."""
    # distinct-degree decomposition first
    stages = []
    w = (0, 1)  # x
    rest = f
    d = 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        w = _gf_pow_mod(w, p, rest, p)
        g = _gf_gcd(rest, _z_sub(w, (0, 1)), p)
        if len(g) > 1:
            stages.append((g, d))
            rest = _gf_divmod(rest, g, p)[0]
            w = _gf_divmod(w, rest, p)[1]
    if len(rest) > 1:
        stages.append((rest, len(rest) - 1))
    out = []
    for h, d in stages:
        out.extend(_cz_equal_degree(h, d, p, rng))
    return out


def _cz_equal_degree(h, d, p, rng):
    if len(h) - 1 == d:
        return [_gf_monic(h, p)]
    n = len(h) - 1
    while True:
        a = tuple(rng.randrange(p) for _ in range(n))
        a = _z_trim(a)
        if len(a) < 2:
            continue
        g = _gf_gcd(h, a, p)
        if 1 < len(g) < len(h):
            split = g
        else:
            e = _gf_pow_mod(a, (p ** d - 1) // 2, h, p)
            g = _gf_gcd(h, _z_sub(e, (1,)), p)
            if 1 < len(g) < len(h):
                split = g
            else:
                continue
        other = _gf_divmod(h, split, p)[0]
        return _cz_equal_degree(split, d, p, rng) + _cz_equal_degree(other, d, p, rng)


def _hensel_step(m, f, g, h, s, t):
    """One quadratic Hensel step: f = g*h (mod m), s*g + t*h = 1 (mod m),
    h monic.  Returns (G, H, S, T) holding the same mod m**2."""
    M = m * m
    e = _z_trunc(_z_sub(f, _z_mul(g, h)), M)
    q, r = _z_divmod_monic(_z_mul(s, e), h, M)
    u = _z_add(_z_mul(t, e), _z_mul(q, g))
    G = _z_trunc(_z_add(g, u), M)
    H = _z_trunc(_z_add(h, r), M)
    u = _z_add(_z_mul(s, G), _z_mul(t, H))
    b = _z_trunc(_z_sub(u, (1,)), M)
    c, d = _z_divmod_monic(_z_mul(s, b), H, M)
    S = _z_trunc(_z_sub(s, d), M)
    T = _z_trunc(_z_sub(t, _z_add(_z_mul(t, b), _z_mul(c, G))), M)
    return G, H, S, T


def _hensel_lift(p, f, f_list, l):
    """Lift f = lc(f) * prod(f_list) (mod p) to mod p**l.
    f_list: monic mod-p factors.  Returns factors mod p**l (symmetric)."""
    r = len(f_list)
    lc = f[-1]
    if r == 1:
        inv = pow(lc % (p ** l), -1, p ** l)
        return [_z_trunc([c * inv for c in f], p ** l)]
    k = r // 2
    d = max(1, (l - 1).bit_length())
    g = (lc % p,)
    for fi in f_list[:k]:
        g = _gf_mul(g, fi, p)
    h = f_list[k]
    for fi in f_list[k + 1:]:
        h = _gf_mul(h, fi, p)
    s, t = _gf_gcdex(g, h, p)
    g, h = _z_trunc(g, p), _z_trunc(h, p)
    s, t = _z_trunc(s, p), _z_trunc(t, p)
    m = p
    for _ in range(d):
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
        if m >= p ** l:
            break
    return _hensel_lift(p, g, f_list[:k], l) + _hensel_lift(p, h, f_list[k:], l)


def _zassenhaus(f: tuple):
    """Primitive squarefree integer poly (deg >= 2) -> irreducible int factors."""
    n = len(f) - 1
    if n == 1:
        return [f]
    lc = f[-1]
    b = max(abs(c) for c in f)
    bound = (math.isqrt(n + 1) + 1) * (1 << n) * b * abs(lc)

    best = None
    tried = 0
    for p in _PRIMES:
        if lc % p == 0:
            continue
        fp = _gf_monic(f, p)
        if len(fp) - 1 != n:
            continue
        if len(_gf_gcd(fp, _gf_deriv(fp, p), p)) != 1:
            continue
        rng = random.Random(_CZ_SEED)
        parts = _cz_factor_mod(fp, p, rng)
        tried += 1
        if best is None or len(parts) < len(best[1]):
            best = (p, parts)
        if tried >= 3 or len(parts) == 1:
            break
    if best is None:
        raise ArithmeticError("no usable prime found")  # can't happen for squarefree f
    p, modular = best
    if len(modular) == 1:
        return [f]
    modular = sorted(modular)
    l = 1
    while p ** l <= 2 * bound:
        l += 1
    lifted = _hensel_lift(p, f, modular, l)
    pl = p ** l

    # subset recombination with exact trial division over Z
    factors = []
    rest = f
    pool = list(lifted)
    k = 1
    while 2 * k <= len(pool):
        found = False
        for subset in _subsets(len(pool), k):
            cand = (rest[-1] % pl,)
            for idx in subset:
                cand = _z_trunc(_z_mul(cand, pool[idx]), pl)
            cand = _z_primitive(cand)
            q, r = _z_exact_div(rest, cand)
            if r:
                continue
            factors.append(cand)
            rest = _z_primitive(q)
            pool = [g for i, g in enumerate(pool) if i not in subset]
            found = True
            break
        if not found:
            k += 1
    if len(rest) > 1:
        factors.append(_z_primitive(rest))
    return factors


def _subsets(n, k):
    import itertools

    return itertools.combinations(range(n), k)


def _z_primitive(a):
    g = 0
    for c in a:
        g = math.gcd(g, c)
    if g == 0:
        return a
    out = tuple(c // g for c in a)
    if out[-1] < 0:
        out = tuple(-c for c in out)
    return out


def _z_exact_div(a, b):
    """Divide integer polys exactly if possible: returns (q, r) with r the
    failure remainder; division performed over Q then integrality-checked."""
    pa = Poly(tuple(Fraction(c) for c in a))
    pb = Poly(tuple(Fraction(c) for c in b))
    q, r = divmod(pa, pb)
    if not r.is_zero():
        return (), (1,)
    qi = []
    for c in q.coeffs:
        if c.denominator != 1:
            return (), (1,)
        qi.append(int(c))
    return _z_trim(qi), ()


# ---------------------------------------------------------------------------
# conveniences built on the factorization
# ---------------------------------------------------------------------------


def rational_roots(p: Poly):
    """All rational roots (with multiplicity collapsed), via linear factors."""
    roots = []
    for q, _ in poly_factor(p).factors:
        if q.degree == 1:
            roots.append(-q.coeff(0))
    return sorted(roots)


def integer_roots(p: Poly):
    return tuple(int(r) for r in rational_roots(p) if r.denominator == 1)
