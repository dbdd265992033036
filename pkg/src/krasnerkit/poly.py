"""Dense univariate polynomials over a coefficient ring.

The coefficient ring is anything that can be called to coerce a value and
exposes ``zero`` and ``one``: a :class:`~krasnerkit.fields.FieldDescriptor`,
a :class:`~krasnerkit.extensions.QuotientAlgebra` or a
:class:`~krasnerkit.multipoly.PolyRing`.  Coefficients are stored in
ascending order (``coeffs[i]`` multiplies ``x**i``); the zero polynomial
has no coefficients.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations

from .errors import (ConstantInput, DegreeTooSmall, DescriptorMismatch,
                     DivisionByZero, UnsupportedDegree, UnsupportedField)
from .fields import (EXT, PADIC, PRIME, RATIONALS, FieldDescriptor,
                     FieldElement, is_square)


class Poly:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs=()):
        cs = [ring(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, ring) -> Poly:
        return cls(ring, [ring.zero, ring.one])

    @classmethod
    def from_roots(cls, ring, roots) -> Poly:
        out = cls(ring, [ring.one])
        for r in roots:
            out = out * cls(ring, [-ring(r), ring.one])
        return out

    # -- basic accessors ------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.ring.zero

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lc == self.ring.one

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, int) and other == 0:
                return not self.coeffs
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(f"({c!r})" + ("*" + mono if mono else ""))
        return " + ".join(terms)

    # -- ring operations ------------------------------------------------
    def _lift(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise DescriptorMismatch("polynomials over different rings")
            return other
        return Poly(self.ring, [other])

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.ring, [self.coeff(i) + o.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring(other)
            return Poly(self.ring, [a * c for a in self.coeffs])
        o = self._lift(other)
        if not self.coeffs or not o.coeffs:
            return Poly(self.ring)
        out = [None] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if not b:
                    continue
                t = a * b
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        zero = self.ring.zero
        return Poly(self.ring, [zero if c is None else c for c in out])

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        result, base = Poly(self.ring, [self.ring.one]), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other: Poly):
        o = self._lift(other)
        if not o.coeffs:
            raise DivisionByZero("polynomial division by zero")
        inv = o.lc.inverse()
        rem = list(self.coeffs)
        quot = [self.ring.zero] * max(0, len(rem) - len(o.coeffs) + 1)
        do = o.degree
        for k in range(len(rem) - 1, do - 1, -1):
            c = rem[k]
            if not c:
                continue
            c = c * inv
            quot[k - do] = c
            for i, b in enumerate(o.coeffs):
                rem[k - do + i] = rem[k - do + i] - c * b
            rem[k] = self.ring.zero
        return Poly(self.ring, quot), Poly(self.ring, rem[:do] if do else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        """Horner evaluation at ``x`` (any value that mixes with the coefficients)."""
        if not self.coeffs:
            return self.ring.zero
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self) -> Poly:
        return Poly(self.ring, [c * i for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        inv = self.lc.inverse()
        return Poly(self.ring, [c * inv for c in self.coeffs])

    def powmod(self, e: int, mod: Poly) -> Poly:
        result, base = Poly(self.ring, [self.ring.one]) % mod, self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            e >>= 1
            if e:
                base = (base * base) % mod
        return result

    def map_coeffs(self, ring, fn=None) -> Poly:
        fn = fn or ring
        return Poly(ring, [fn(c) for c in self.coeffs])

    # -- JSON -----------------------------------------------------------
    def to_json(self) -> dict:
        return {"field": self.ring.to_json(), "coeffs": [self.ring.encode(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> Poly:
        field = FieldDescriptor.from_json(obj["field"])
        return cls(field, [field.decode(c) for c in obj["coeffs"]])


# ---------------------------------------------------------------------------

def _require_exact(f: Poly, what: str) -> None:
    ring = f.ring
    if isinstance(ring, FieldDescriptor) and not ring.is_exact:
        raise UnsupportedField(f"{what} is not available over p-adic fields")


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd by Euclid's algorithm (exact fields only)."""
    _require_exact(f, "gcd")
    if f.ring != g.ring:
        raise DescriptorMismatch("gcd of polynomials over different rings")
    a, b = f, g
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(f: Poly, g: Poly):
    """Return ``(d, s, t)`` with ``d = s*f + t*g`` monic."""
    ring = f.ring
    r0, r1 = f, g
    s0, s1 = Poly(ring, [ring.one]), Poly(ring)
    t0, t1 = Poly(ring), Poly(ring, [ring.one])
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = r0.lc.inverse()
    return r0 * inv, s0 * inv, t0 * inv


def is_separable(f: Poly) -> bool:
    if f.degree < 1:
        raise ConstantInput("separability of a constant")
    _require_exact(f, "separability via gcd")
    return poly_gcd(f, f.derivative()).degree == 0


def resultant(f: Poly, g: Poly):
    """Resultant over a field via the Euclidean remainder sequence."""
    ring = f.ring
    if not f or not g:
        return ring.zero
    df, dg = f.degree, g.degree
    if df < dg:
        r = resultant(g, f)
        return -r if (df * dg) % 2 else r
    if dg == 0:
        return g.lc ** df
    r = f % g
    if not r:
        return ring.zero
    res = (g.lc ** (df - r.degree)) * resultant(g, r)
    return -res if (df * dg) % 2 else res


def discriminant(f: Poly):
    """``(-1)**(n(n-1)/2) * Res(f, f')`` for monic ``f`` of degree ``n >= 2``."""
    n = f.degree
    if n < 2:
        raise DegreeTooSmall("discriminant needs degree >= 2")
    if not f.is_monic():
        raise ValueError("discriminant expects a monic polynomial")
    if n == 2:
        b, c = f.coeff(1), f.coeff(0)
        return b * b - c * 4
    r = resultant(f, f.derivative())
    return -r if (n * (n - 1) // 2) % 2 else r


def companion(f: Poly) -> list[list]:
    """Companion matrix of a monic polynomial (charpoly equals ``f``)."""
    n, ring = f.degree, f.ring
    M = [[ring.zero] * n for _ in range(n)]
    for i in range(1, n):
        M[i][i - 1] = ring.one
    for i in range(n):
        M[i][n - 1] = -f.coeff(i)
    return M


# ---------------------------------------------------------------------------
# irreducibility

def _irreducible_finite(f: Poly) -> bool:
    q = f.ring.order
    x = Poly.x(f.ring)
    h = x
    for _ in range(f.degree // 2):
        h = h.powmod(q, f)
        if poly_gcd(h - x, f).degree > 0:
            return False
    return True


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _integral_monic_model(f: Poly) -> list[int]:
    """Coefficients of ``D**n f(x/D)``, a monic integer polynomial."""
    n = f.degree
    den = 1
    for c in f.coeffs:
        den = den * c.value.denominator // math.gcd(den, c.value.denominator)
    out = [c.value * Fraction(den) ** (n - i) for i, c in enumerate(f.coeffs)]
    assert all(c.denominator == 1 for c in out)
    return [int(c) for c in out]


def _has_integer_root(g: list[int]) -> bool:
    if g[0] == 0:
        return True
    for d in _divisors(g[0]):
        for r in (d, -d):
            acc = 0
            for c in reversed(g):
                acc = acc * r + c
            if acc == 0:
                return True
    return False


def _has_quadratic_factor(g: list[int]) -> bool:
    # monic quartic g = (x^2 + b x + c)(x^2 + d x + e) over Z
    g0, g1, g2, g3 = g[0], g[1], g[2], g[3]
    for c in _divisors(g0):
        for c in (c, -c):
            e = g0 // c
            if c != e:
                num, den = g1 - c * g3, e - c
                if num % den:
                    continue
                b = num // den
                d = g3 - b
                if c + e + b * d == g2:
                    return True
            else:
                # b + d = g3, b d = g2 - 2c, b e + c d = c g3 = g1
                if c * g3 != g1:
                    continue
                disc = g3 * g3 - 4 * (g2 - 2 * c)
                if disc >= 0 and math.isqrt(disc) ** 2 == disc and (g3 + math.isqrt(disc)) % 2 == 0:
                    return True
    return False


def is_irreducible(f: Poly) -> bool:
    """Exact irreducibility of a monic nonconstant polynomial.

    Finite fields: any degree up to 6 (distinct-degree test).  Q: degree at
    most 4.  Q_p: degree 2 with odd p (discriminant non-square).
    """
    if f.degree < 1:
        raise ConstantInput("irreducibility of a constant")
    if not f.is_monic():
        raise ValueError("is_irreducible expects a monic polynomial")
    ring = f.ring
    if not isinstance(ring, FieldDescriptor):
        raise UnsupportedField("irreducibility is only decided over base fields")
    n = f.degree
    if n == 1:
        return True
    if ring.kind in (PRIME, EXT):
        if n > 6:
            raise UnsupportedDegree("finite-field irreducibility is limited to degree 6")
        return _irreducible_finite(f)
    if ring.kind == RATIONALS:
        if n > 4:
            raise UnsupportedDegree("irreducibility over Q is limited to degree 4")
        g = _integral_monic_model(f)
        if _has_integer_root(g):
            return False
        return n < 4 or not _has_quadratic_factor(g)
    if n != 2:
        raise UnsupportedDegree("irreducibility over Q_p is limited to degree 2")
    disc = discriminant(f)
    if not disc:
        return False
    return not is_square(disc)


# ---------------------------------------------------------------------------
# roots over finite fields (and finite quotient fields)

def _ring_random(ring, rng):
    return ring.random_element(rng)


def _split_linear(g: Poly, q: int, rng: random.Random) -> list:
    """Roots of a monic ``g`` that is a product of distinct linear factors."""
    ring = g.ring
    if g.degree == 0:
        return []
    if g.degree == 1:
        return [-g.coeff(0)]
    x = Poly.x(ring)
    char = ring.characteristic
    while True:
        delta = _ring_random(ring, rng)
        if char == 2:
            # absolute trace of delta*x; a translate would only shift Tr(x)
            if not delta:
                continue
            k = q.bit_length() - 1
            acc, term = Poly(ring), Poly(ring, [ring.zero, delta]) % g
            for _ in range(k):
                acc = acc + term
                term = (term * term) % g
            w = acc
        else:
            h = x + Poly(ring, [delta])
            w = h.powmod((q - 1) // 2, g) - Poly(ring, [ring.one])
        d = poly_gcd(w, g)
        if 0 < d.degree < g.degree:
            return _split_linear(d, q, rng) + _split_linear(g // d, q, rng)


def finite_field_roots(f: Poly, seed: int = 0) -> list:
    """All distinct roots of ``f`` in its finite coefficient field.

    The coefficient ring must be a finite field (an ``Fp``/``Fq`` descriptor
    or a quotient algebra that is a field); roots are sorted by element
    index, so the result does not depend on the random splitting.
    """
    ring = f.ring
    q = ring.order
    x = Poly.x(ring)
    fm = f.monic()
    g = poly_gcd(fm, x.powmod(q, fm) - x)
    roots = _split_linear(g, q, random.Random(seed))
    return sorted(roots, key=lambda r: r.index())


def elementary_symmetric(k: int, vals) -> FieldElement:
    """``e_k`` evaluated at ``vals`` (dynamic programming over prefixes)."""
    from .errors import IndexOutOfRange
    vals = list(vals)
    n = len(vals)
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"e_{k} undefined for {n} values")
    e = [1] + [0] * k
    for v in vals:
        for j in range(k, 0, -1):
            e[j] = e[j] + e[j - 1] * v
    return e[k]


def elementary_symmetric_bruteforce(k: int, vals):
    """Independent sum over index subsets; used as a test oracle."""
    total = 0
    for combo in combinations(vals, k):
        prod = 1
        for v in combo:
            prod = prod * v
        total = total + prod
    return total
