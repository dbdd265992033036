"""Exact arithmetic over Q, F_p, F_q = F_p[t]/(m) and truncated Q_p.

A :class:`FieldDescriptor` says which field we compute in; a
:class:`FieldElement` pairs a descriptor with a payload:

======  ============================================
``Q``   :class:`fractions.Fraction` in lowest terms
``Fp``  ``int`` residue in ``[0, p)``
``Fq``  ``tuple`` of ``deg(m)`` residues (coefficient of ``t**i`` first)
``Qp``  :class:`~krasnerkit.padic.PadicNumber`
======  ============================================

Elements are immutable.  Plain ``int`` and ``Fraction`` operands are
coerced into the field of the other operand.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import (DescriptorMismatch, DivisionByZero, InfiniteField,
                     PrecisionExhausted, UnsupportedCharacteristic,
                     UnsupportedField, ZeroInput)
from .padic import INF, PadicNumber, hensel_lift_root, rational_valuation

__all__ = [
    "FieldDescriptor", "FieldElement", "Q", "GF", "Qp", "INF",
    "arith", "padic_val", "is_square", "sqrt", "enumerate_field",
    "hensel_lift_root", "is_prime", "budget",
]

RATIONALS, PRIME, EXT, PADIC = "Q", "Fp", "Fq", "Qp"


def budget(default: int = 10**6) -> int:
    """Enumeration budget, overridable through ``KRASNER_BUDGET``."""
    return int(os.environ.get("KRASNER_BUDGET", default))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


# ---------------------------------------------------------------------------
# raw polynomials over F_p: ascending lists of ints, [] is zero

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _pmod(a, m, p):
    a = list(a)
    inv = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(_trim(a)) > dm:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
    return a


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base, e, m, p):
    result, base = [1], _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def gfp_is_irreducible(m, p: int) -> bool:
    """Distinct-degree test: no factor of degree <= deg(m)/2."""
    m = _trim(list(m))
    d = len(m) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    h = [0, 1]
    for _ in range(d // 2):
        h = _ppowmod(h, p, m, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(m, _trim(diff), p)) != 1:
            return False
    return True


def conway_like_modulus(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree ``k`` over F_p in index order."""
    for idx in range(p**k):
        low = [(idx // p**i) % p for i in range(k)]
        cand = low + [1]
        if cand[0] and gfp_is_irreducible(cand, p):
            return tuple(cand)
    raise ValueError(f"no irreducible polynomial of degree {k} over F_{p}")


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldDescriptor:
    """Which field we compute in.

    ``kind`` is one of ``"Q"``, ``"Fp"``, ``"Fq"``, ``"Qp"``.  ``modulus`` is
    the ascending coefficient tuple of a monic irreducible polynomial over
    F_p (``Fq`` only); ``precision`` is the number of significant p-adic
    digits (``Qp`` only).
    """

    kind: str
    p: int | None = None
    modulus: tuple[int, ...] | None = None
    precision: int | None = None

    def __post_init__(self):
        if self.kind not in (RATIONALS, PRIME, EXT, PADIC):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == RATIONALS:
            if self.p is not None or self.modulus is not None or self.precision is not None:
                raise ValueError("Q takes no parameters")
            return
        if self.p is None or not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.kind == EXT:
            if self.modulus is None:
                raise ValueError("Fq needs a modulus")
            mod = tuple(int(c) % self.p for c in self.modulus)
            object.__setattr__(self, "modulus", mod)
            if len(mod) < 3 or mod[-1] != 1:
                raise ValueError("modulus must be monic of degree >= 2")
            if not gfp_is_irreducible(mod, self.p):
                raise ValueError(f"modulus {list(mod)} is reducible over F_{self.p}")
        elif self.modulus is not None:
            raise ValueError("only Fq takes a modulus")
        if self.kind == PADIC:
            if self.precision is None or self.precision < 1:
                raise ValueError("Qp needs precision >= 1")
        elif self.precision is not None:
            raise ValueError("only Qp takes a precision")

    # -- descriptive properties -----------------------------------------
    @property
    def is_finite(self) -> bool:
        return self.kind in (PRIME, EXT)

    @property
    def is_exact(self) -> bool:
        return self.kind != PADIC

    @property
    def characteristic(self) -> int:
        return self.p if self.is_finite else 0

    @property
    def degree(self) -> int:
        """Degree over the prime field (1 for everything but ``Fq``)."""
        return len(self.modulus) - 1 if self.kind == EXT else 1

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise InfiniteField(f"{self} is infinite")
        return self.p**self.degree

    @cached_property
    def zero(self) -> FieldElement:
        return self(0)

    @cached_property
    def one(self) -> FieldElement:
        return self(1)

    @cached_property
    def _reduction(self):
        # t**j mod m for j in [k, 2k-2], as coefficient lists
        k, p, m = self.degree, self.p, self.modulus
        table = {}
        for j in range(k, 2 * k - 1):
            x = [0] * j + [1]
            r = _pmod(x, m, p)
            table[j] = tuple(r + [0] * (k - len(r)))
        return table

    def __str__(self) -> str:
        if self.kind == RATIONALS:
            return "Q"
        if self.kind == PRIME:
            return f"F_{self.p}"
        if self.kind == EXT:
            return f"F_{self.order}[{list(self.modulus)}]"
        return f"Q_{self.p}(prec={self.precision})"

    # -- element construction -------------------------------------------
    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field == self:
                return value
            if self.kind == EXT and value.field.kind == PRIME and value.field.p == self.p:
                return self(value.value)
            if self.kind == PADIC and value.field.kind == PADIC and value.field.p == self.p:
                return FieldElement(self, value.value)
            if self.kind == PADIC and value.field.kind == RATIONALS:
                return self(value.value)
            raise DescriptorMismatch(f"cannot coerce element of {value.field} into {self}")
        kind = self.kind
        if kind == RATIONALS:
            return FieldElement(self, Fraction(value))
        if kind == PRIME:
            if isinstance(value, (Fraction, str)):
                fr = Fraction(value)
                return FieldElement(self, fr.numerator * pow(fr.denominator, -1, self.p) % self.p)
            return FieldElement(self, int(value) % self.p)
        if kind == EXT:
            k = self.degree
            if isinstance(value, (list, tuple)):
                if len(value) > k:
                    raise ValueError(f"expected at most {k} coefficients")
                vals = [int(c) % self.p for c in value] + [0] * (k - len(value))
                return FieldElement(self, tuple(vals))
            if isinstance(value, (Fraction, str)):
                fr = Fraction(value)
                value = fr.numerator * pow(fr.denominator, -1, self.p)
            return FieldElement(self, (int(value) % self.p,) + (0,) * (k - 1))
        # Qp
        if isinstance(value, PadicNumber):
            if value.p != self.p:
                raise DescriptorMismatch("p-adic prime mismatch")
            return FieldElement(self, value)
        if isinstance(value, dict):
            return self.decode(value)
        return FieldElement(self, PadicNumber.from_rational(Fraction(value), self.p, self.precision))

    def from_index(self, idx: int) -> FieldElement:
        if self.kind == PRIME:
            return FieldElement(self, idx % self.p)
        if self.kind == EXT:
            p = self.p
            return FieldElement(self, tuple((idx // p**i) % p for i in range(self.degree)))
        raise InfiniteField(f"{self} has no element index")

    def elements(self):
        """Every element once, in index order."""
        return enumerate_field(self)

    def random_element(self, rng: random.Random, bound: int = 100) -> FieldElement:
        if self.is_finite:
            return self.from_index(rng.randrange(self.order))
        num = rng.randint(-bound, bound)
        if self.kind == RATIONALS:
            return self(Fraction(num, rng.randint(1, bound)))
        return self(num)

    def generator(self) -> FieldElement:
        """The class of ``t`` in ``F_p[t]/(m)``."""
        if self.kind != EXT:
            raise UnsupportedField("only Fq has a distinguished generator")
        return self([0, 1])

    # -- JSON -----------------------------------------------------------
    def to_json(self) -> dict:
        if self.kind == RATIONALS:
            return {"kind": "Q"}
        if self.kind == PRIME:
            return {"kind": "Fp", "p": self.p}
        if self.kind == EXT:
            return {"kind": "Fq", "p": self.p, "modulus": list(self.modulus)}
        return {"kind": "Qp", "p": self.p, "precision": self.precision}

    @classmethod
    def from_json(cls, obj: dict) -> FieldDescriptor:
        try:
            return cls._from_json(obj)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed field descriptor {obj!r}: missing {exc}") from None

    @classmethod
    def _from_json(cls, obj: dict) -> FieldDescriptor:
        kind = obj["kind"]
        if kind == "Q":
            return cls(RATIONALS)
        if kind == "Fp":
            return cls(PRIME, int(obj["p"]))
        if kind == "Fq":
            return cls(EXT, int(obj["p"]), tuple(int(c) for c in obj["modulus"]))
        if kind == "Qp":
            return cls(PADIC, int(obj["p"]), precision=int(obj["precision"]))
        raise ValueError(f"unknown field kind {kind!r}")

    def encode(self, x: FieldElement):
        x = self(x)
        if self.kind == RATIONALS:
            return str(x.value)
        if self.kind == PRIME:
            return x.value
        if self.kind == EXT:
            return list(x.value)
        v = x.value
        return {"val": "inf" if v.is_zero else v.valuation, "digits": v.digits}

    def decode(self, obj) -> FieldElement:
        if self.kind == PADIC and isinstance(obj, dict):
            if obj["val"] in ("inf", None):
                return FieldElement(self, PadicNumber.zero(self.p, self.precision))
            digits = obj["digits"]
            unit = sum(d * self.p**i for i, d in enumerate(digits))
            return FieldElement(self, PadicNumber(self.p, int(obj["val"]), unit, len(digits)))
        return self(obj)


def Q() -> FieldDescriptor:
    return FieldDescriptor(RATIONALS)


def GF(p: int, modulus=None) -> FieldDescriptor:
    """``F_p``, or ``F_p[t]/(modulus)`` when a modulus is given.

    A prime power ``p**k`` without a modulus gets the first monic
    irreducible of degree ``k`` in index order.
    """
    if modulus is None:
        if p > 1 and not is_prime(p):
            for r in range(2, int(p**0.5) + 1):
                if p % r == 0:
                    break
            k, m = 0, p
            while m % r == 0:
                m //= r
                k += 1
            if m != 1 or not is_prime(r):
                raise ValueError(f"{p} is not a prime power")
            return FieldDescriptor(EXT, r, tuple(conway_like_modulus(r, k)))
        return FieldDescriptor(PRIME, p)
    return FieldDescriptor(EXT, p, tuple(modulus))


def Qp(p: int, precision: int = 20) -> FieldDescriptor:
    return FieldDescriptor(PADIC, p, precision=precision)


# ---------------------------------------------------------------------------

class FieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field: FieldDescriptor, value):
        self.field = field
        self.value = value

    # coercion of the other operand; NotImplemented lets richer types take over
    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                if other.field.kind == PRIME and self.field.kind == EXT and other.field.p == self.field.p:
                    return self.field(other.value)
                raise DescriptorMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        kind, p = self.field.kind, self.field.p
        if kind == PRIME:
            return FieldElement(self.field, (self.value + o.value) % p)
        if kind == EXT:
            return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.value, o.value)))
        return FieldElement(self.field, self.value + o.value)

    __radd__ = __add__

    def __neg__(self):
        kind, p = self.field.kind, self.field.p
        if kind == PRIME:
            return FieldElement(self.field, -self.value % p)
        if kind == EXT:
            return FieldElement(self.field, tuple(-a % p for a in self.value))
        return FieldElement(self.field, -self.value)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        kind, p = self.field.kind, self.field.p
        if kind == PRIME:
            return FieldElement(self.field, self.value * o.value % p)
        if kind == EXT:
            return FieldElement(self.field, _ext_mul(self.field, self.value, o.value))
        return FieldElement(self.field, self.value * o.value)

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if not self:
            raise DivisionByZero(f"inverse of zero in {self.field}")
        kind, p = self.field.kind, self.field.p
        if kind == RATIONALS:
            return FieldElement(self.field, 1 / self.value)
        if kind == PRIME:
            return FieldElement(self.field, pow(self.value, -1, p))
        if kind == EXT:
            return self ** (self.field.order - 2)
        return FieldElement(self.field, self.value.inverse())

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if self.field.kind == RATIONALS:
            if not o:
                raise DivisionByZero("division by zero in Q")
            return FieldElement(self.field, self.value / o.value)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if self.field.kind == PRIME:
            return FieldElement(self.field, pow(self.value, e, self.field.p))
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __bool__(self) -> bool:
        kind = self.field.kind
        if kind == EXT:
            return any(self.value)
        if kind == PADIC:
            return not self.value.is_zero
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                try:
                    other = self._other(other)
                except DescriptorMismatch:
                    return False
        elif isinstance(other, (int, Fraction)):
            other = self.field(other)
        else:
            return NotImplemented
        if self.field.kind == PADIC:
            return self.value.agrees(other.value)
        return self.value == other.value

    def __hash__(self):
        kind = self.field.kind
        if kind == PADIC:
            raise TypeError("p-adic elements compare approximately and are unhashable")
        if kind == EXT:
            if not any(self.value[1:]):
                return hash(self.value[0])
            return hash(self.value)
        return hash(self.value)

    def __int__(self) -> int:
        if self.field.kind == PRIME:
            return self.value
        if self.field.kind == RATIONALS and self.value.denominator == 1:
            return int(self.value)
        raise TypeError(f"{self!r} is not an integer")

    def index(self) -> int:
        """Position in :func:`enumerate_field` order (finite fields only)."""
        kind = self.field.kind
        if kind == PRIME:
            return self.value
        if kind == EXT:
            p = self.field.p
            return sum(c * p**i for i, c in enumerate(self.value))
        raise InfiniteField(f"{self.field} has no element index")

    def __repr__(self):
        kind = self.field.kind
        if kind == EXT:
            terms = []
            for i, c in enumerate(self.value):
                if c:
                    mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                    coef = str(c) if (c != 1 or i == 0) else ""
                    terms.append(coef + ("*" if coef and mono else "") + mono)
            return " + ".join(terms) if terms else "0"
        return str(self.value)


def _ext_mul(field: FieldDescriptor, a, b):
    p, k = field.p, field.degree
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    out = prod[:k]
    red = field._reduction
    for j in range(k, 2 * k - 1):
        c = prod[j]
        if c:
            for i, r in enumerate(red[j]):
                out[i] += c * r
    return tuple(c % p for c in out)


# ---------------------------------------------------------------------------
# module-level operations

def arith(op: str, x: FieldElement, y: FieldElement | None = None) -> FieldElement:
    """Named arithmetic: ``add, sub, mul, div, neg, inv``."""
    if y is not None and isinstance(y, FieldElement) and y.field != x.field:
        raise DescriptorMismatch(f"{x.field} vs {y.field}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    raise ValueError(f"unknown operation {op!r}")


def padic_val(x, p: int | None = None):
    """p-adic valuation; ``inf`` exactly for zero.

    ``x`` is a ``Qp`` element, or a rational (``Q`` element, ``int`` or
    ``Fraction``) together with an explicit prime ``p``.
    """
    if isinstance(x, FieldElement):
        if x.field.kind == PADIC:
            if p is not None and p != x.field.p:
                raise DescriptorMismatch("prime differs from the descriptor's")
            return x.value.valuation
        if x.field.kind != RATIONALS:
            raise UnsupportedField(f"no p-adic valuation on {x.field}")
        x = x.value
    if p is None or not is_prime(p):
        raise ValueError("a prime is required for rational valuations")
    return rational_valuation(x, p)


def _is_square_int(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def is_square(x: FieldElement) -> bool:
    """Whether ``x`` is a square in its field (``x`` must be nonzero)."""
    if not x:
        raise ZeroInput("square test of zero")
    f = x.field
    if f.kind == RATIONALS:
        return _is_square_int(x.value.numerator) and _is_square_int(x.value.denominator)
    if f.kind == PRIME:
        return f.p == 2 or pow(x.value, (f.p - 1) // 2, f.p) == 1
    if f.kind == EXT:
        return f.p == 2 or x ** ((f.order - 1) // 2) == f.one
    if f.p == 2:
        raise UnsupportedCharacteristic("2-adic square classes are not supported")
    v = x.value
    return v.valuation % 2 == 0 and pow(v.unit % f.p, (f.p - 1) // 2, f.p) == 1


def _tonelli_int(a: int, p: int) -> int:
    if p == 2 or a == 0:
        return a % p
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def _tonelli_field(x: FieldElement) -> FieldElement:
    f = x.field
    qm1 = f.order - 1
    q, s = qm1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    half = qm1 // 2
    z = next(e for e in f.elements() if e and e ** half != f.one)
    m, c, t, r = s, z**q, x**q, x ** ((q + 1) // 2)
    while t != f.one:
        i, t2 = 0, t
        while t2 != f.one:
            t2 = t2 * t2
            i += 1
        b = c ** (1 << (m - i - 1))
        m, c, t, r = i, b * b, t * b * b, r * b
    return r


def sqrt(x: FieldElement) -> FieldElement:
    """A square root of ``x``; raises ``ValueError`` if there is none.

    Over finite fields the root with the smaller element index is returned.
    Over ``Qp`` the root is lifted from the smaller residue root.
    """
    f = x.field
    if not x:
        return x
    if not is_square(x):
        raise ValueError(f"{x} is not a square in {f}")
    if f.kind == RATIONALS:
        fr = x.value
        return f(Fraction(math.isqrt(fr.numerator), math.isqrt(fr.denominator)))
    if f.kind == PRIME:
        r = _tonelli_int(x.value, f.p)
        return f(min(r, f.p - r))
    if f.kind == EXT:
        r = x ** (f.order // 2) if f.p == 2 else _tonelli_field(x)
        return min(r, -r, key=FieldElement.index)
    v = x.value
    r0 = _tonelli_int(v.unit % f.p, f.p)
    r0 = min(r0, f.p - r0)
    unit_field = Qp(f.p, v.precision)
    from .poly import Poly  # local: poly depends on fields
    unit = FieldElement(unit_field, PadicNumber(f.p, 0, v.unit, v.precision))
    g = Poly(unit_field, [-unit, 0, 1])
    root = hensel_lift_root(g, PadicNumber.from_rational(r0, f.p, v.precision), v.precision)
    return FieldElement(f, PadicNumber(f.p, root.valuation + v.valuation // 2, root.unit, root.precision))


def enumerate_field(d: FieldDescriptor):
    """Each element of a finite field exactly once, in index order."""
    if not d.is_finite:
        raise InfiniteField(f"{d} is infinite")
    if d.kind == PRIME:
        return [FieldElement(d, i) for i in range(d.p)]
    return [FieldElement(d, tuple(reversed(c)))
            for c in itertools.product(range(d.p), repeat=d.degree)]
