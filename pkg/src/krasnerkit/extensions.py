"""Quotient algebras ``K[x]/(p_a)``, the set U, and the relation ``a ~ b``.

A :class:`MonicVector` ``a = (a_0, ..., a_{n-1})`` stands for
``p_a(x) = x**n + a_{n-1} x**(n-1) + ... + a_0``; ``a[i]`` is the
coefficient of ``x**i``.  ``a ~ b`` holds when ``K[x]/(p_a)`` and
``K[x]/(p_b)`` are isomorphic over ``K``, decided by looking for a root
of ``p_b`` inside ``K[x]/(p_a)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (BudgetExceeded, DegreeMismatch, DescriptorMismatch,
                     NotInU, PrecisionExhausted, UnsupportedDegree,
                     UnsupportedField)
from .fields import (PADIC, RATIONALS, FieldDescriptor, FieldElement, budget,
                     is_square, sqrt)
from .poly import (Poly, finite_field_roots, is_irreducible, is_separable,
                   poly_gcd, poly_xgcd)

# p-adic verdicts need this many significant digits in the deciding quantity
PADIC_MARGIN = 3


@dataclass(frozen=True)
class MonicVector:
    field: FieldDescriptor
    a: tuple

    def __post_init__(self):
        if len(self.a) < 1:
            raise ValueError("a monic vector needs n >= 1 entries")
        object.__setattr__(self, "a", tuple(self.field(c) for c in self.a))

    @classmethod
    def of(cls, field: FieldDescriptor, coeffs) -> MonicVector:
        return cls(field, tuple(coeffs))

    @property
    def n(self) -> int:
        return len(self.a)

    def to_poly(self) -> Poly:
        return Poly(self.field, list(self.a) + [self.field.one])

    def __iter__(self):
        return iter(self.a)

    def __getitem__(self, i):
        return self.a[i]

    def __len__(self):
        return len(self.a)

    def __eq__(self, other):
        if isinstance(other, MonicVector):
            return self.field == other.field and self.a == other.a
        if isinstance(other, (tuple, list)):
            return len(other) == self.n and all(x == y for x, y in zip(self.a, other))
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.a))

    def __repr__(self):
        return f"MonicVector({self.field}, {list(self.a)})"

    def to_json(self) -> list:
        return [self.field.encode(c) for c in self.a]


# ---------------------------------------------------------------------------

class AlgebraElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: QuotientAlgebra, coords):
        self.algebra = algebra
        self.coords = tuple(coords)

    @property
    def field(self):
        return self.algebra

    def _other(self, other):
        if isinstance(other, AlgebraElement):
            if other.algebra != self.algebra:
                raise DescriptorMismatch("elements of different algebras")
            return other
        if isinstance(other, (FieldElement, int)):
            return self.algebra(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return AlgebraElement(self.algebra, [x + y for x, y in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.algebra, [-x for x in self.coords])

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return AlgebraElement(self.algebra, self.algebra.multiply(self.coords, o.coords))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.algebra.one, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> AlgebraElement:
        alg = self.algebra
        u = Poly(alg.base, self.coords)
        d, s, _ = poly_xgcd(u, alg.modulus)
        if d.degree != 0:
            raise ZeroDivisionError("element is not a unit in the algebra")
        return alg.from_poly(s)

    def __truediv__(self, other):
        o = self._other(other)
        return self * o.inverse()

    def __bool__(self):
        return any(bool(c) for c in self.coords)

    def __eq__(self, other):
        try:
            o = self._other(other)
        except DescriptorMismatch:
            return False
        if o is NotImplemented:
            return NotImplemented
        return all(x == y for x, y in zip(self.coords, o.coords))

    def __hash__(self):
        return hash(self.coords)

    def index(self) -> int:
        q = self.algebra.base.order
        return sum(c.index() * q**i for i, c in enumerate(self.coords))

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coords):
            if c:
                mono = "" if i == 0 else ("α" if i == 1 else f"α^{i}")
                parts.append(f"({c!r})" + mono if mono else f"{c!r}")
        return " + ".join(parts) if parts else "0"


class QuotientAlgebra:
    """``K[x]/(p_a)`` with basis ``1, α, ..., α**(n-1)``, ``α`` the class of ``x``.

    Multiplication works for any coordinate ring that mixes with the base
    field (used symbolically by :mod:`krasnerkit.krasner`).
    """

    def __init__(self, a: MonicVector):
        self.a = a
        self.base = a.field
        self.n = a.n
        self.modulus = a.to_poly()
        n = self.n
        # α**n = -(a_0 + ... + a_{n-1} α**(n-1)); rows of α**k for k in [n, 2n-2]
        red = {}
        cur = [-c for c in a.a]
        for k in range(n, 2 * n - 1):
            red[k] = tuple(cur)
            if k == 2 * n - 2:
                break
            top = cur[-1]
            cur = [top * red[n][0]] + [cur[i - 1] + top * red[n][i] for i in range(1, n)]
        self._red = red

    def __eq__(self, other):
        return isinstance(other, QuotientAlgebra) and self.a == other.a

    def __hash__(self):
        return hash(self.a)

    def __repr__(self):
        return f"QuotientAlgebra({self.base}, {list(self.a.a)})"

    # ring protocol ------------------------------------------------------
    def __call__(self, value) -> AlgebraElement:
        if isinstance(value, AlgebraElement):
            if value.algebra != self:
                raise DescriptorMismatch("element of a different algebra")
            return value
        c = self.base(value)
        return AlgebraElement(self, [c] + [self.base.zero] * (self.n - 1))

    @cached_property
    def zero(self) -> AlgebraElement:
        return self(0)

    @cached_property
    def one(self) -> AlgebraElement:
        return self(1)

    @cached_property
    def alpha(self) -> AlgebraElement:
        if self.n == 1:
            return self(-self.a.a[0])
        return self.element([0, 1])

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    @property
    def order(self) -> int:
        return self.base.order ** self.n

    @cached_property
    def is_field(self) -> bool:
        return is_irreducible(self.modulus)

    def element(self, coords) -> AlgebraElement:
        coords = list(coords) + [0] * (self.n - len(coords))
        return AlgebraElement(self, [self.base(c) for c in coords])

    def from_poly(self, f: Poly) -> AlgebraElement:
        r = f % self.modulus
        return self.element(list(r.coeffs))

    def random_element(self, rng: random.Random) -> AlgebraElement:
        return AlgebraElement(self, [self.base.random_element(rng) for _ in range(self.n)])

    def elements(self):
        for combo in itertools.product(self.base.elements(), repeat=self.n):
            yield AlgebraElement(self, reversed(combo))

    # multiplication -----------------------------------------------------
    def multiply(self, u, v) -> list:
        """Product of two coordinate vectors (entries from any compatible ring)."""
        n = self.n
        prod = [None] * (2 * n - 1)
        for i, x in enumerate(u):
            if not x:
                continue
            for j, y in enumerate(v):
                if not y:
                    continue
                t = x * y
                prod[i + j] = t if prod[i + j] is None else prod[i + j] + t
        zero = _zero_of(u, v, self.base)
        out = [zero if c is None else c for c in prod[:n]]
        for k in range(n, 2 * n - 1):
            c = prod[k]
            if c is None:
                continue
            for i, r in enumerate(self._red[k]):
                if r:
                    out[i] = out[i] + c * r
        return out

    def times_alpha(self, coords) -> list:
        n = self.n
        top = coords[-1]
        if n == 1:
            return [top * self._red_n(0)]
        return [top * self._red_n(0)] + [coords[i - 1] + top * self._red_n(i) for i in range(1, n)]

    def _red_n(self, i):
        if self.n == 1:
            return -self.a.a[0]
        return self._red[self.n][i]

    def mul_matrix(self, coords) -> list[list]:
        """Matrix of multiplication by the element with these coordinates.

        Column ``j`` holds the coordinates of ``β * α**j``.
        """
        n = self.n
        cols, cur = [], list(coords)
        for _ in range(n):
            cols.append(cur)
            cur = self.times_alpha(cur)
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def powers(self, coords, count: int) -> list[list]:
        """Coordinate vectors of ``β**0, ..., β**(count-1)``."""
        one = [self.base.one] + [self.base.zero] * (self.n - 1)
        out, cur = [one], one
        for _ in range(count - 1):
            cur = self.multiply(cur, coords)
            out.append(cur)
        return out


def _zero_of(u, v, base):
    for x in list(u) + list(v):
        if x is not None:
            return x * 0
    return base.zero


# ---------------------------------------------------------------------------

def in_U(a: MonicVector) -> bool:
    """Whether ``p_a`` is separable and irreducible over its field."""
    f = a.to_poly()
    if a.n == 1:
        return True
    if a.field.kind == PADIC:
        # degree-2 only: irreducible with nonzero discriminant is separable
        return is_irreducible(f)
    return is_separable(f) and is_irreducible(f)


def quotient_algebra(a: MonicVector) -> QuotientAlgebra:
    return QuotientAlgebra(a)


def _check_padic_margin(x: FieldElement, what: str) -> None:
    v = x.value
    if not v.is_zero and v.precision < PADIC_MARGIN:
        raise PrecisionExhausted(
            f"{what} has only {v.precision} significant digits; verdict refused")


def _padic_quadratic_decision(f: Poly, A: QuotientAlgebra):
    """Classify a monic quadratic ``f`` over ``A`` by square classes.

    Returns ``("double", None)``, ``("base", sqrt(D_f))``,
    ``("twisted", t)`` with ``t**2 = D_f * D_a``, or ``(None, None)``.
    """
    K = A.base
    if K.p == 2:
        raise UnsupportedField("2-adic quadratic root finding is not supported")
    c0, c1 = f.coeff(0), f.coeff(1)
    d_f = c1 * c1 - c0 * 4
    if not d_f:
        return "double", None
    _check_padic_margin(d_f, "discriminant of f")
    if is_square(d_f):
        return "base", d_f
    if A.n == 1:
        return None, None
    a0, a1 = A.a.a
    prod = d_f * (a1 * a1 - a0 * 4)
    _check_padic_margin(prod, "discriminant product")
    if not is_square(prod):
        return None, None
    return "twisted", prod


def _padic_quadratic_root(f: Poly, A: QuotientAlgebra):
    # completing the square: y = (-c1 +- sqrt(D_f)) / 2
    kind, q = _padic_quadratic_decision(f, A)
    if kind is None:
        return None
    K = A.base
    c1, half = f.coeff(1), K.one / 2
    if kind == "double":
        return A(-c1 * half)
    if kind == "base":
        root_df = A(sqrt(q))
    else:
        # (2α + a_1)**2 = D_a, so sqrt(D_f) = t (2α + a_1) / D_a
        a0, a1 = A.a.a
        d_a = a1 * a1 - a0 * 4
        root_df = (A.alpha * 2 + a1) * (sqrt(q) / d_a)
    last = None
    for s in (root_df, -root_df):
        try:
            return (s - c1) * half
        except PrecisionExhausted as exc:  # a coordinate cancelled; try the conjugate
            last = exc
    raise last


def has_root_exhaustive(f: Poly, A: QuotientAlgebra):
    """Smallest-index root of ``f`` in ``A`` by enumerating ``A`` (oracle)."""
    if A.order > budget():
        raise BudgetExceeded(f"|A| = {A.order} exceeds the enumeration budget")
    for g in A.elements():
        if not f(g):
            return g
    return None


def has_root(f: Poly, A: QuotientAlgebra):
    """A root of ``f`` in ``A`` (smallest element index over finite fields), or None."""
    if f.ring != A.base:
        raise DescriptorMismatch("polynomial and algebra over different fields")
    K = A.base
    if K.is_finite:
        if not A.is_field:
            return has_root_exhaustive(f, A)
        fa = f.map_coeffs(A)
        roots = finite_field_roots(fa)
        return roots[0] if roots else None
    if f.degree == 1:
        return A(-f.coeff(0) / f.coeff(1))
    if K.kind == PADIC and A.n <= 2 and f.degree == 2:
        return _padic_quadratic_root(f.monic(), A)
    raise UnsupportedField(f"root finding in {A} is not supported")


def root_exists(f: Poly, A: QuotientAlgebra) -> bool:
    """Same verdict as ``has_root(f, A) is not None`` without extracting the root."""
    K = A.base
    if K.is_finite and A.is_field:
        fa = f.map_coeffs(A).monic()
        y = Poly.x(A)
        return poly_gcd(fa, y.powmod(A.order, fa) - y).degree > 0
    return has_root(f, A) is not None


def equiv(a: MonicVector, b: MonicVector, algebra: QuotientAlgebra | None = None) -> bool:
    """``a ~ b``: ``p_b`` has a root in ``K[x]/(p_a)``."""
    if a.field != b.field:
        raise DescriptorMismatch("vectors over different fields")
    if a.n != b.n:
        raise DegreeMismatch(f"degrees {a.n} and {b.n}")
    if a.field.kind == RATIONALS and a.n >= 2:
        raise UnsupportedField("~ over Q needs number-field factorisation")
    for v in (a, b):
        if not in_U(v):
            raise NotInU(f"{v} is not separable and irreducible")
    if a.n == 1:
        return True
    A = algebra or QuotientAlgebra(a)
    return root_exists(b.to_poly(), A)


# ---------------------------------------------------------------------------

@dataclass
class ClassCount:
    count: int
    representatives: list
    method: str
    examined: int
    accepted: int
    precision_notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"count": self.count,
                "reps": [r.to_json() for r in self.representatives],
                "method": self.method, "examined": self.examined,
                "accepted": self.accepted, "precision_notes": self.precision_notes}


def _classify(cands, notes):
    reps, algebras = [], []
    for b in cands:
        for r, A in zip(reps, algebras):
            if equiv(r, b, A):
                break
        else:
            reps.append(b)
            algebras.append(QuotientAlgebra(b))
    return reps


def count_classes(d: FieldDescriptor, n: int, samples: int | None = None,
                  seed: int = 0, coeff_bound: int | None = None) -> ClassCount:
    """Partition U (finite fields: all of it; Q_p: random samples) into ~-classes.

    Over a finite field every ``a`` in ``K**n`` is examined (``q**n`` must fit
    the budget).  Over ``Q_p`` with ``n = 2``, integer-coefficient quadratics
    are drawn until ``samples`` of them lie in U.
    """
    notes: list[str] = []
    if d.is_finite:
        total = d.order**n
        if total > budget():
            raise BudgetExceeded(f"q^n = {total} exceeds the enumeration budget")
        elems = d.elements()
        cands = []
        for combo in itertools.product(elems, repeat=n):
            a = MonicVector(d, tuple(reversed(combo)))
            if in_U(a):
                cands.append(a)
        reps = _classify(cands, notes)
        return ClassCount(len(reps), reps, "exhaustive", total, len(cands), notes)
    if d.kind != PADIC or n != 2:
        raise UnsupportedField("class counting needs a finite field or Q_p with n = 2")
    samples = 500 if samples is None else samples
    if samples > budget():
        raise BudgetExceeded("sample count exceeds the budget")
    bound = coeff_bound or d.p**3
    rng = random.Random(seed)
    cands, examined, refused = [], 0, 0
    while len(cands) < samples:
        examined += 1
        if examined > 100 * samples + 1000:
            raise BudgetExceeded("too few samples landed in U")
        a = MonicVector(d, (rng.randint(-bound, bound), rng.randint(-bound, bound)))
        try:
            ok = in_U(a)
        except PrecisionExhausted:
            refused += 1
            continue
        if ok:
            cands.append(a)
    reps = _classify(cands, notes)
    if refused:
        notes.append(f"{refused} samples skipped: discriminant zero to precision")
    notes.append(f"p-adic verdicts decided at precision {d.precision} "
                 f"with margin {PADIC_MARGIN}; equality is approximate")
    return ClassCount(len(reps), reps, "sampled", examined, len(cands), notes)
