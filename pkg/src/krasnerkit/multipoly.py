"""Sparse multivariate polynomials, elementary symmetric polynomials, Jacobians."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .errors import DescriptorMismatch, DimensionMismatch, IndexOutOfRange
from .fields import FieldDescriptor, FieldElement


@dataclass(frozen=True)
class PolyRing:
    """``K[x_0, ..., x_{n-1}]``; calling it coerces constants and polynomials."""

    field: FieldDescriptor
    nvars: int

    def __call__(self, value) -> MultiPoly:
        if isinstance(value, MultiPoly):
            if value.ring != self:
                raise DescriptorMismatch(f"{value.ring} vs {self}")
            return value
        c = self.field(value)
        return MultiPoly(self, {(0,) * self.nvars: c} if c else {})

    @cached_property
    def zero(self) -> MultiPoly:
        return MultiPoly(self, {})

    @cached_property
    def one(self) -> MultiPoly:
        return self(1)

    def gen(self, i: int) -> MultiPoly:
        exp = [0] * self.nvars
        exp[i] = 1
        return MultiPoly(self, {tuple(exp): self.field.one})

    @property
    def gens(self) -> list[MultiPoly]:
        return [self.gen(i) for i in range(self.nvars)]

    def to_json(self):
        return self.field.to_json()

    def encode(self, m: MultiPoly):
        return m.to_json()


class MultiPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}

    @property
    def field(self) -> FieldDescriptor:
        return self.ring.field

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @classmethod
    def from_dict(cls, field: FieldDescriptor, nvars: int, terms: dict) -> MultiPoly:
        ring = PolyRing(field, nvars)
        out = {}
        for e, c in terms.items():
            if len(e) != nvars:
                raise DimensionMismatch(f"exponent {e} has the wrong length")
            out[tuple(e)] = field(c)
        return cls(ring, out)

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise DescriptorMismatch("polynomials in different rings")
            return other
        if isinstance(other, (FieldElement, int)) or type(other).__name__ == "Fraction":
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            if e in out:
                out[e] = out[e] + c
            else:
                out[e] = c
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t = c1 * c2
                out[e] = out[e] + t if e in out else t
        return MultiPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        result = self.ring.one
        for _ in range(k):
            result = result * self
        return result

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, MultiPoly) else other
        if o is NotImplemented or not isinstance(o, MultiPoly) or o.ring != self.ring:
            return NotImplemented if o is NotImplemented else False
        # termwise, so p-adic coefficients compare to their shared precision
        if self.terms.keys() != o.terms.keys():
            return False
        return all(c == o.terms[e] for e, c in self.terms.items())

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus and evaluation ---------------------------------------
    def partial(self, i: int) -> MultiPoly:
        if not 0 <= i < self.nvars:
            raise IndexOutOfRange(f"no variable x_{i}")
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MultiPoly(self.ring, out)

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return self.evaluate(point)

    def evaluate(self, point):
        """Value at ``point``; entries may lie in any ring mixing with the field."""
        if len(point) != self.nvars:
            raise DimensionMismatch(f"point of length {len(point)} for {self.nvars} variables")
        powers = [{0: None, 1: v} for v in point]

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = pw(i, k - 1) * point[i]
            return cache[k]

        total = None
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    t = t * pw(i, k)
            total = t if total is None else total + t
        if total is None:
            return self.field.zero
        return total

    def compose(self, polys) -> MultiPoly:
        """Substitute ``polys[i]`` (all in one target ring) for ``x_i``."""
        polys = list(polys)
        if len(polys) != self.nvars:
            raise DimensionMismatch("wrong number of substitutions")
        target = polys[0].ring
        total = target.zero
        for e, c in self.terms.items():
            t = target(c)
            for i, k in enumerate(e):
                if k:
                    t = t * polys[i] ** k
            total = total + t
        return total

    def embed(self, ring: PolyRing, offset: int) -> MultiPoly:
        """Same polynomial viewed in a bigger ring, variables shifted by ``offset``."""
        if ring.field != self.field or offset + self.nvars > ring.nvars:
            raise DimensionMismatch("cannot embed into the target ring")
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            ne[offset:offset + self.nvars] = e
            out[tuple(ne)] = c
        return MultiPoly(ring, out)

    def map_coeffs(self, field: FieldDescriptor, fn=None) -> MultiPoly:
        fn = fn or field
        return MultiPoly(PolyRing(field, self.nvars), {e: fn(c) for e, c in self.terms.items()})

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self):
        """Terms in graded-lexicographic order, largest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"{c!r}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    # -- JSON -----------------------------------------------------------
    def to_json(self) -> dict:
        f = self.field
        return {"field": f.to_json(), "nvars": self.nvars,
                "terms": [{"exp": list(e), "c": f.encode(c)} for e, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, obj: dict) -> MultiPoly:
        field = FieldDescriptor.from_json(obj["field"])
        n = int(obj["nvars"])
        return cls.from_dict(field, n, {tuple(t["exp"]): field.decode(t["c"]) for t in obj["terms"]})


# ---------------------------------------------------------------------------

def elementary_symmetric_poly(k: int, n: int, field: FieldDescriptor) -> MultiPoly:
    """``e_k`` in ``n`` variables, a sum of ``C(n, k)`` squarefree monomials."""
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"e_{k} undefined in {n} variables")
    ring = PolyRing(field, n)
    terms = {}
    for combo in combinations(range(n), k):
        e = [0] * n
        for i in combo:
            e[i] = 1
        terms[tuple(e)] = field.one
    return MultiPoly(ring, terms)


def e_map(n: int, field: FieldDescriptor) -> list[MultiPoly]:
    """``(e_1, ..., e_n)`` as a polynomial map."""
    return [elementary_symmetric_poly(k, n, field) for k in range(1, n + 1)]


def jacobian(polys) -> list[list[MultiPoly]]:
    """Matrix of formal partials ``d polys[i] / d x_j`` for a square system."""
    polys = list(polys)
    n = len(polys)
    if any(f.nvars != n for f in polys):
        raise DimensionMismatch("Jacobian needs n polynomials in n variables")
    return [[f.partial(j) for j in range(n)] for f in polys]


def jacobian_det(polys) -> MultiPoly:
    from .matrix import det
    return det(jacobian(polys))


def jacobian_det_at(polys, point):
    """Jacobian determinant evaluated at ``point``."""
    from .matrix import det
    polys = list(polys)
    if len(point) != len(polys):
        raise DimensionMismatch("point length differs from the number of variables")
    J = jacobian(polys)
    return det([[entry.evaluate(point) for entry in row] for row in J])
