"""EE sets as images of étale maps from open subsets of affine space.

An :class:`EtaleCover` is a polynomial map ``f: K^m -> K^n`` together with
inequations cutting out its domain; the Jacobian determinant of ``f`` is
always one of them, so ``f`` is étale on the domain.  The EE set is the
image of the ``K``-points of the domain.  Sets stay intensional: the only
place an image is materialised is :func:`image`, over a finite field.

Intersections come back as a :class:`ConstraintSystem` (the fiber product
written out as equations) rather than as another cover.
"""

from __future__ import annotations

from itertools import product

from .errors import (BudgetExceeded, DegreeTooLarge, DegreeTooSmall, DimensionMismatch,
                     DescriptorMismatch, Inconclusive, NotInU, UnsupportedField,
                     WitnessMissing, ZeroScale)
from .fields import PADIC, FieldDescriptor, FieldElement, budget
from .multipoly import MultiPoly, PolyRing, jacobian_det
from .padic import PadicNumber, int_valuation


def _point(field: FieldDescriptor, pt) -> tuple:
    return tuple(field(x) for x in pt)


def _domain(field: FieldDescriptor, nvars: int, limit: int | None = None):
    if not field.is_finite:
        raise UnsupportedField("exhaustive search needs a finite field")
    size = field.order**nvars
    if size > (limit or budget()):
        raise BudgetExceeded(f"{size} points exceed the enumeration budget")
    elems = field.elements()
    return product(elems, repeat=nvars)


class EtaleCover:
    def __init__(self, field: FieldDescriptor, n: int, map, inequations=()):
        map = list(map)
        if len(map) != n:
            raise DimensionMismatch(f"{len(map)} components for ambient dimension {n}")
        ring = map[0].ring
        if ring.field != field:
            raise DescriptorMismatch(f"map over {ring.field}, cover over {field}")
        for f in list(map) + list(inequations):
            if f.ring != ring:
                raise DimensionMismatch("all polynomials must share one ring")
        self.field = field
        self.n = n
        self.map = map
        self.inequations = list(inequations)
        jac = jacobian_det(map)
        if not any(jac == g or jac == -g for g in self.inequations):
            self.inequations.insert(0, jac)
        self.witnesses: list[tuple[tuple, tuple]] = []

    @property
    def nvars(self) -> int:
        return self.map[0].nvars

    @property
    def ring(self) -> PolyRing:
        return self.map[0].ring

    def __call__(self, v) -> tuple:
        v = _point(self.field, v)
        return tuple(f.evaluate(v) for f in self.map)

    def admissible(self, v) -> bool:
        v = _point(self.field, v)
        return all(g.evaluate(v) for g in self.inequations)

    def check_witness(self, v, w) -> bool:
        return self.admissible(v) and self(v) == _point(self.field, w)

    def add_witness(self, v, w) -> None:
        if not self.check_witness(v, w):
            raise WitnessMissing(f"{v} does not witness {w}")
        self.witnesses.append((_point(self.field, v), _point(self.field, w)))

    def to_json(self) -> dict:
        enc = self.field.encode
        return {"field": self.field.to_json(), "n": self.n,
                "map": [f.to_json() for f in self.map],
                "inequations": [g.to_json() for g in self.inequations],
                "witnesses": [{"domain": [enc(x) for x in v], "image": [enc(x) for x in w]}
                              for v, w in self.witnesses]}

    @classmethod
    def from_json(cls, obj: dict) -> EtaleCover:
        field = FieldDescriptor.from_json(obj["field"])
        cover = cls(field, int(obj["n"]),
                    [MultiPoly.from_json(f) for f in obj["map"]],
                    [MultiPoly.from_json(g) for g in obj.get("inequations", [])])
        for wit in obj.get("witnesses", []):
            cover.add_witness([field.decode(x) for x in wit["domain"]],
                              [field.decode(x) for x in wit["image"]])
        return cover

    def __repr__(self):
        return f"EtaleCover({self.field}, n={self.n}, map={self.map})"


def identity_cover(n: int, field: FieldDescriptor) -> EtaleCover:
    return EtaleCover(field, n, PolyRing(field, n).gens)


# ---------------------------------------------------------------------------

class ConstraintSystem:
    """Points of ``K^nvars`` with every equation zero and every inequation nonzero.

    ``projection`` lists the polynomials whose values are reported as the
    image of a solution (for an intersection: the common image point).
    """

    def __init__(self, field: FieldDescriptor, nvars: int, equations, inequations=(),
                 projection=None):
        self.field = field
        self.nvars = nvars
        self.equations = list(equations)
        self.inequations = list(inequations)
        for f in self.equations + self.inequations + list(projection or []):
            if f.nvars != nvars:
                raise DimensionMismatch("polynomial arity differs from the system")
        ring = PolyRing(field, nvars)
        self.projection = list(projection) if projection is not None else ring.gens

    def is_solution(self, v) -> bool:
        v = _point(self.field, v)
        return (all(not f.evaluate(v) for f in self.equations)
                and all(g.evaluate(v) for g in self.inequations))

    def project(self, v) -> tuple:
        v = _point(self.field, v)
        return tuple(f.evaluate(v) for f in self.projection)

    def solutions(self, limit: int | None = None) -> list[tuple]:
        return [v for v in _domain(self.field, self.nvars, limit) if self.is_solution(v)]

    def projected_image(self) -> set:
        return {self.project(v) for v in self.solutions()}

    def fix(self, w) -> ConstraintSystem:
        """The same system with the projection pinned to ``w``."""
        w = _point(self.field, w)
        if len(w) != len(self.projection):
            raise DimensionMismatch("point length differs from the projection")
        extra = [f - c for f, c in zip(self.projection, w)]
        return ConstraintSystem(self.field, self.nvars, self.equations + extra,
                                self.inequations, self.projection)

    def solvable_at(self, w) -> bool:
        return bool(self.fix(w).solutions())

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "variables": self.nvars,
                "equations": [f.to_json() for f in self.equations],
                "inequations": [g.to_json() for g in self.inequations],
                "projection": [f.to_json() for f in self.projection]}


# ---------------------------------------------------------------------------
# membership

def _int_model(f: MultiPoly, p: int, M: int):
    out = []
    for e, c in f.terms.items():
        v = c.value
        if not v.is_zero and v.valuation < 0:
            raise UnsupportedField("p-adic search needs integral coefficients")
        out.append((e, v.to_int_mod(M)))
    return out


def _eval_int(model, x, mod: int) -> int:
    acc = 0
    for e, c in model:
        t = c
        for xi, k in zip(x, e):
            if k:
                t = t * pow(xi, k, mod) % mod
        acc += t
    return acc % mod


def _partial_int(model, i: int):
    out = []
    for e, c in model:
        if e[i]:
            ne = list(e)
            ne[i] -= 1
            out.append((tuple(ne), c * e[i]))
    return out


def _det_mod(J, mod: int) -> int:
    from .matrix import det
    # integers form a ring; the division-free determinant applies verbatim
    return det([list(row) for row in J]) % mod


def _solve_mod(J, r, p: int, mod: int):
    """Solve ``J d = r`` modulo ``mod = p**k`` for ``J`` invertible mod ``p``."""
    n = len(J)
    A = [list(row) + [r[i]] for i, row in enumerate(J)]
    for col in range(n):
        piv = next(i for i in range(col, n) if A[i][col] % p)
        A[col], A[piv] = A[piv], A[col]
        inv = pow(A[col][col], -1, mod)
        A[col] = [x * inv % mod for x in A[col]]
        for i in range(n):
            if i != col and A[i][col] % mod:
                c = A[i][col]
                A[i] = [(x - c * y) % mod for x, y in zip(A[i], A[col])]
    return [A[i][n] for i in range(n)]


def _padic_witness(c: EtaleCover, w: tuple, trace: list | None):
    K = c.field
    p = K.p
    wv = [x.value for x in w]
    if any(not x.is_zero and x.valuation < 0 for x in wv):
        raise Inconclusive("target is not integral; only integral preimages are searched")
    coeffs = [t.value for f in c.map + c.inequations for t in f.terms.values()]
    known = [x.absolute_precision for x in coeffs + wv if not x.is_zero]
    M = int(min([K.precision] + known))
    mod = p**M
    F = [_int_model(f, p, M) for f in c.map]
    G = [_int_model(g, p, M) for g in c.inequations]
    dF = [[_partial_int(f, j) for j in range(c.nvars)] for f in F]
    target = [x.to_int_mod(M) for x in wv]
    m = c.nvars
    if m != c.n:
        raise DimensionMismatch("p-adic lifting needs a square system")
    if p**m > budget():
        raise BudgetExceeded(f"{p**m} residue seeds exceed the budget")

    def residual(x):
        return [(_eval_int(f, x, mod) - t) % mod for f, t in zip(F, target)]

    def val(vec):
        return min(min(int_valuation(r, p), M) for r in vec) if vec else M

    residue_hits = 0
    for seed in product(range(p), repeat=m):
        if val(residual(seed)) < 1:
            continue
        residue_hits += 1
        J0 = [[_eval_int(d, seed, p) for d in row] for row in dF]
        if _det_mod(J0, p) == 0:
            continue
        x = list(seed)
        steps = []
        r = val(residual(x))
        while True:
            steps.append(r)
            if r >= M:
                break
            J = [[_eval_int(d, x, mod) for d in row] for row in dF]
            delta = _solve_mod(J, residual(x), p, mod)
            x = [(xi - di) % mod for xi, di in zip(x, delta)]
            r = val(residual(x))
        # inequations must be visibly nonzero at the available precision
        if any(int_valuation(_eval_int(g, x, mod), p) >= M for g in G):
            continue
        point = tuple(FieldElement(K, PadicNumber.from_scaled_int(p, xi, 0, M))
                      if xi else K.zero for xi in x)
        if not c.check_witness(point, w):  # pragma: no cover - guarded by construction
            continue
        if trace is not None:
            trace.extend(steps)
        return point
    if residue_hits:
        raise Inconclusive(f"{residue_hits} residue solutions, none with unit Jacobian")
    return None


def membership_witness(c: EtaleCover, w, trace: list | None = None):
    """A domain point ``v`` with ``c(v) = w``, or ``None`` if none exists.

    Over a finite field the whole domain is searched.  Over ``Q_p`` the
    residues mod ``p`` are searched for a seed with unit Jacobian, which is
    then Newton-lifted; ``trace`` collects the residual valuations of the
    iterates.  Only integral preimages are considered there, so ``None``
    means no integral preimage exists.
    """
    w = _point(c.field, w)
    if len(w) != c.n:
        raise DimensionMismatch(f"point of length {len(w)} in dimension {c.n}")
    for v, img in c.witnesses:
        if img == w:
            return v
    if c.field.kind == PADIC:
        return _padic_witness(c, w, trace)
    for v in _domain(c.field, c.nvars):
        if c.check_witness(v, w):
            return v
    return None


def image(c: EtaleCover, field: FieldDescriptor | None = None) -> set:
    """Every ``c(v)`` over the admissible ``v``; finite fields only."""
    if field is not None and field != c.field:
        raise DescriptorMismatch(f"cover over {c.field}, asked for {field}")
    return {c(v) for v in _domain(c.field, c.nvars) if c.admissible(v)}


# ---------------------------------------------------------------------------
# constructions

def intersect(c1: EtaleCover, c2: EtaleCover) -> ConstraintSystem:
    """Fiber product of the two maps: ``c1(v1) = c2(v2)`` with both domains."""
    if c1.n != c2.n or c1.field != c2.field:
        raise DimensionMismatch("covers live in different ambient spaces")
    m1, m2 = c1.nvars, c2.nvars
    ring = PolyRing(c1.field, m1 + m2)
    f1 = [f.embed(ring, 0) for f in c1.map]
    f2 = [f.embed(ring, m1) for f in c2.map]
    ineq = [g.embed(ring, 0) for g in c1.inequations] + [g.embed(ring, m1) for g in c2.inequations]
    return ConstraintSystem(c1.field, m1 + m2, [a - b for a, b in zip(f1, f2)], ineq, f1)


def affine_transform(c: EtaleCover, shift, scale) -> EtaleCover:
    """Cover of ``{scale * x + shift : x in image(c)}`` (coordinatewise)."""
    K = c.field
    shift, scale = _point(K, shift), _point(K, scale)
    if len(shift) != c.n or len(scale) != c.n:
        raise DimensionMismatch("shift and scale need one entry per coordinate")
    if not all(scale):
        raise ZeroScale("scale entries must be nonzero")
    new_map = [f * s + b for f, s, b in zip(c.map, scale, shift)]
    out = EtaleCover(K, c.n, new_map, c.inequations)
    for v, w in c.witnesses:
        out.add_witness(v, tuple(s * x + b for x, s, b in zip(w, scale, shift)))
    return out


def split_cover(n: int, field: FieldDescriptor) -> EtaleCover:
    """``H(b)`` = coefficients of ``prod (x - b_i)``, constant term first.

    Its Jacobian is ``±prod_{i<j} (b_i - b_j)``, so the étale condition is
    exactly "the ``b_i`` are distinct" and the image is the set of monic
    polynomials with ``n`` distinct roots in ``K``.
    """
    if n < 2:
        raise DegreeTooSmall("split cover needs n >= 2")
    if n > 5:
        raise DegreeTooLarge("split cover limited to n <= 5")
    ring = PolyRing(field, n)
    xs = ring.gens
    # coefficients of prod (x - x_i), built one linear factor at a time
    coeffs = [ring.one]
    for xi in xs:
        nxt = [ring.zero] * (len(coeffs) + 1)
        for k, ck in enumerate(coeffs):
            nxt[k + 1] = nxt[k + 1] + ck
            nxt[k] = nxt[k] - ck * xi
        coeffs = nxt
    H = coeffs[:n]
    return EtaleCover(field, n, H)


def disjointness_demo(field: FieldDescriptor, a) -> bool:
    """The class cover of irreducible ``a`` and the split cover: both nonempty, disjoint."""
    from .extensions import MonicVector, in_U
    from .krasner import build, krasner_cover
    if not isinstance(a, MonicVector):
        a = MonicVector.of(field, a)
    if not in_U(a):
        raise NotInU(f"{a} is not separable and irreducible")
    X = image(krasner_cover(build(a)))
    Y = image(split_cover(a.n, field))
    return bool(X) and bool(Y) and X.isdisjoint(Y)


def _line(field: FieldDescriptor, p_pt, q_pt, ring: PolyRing) -> list:
    t = ring.gen(0)
    return [p * (ring.one - t) + q * t for p, q in zip(p_pt, q_pt)]


def _pullback(c: EtaleCover, line: list, ring: PolyRing) -> ConstraintSystem:
    vs = [f.embed(ring, 1) for f in c.map]
    ineq = [g.embed(ring, 1) for g in c.inequations]
    eqs = [f - l for f, l in zip(vs, line)]
    return ConstraintSystem(c.field, ring.nvars, eqs, ineq, [ring.gen(0)])


def separate_points(X: EtaleCover, Y: EtaleCover, pt_p, pt_q):
    """Pull both covers back along ``t -> (1 - t) pt_p + t pt_q``.

    Returns two systems in ``t`` and auxiliary domain variables; the
    projection of each is the parameter ``t``.  ``t = 0`` solves the first
    and ``t = 1`` the second.
    """
    K = X.field
    if Y.field != K or X.n != Y.n or X.nvars != Y.nvars:
        raise DimensionMismatch("covers live in different ambient spaces")
    pt_p, pt_q = _point(K, pt_p), _point(K, pt_q)
    if membership_witness(X, pt_p) is None:
        raise WitnessMissing(f"{pt_p} is not in the first EE set")
    if membership_witness(Y, pt_q) is None:
        raise WitnessMissing(f"{pt_q} is not in the second EE set")
    ring = PolyRing(K, 1 + X.nvars)
    line = _line(K, pt_p, pt_q, ring)
    return _pullback(X, line, ring), _pullback(Y, line, ring)
