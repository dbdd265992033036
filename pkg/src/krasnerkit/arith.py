"""Arithmetic consequences at desk scale.

Finite-field indices of the power and Artin-Schreier subgroups, coset
sums, the conic ``a c^2 + b d^2 = 1``, the power-sum equation
``c^m + a e^m = b``, rational four-square decompositions with the cycle
refutation they feed, and sampled Krasner neighbourhoods over ``Q_p``.

The statements behind the coset-sum and power-sum checks concern infinite
fields; small finite fields can violate them (squares in ``F_3``, cubes in
``F_7``), so those functions report booleans rather than assert.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (BudgetExceeded, NegativeInput, PrecisionExhausted,
                     UnsupportedCharacteristic, UnsupportedDegree, UnsupportedField, ZeroInput)
from .fields import PADIC, FieldDescriptor, FieldElement, is_square, sqrt
from .padic import rational_valuation

MAX_ORDER = 10**4


def _check_finite(d: FieldDescriptor) -> None:
    if not d.is_finite:
        raise UnsupportedField(f"{d} is not finite")
    if d.order > MAX_ORDER:
        raise BudgetExceeded(f"q = {d.order} exceeds {MAX_ORDER}")


@dataclass
class CosetTable:
    field: FieldDescriptor
    subgroup: str
    index: int
    representatives: list
    subgroup_size: int
    group_order: int
    expected: int
    cosets: list = field(default_factory=list, repr=False)

    @property
    def matches(self) -> bool:
        return self.index == self.expected

    def to_json(self) -> dict:
        enc = self.field.encode
        return {"field": self.field.to_json(), "subgroup": self.subgroup, "index": self.index,
                "representatives": [enc(r) for r in self.representatives],
                "subgroup_size": self.subgroup_size, "group_order": self.group_order,
                "expected": self.expected, "matches": self.matches}


def _coset_table(d, name, group, H, op, expected) -> CosetTable:
    reps, cosets, seen = [], [], set()
    for x in group:
        if x in seen:
            continue
        coset = {op(x, h) for h in H}
        seen |= coset
        reps.append(x)
        cosets.append(coset)
    return CosetTable(d, name, len(reps), reps, len(H), len(group), expected, cosets)


def power_subgroup_index(d: FieldDescriptor, m: int) -> CosetTable:
    """``[K* : P_m]`` by listing the ``m``-th powers; expected ``gcd(m, q - 1)``."""
    _check_finite(d)
    if m < 1:
        raise ValueError("m must be positive")
    units = [x for x in d.elements() if x]
    H = {x**m for x in units}
    return _coset_table(d, f"P_{m}", units, H, lambda x, h: x * h, math.gcd(m, d.order - 1))


def artin_schreier_index(d: FieldDescriptor) -> CosetTable:
    """``[K : wp(K)]`` for ``wp(x) = x^p - x``; the kernel is ``F_p`` so the index is ``p``."""
    _check_finite(d)
    p = d.characteristic
    elems = list(d.elements())
    H = {x**p - x for x in elems}
    return _coset_table(d, "wp(K)", elems, H, lambda x, h: x + h, p)


@dataclass
class CosetSumReport:
    table: CosetTable
    pairs: dict

    @property
    def all_cover(self) -> bool:
        return all(self.pairs.values())

    def to_json(self) -> dict:
        return {"table": self.table.to_json(),
                "pairs": [{"i": i, "j": j, "covers": v} for (i, j), v in sorted(self.pairs.items())],
                "all_cover": self.all_cover}


def coset_sum_covers(d: FieldDescriptor, m: int) -> CosetSumReport:
    """For cosets ``H_i, H_j`` of ``P_m``: does ``H_i + H_j`` contain every nonzero element?"""
    table = power_subgroup_index(d, m)
    k = table.index
    work = k * k * table.subgroup_size**2
    if work > 10**8:
        raise BudgetExceeded(f"{work} additions exceed the budget")
    units = {x for x in d.elements() if x}
    pairs = {}
    for i, Hi in enumerate(table.cosets):
        for j, Hj in enumerate(table.cosets):
            sums = {x + y for x in Hi for y in Hj}
            pairs[(i, j)] = units <= sums
    return CosetSumReport(table, pairs)


# ---------------------------------------------------------------------------

def conic_solve(d: FieldDescriptor, a, b) -> tuple:
    """``(c, e)`` with ``a c^2 + b e^2 = 1``.

    Scans ``c`` in index order over ``K*`` and takes the smaller-index
    square root of ``(1 - a c^2) / b`` when it is a nonzero square; only if
    that fails are the zero coordinates allowed.
    """
    _check_finite(d)
    if d.characteristic == 2:
        raise UnsupportedCharacteristic("conic solver needs odd characteristic")
    a, b = d(a), d(b)
    if not a or not b:
        raise ZeroInput("a and b must be nonzero")
    elems = list(d.elements())
    for allow_zero in (False, True):
        for c in elems:
            if not c and not allow_zero:
                continue
            t = (d.one - a * c * c) / b
            if not t:
                if allow_zero:
                    return c, d.zero
                continue
            if is_square(t):
                return c, sqrt(t)
    raise AssertionError("every nondegenerate conic over a finite field has a point")


def power_sum_solve(d: FieldDescriptor, m: int, a, b, nonzero: bool = False):
    """First ``(c, e)`` in ascending order with ``c^m + a e^m = b``, or ``None``.

    ``nonzero=True`` restricts both to ``K*``.
    """
    _check_finite(d)
    a, b = d(a), d(b)
    elems = [x for x in d.elements() if x or not nonzero]
    powers = {x: x**m for x in elems}
    for c in elems:
        target = b - powers[c]
        for e in elems:
            if a * powers[e] == target:
                return c, e
    return None


# ---------------------------------------------------------------------------

def _four_squares_int(n: int) -> tuple:
    """Lexicographically largest ``z1 >= z2 >= z3 >= z4 >= 0`` with squares summing to ``n``."""
    z1 = math.isqrt(n)
    while 4 * z1 * z1 >= n:
        r1 = n - z1 * z1
        z2 = min(z1, math.isqrt(r1))
        while 3 * z2 * z2 >= r1:
            r2 = r1 - z2 * z2
            z3 = min(z2, math.isqrt(r2))
            while 2 * z3 * z3 >= r2:
                r3 = r2 - z3 * z3
                z4 = math.isqrt(r3)
                if z4 * z4 == r3 and z4 <= z3:
                    return z1, z2, z3, z4
                z3 -= 1
            z2 -= 1
        z1 -= 1
    raise AssertionError(f"no four-square decomposition of {n}")  # pragma: no cover


def four_squares(n) -> tuple:
    """Four rationals, largest first, whose squares sum to ``n``.

    For ``n = p/q`` in lowest terms the integer ``pq`` is decomposed and
    each part divided by ``q``.
    """
    n = Fraction(n)
    if n < 0:
        raise NegativeInput(f"{n} is negative")
    p, q = n.numerator, n.denominator
    parts = _four_squares_int(p * q)
    return tuple(Fraction(z, q) for z in parts)


@dataclass
class SopnReport:
    pairs: list
    cyclic: bool
    telescoped: Fraction | None

    @property
    def holds(self) -> bool:
        return all(entry["holds"] for entry in self.pairs)

    @property
    def refuted(self) -> bool:
        return not self.holds

    def to_json(self) -> dict:
        def enc(entry):
            out = {"x": str(entry["x"]), "y": str(entry["y"]), "arg": str(entry["arg"]),
                   "holds": entry["holds"]}
            if entry["witness"] is not None:
                out["witness"] = [str(z) for z in entry["witness"]]
            return out
        return {"pairs": [enc(e) for e in self.pairs], "cyclic": self.cyclic,
                "telescoped": None if self.telescoped is None else str(self.telescoped),
                "holds": self.holds}


def sopn_check(chain, cyclic: bool = False) -> SopnReport:
    """Test ``x - y - 1 = z1^2 + z2^2 + z3^2 + z4^2`` on consecutive pairs of ``chain``.

    Over ``Q`` the right side ranges over the nonnegative rationals, so each
    pair either gets a four-square witness or is refuted by sign.  Around a
    cycle of length ``k`` the arguments telescope to ``-k``, so some pair
    must fail.
    """
    chain = [Fraction(x) for x in chain]
    if len(chain) < 2:
        raise ValueError("chain needs at least two entries")
    links = list(zip(chain, chain[1:]))
    if cyclic:
        links.append((chain[-1], chain[0]))
    pairs = []
    for x, y in links:
        arg = x - y - 1
        if arg >= 0:
            z = four_squares(arg)
            assert sum(zi * zi for zi in z) == arg
            pairs.append({"x": x, "y": y, "arg": arg, "holds": True, "witness": z})
        else:
            pairs.append({"x": x, "y": y, "arg": arg, "holds": False, "witness": None})
    telescoped = sum((e["arg"] for e in pairs), Fraction(0)) if cyclic else None
    return SopnReport(pairs, cyclic, telescoped)


# ---------------------------------------------------------------------------

@dataclass
class VadicReport:
    a: object
    radius: int
    samples: int
    passed: int
    failed: int
    verdicts: list
    krasner_bound: int
    minimal_radius: int | None
    precision_notes: list

    @property
    def all_pass(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        K = self.a.field
        return {"a": self.a.to_json(), "radius": self.radius, "samples": self.samples,
                "passed": self.passed, "failed": self.failed,
                "verdicts": [{"b": [K.encode(x) for x in b], "in_U": u, "equiv": e}
                             for b, u, e in self.verdicts],
                "krasner_bound": self.krasner_bound, "minimal_radius": self.minimal_radius,
                "precision_notes": self.precision_notes}


def _perturb(a, radius: int, rng: random.Random):
    K = a.field
    span = K.p ** max(1, K.precision - radius)
    # shift the exact representatives so a cancelling sum cannot lose digits
    return tuple(K(c.value.to_fraction() + K.p**radius * rng.randrange(span)) for c in a.a)


def _sample_radius(a, radius: int, samples: int, rng: random.Random):
    from .extensions import MonicVector, equiv, in_U
    verdicts = []
    for _ in range(samples):
        b = _perturb(a, radius, rng)
        bv = MonicVector(a.field, b)
        u = in_U(bv)
        verdicts.append((b, u, bool(u and equiv(a, bv))))
    return verdicts


def krasner_vadic_check(a, radius: int, samples: int, seed: int = 0) -> VadicReport:
    """Perturb ``a`` by ``p^radius`` in every coordinate and test ``b ≈ a``.

    Also doubles the radius from 1 until a batch of the same size passes
    completely, and records the classical bound ``v(disc) + 1``.
    """
    from .extensions import in_U
    from .poly import discriminant
    K = a.field
    if K.kind != PADIC:
        raise UnsupportedField("v-adic neighbourhoods are checked over Q_p")
    if a.n != 2:
        raise UnsupportedDegree("the p-adic classification is implemented for n = 2")
    if K.p == 2:
        raise UnsupportedCharacteristic("odd p only")
    if radius < 1 or radius > K.precision - 2:
        raise PrecisionExhausted(f"radius {radius} outside 1..{K.precision - 2}")
    if not in_U(a):
        from .errors import NotInU
        raise NotInU(f"{a} is not separable and irreducible")
    disc = discriminant(a.to_poly())
    bound = int(disc.value.valuation) + 1
    rng = random.Random(seed)
    verdicts = _sample_radius(a, radius, samples, rng)
    passed = sum(1 for _, u, e in verdicts if e)
    minimal = None
    r = 1
    while r <= K.precision - 2:
        if all(e for _, _, e in _sample_radius(a, r, samples, rng)):
            minimal = r
            break
        r *= 2
    notes = [f"working precision {K.precision} digits"]
    return VadicReport(a, radius, samples, passed, samples - passed, verdicts,
                       bound, minimal, notes)


def square_class_oracle(x: Fraction, p: int) -> tuple:
    """Square class of a nonzero rational in ``Q_p`` (odd ``p``): parity of ``v`` and unit residue character."""
    x = Fraction(x)
    v = rational_valuation(x, p)
    u = x / Fraction(p) ** v
    r = u.numerator * pow(u.denominator, -1, p) % p
    return int(v) % 2, pow(r, (p - 1) // 2, p) == 1
