"""Truncated p-adic numbers with relative (significant-digit) precision.

A nonzero value is stored as ``p**valuation * unit`` where ``unit`` is an
integer in ``[1, p**precision)`` prime to ``p``; only its ``precision``
low-order digits are meaningful.  The exact zero has valuation ``inf``.

Precision rules:

* ``x * y`` and ``x / y`` keep ``min(prec_x, prec_y)`` significant digits.
* ``x + y`` is known to absolute precision ``min(v_x + prec_x, v_y + prec_y)``;
  leading digits that cancel are lost.  A sum that cancels completely
  raises :class:`PrecisionExhausted` instead of inventing a zero.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import HenselHypothesisFailed, PrecisionExhausted, ZeroInput

INF = math.inf


def int_valuation(n: int, p: int) -> float:
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def rational_valuation(x, p: int) -> float:
    x = Fraction(x)
    if x == 0:
        return INF
    return int_valuation(x.numerator, p) - int_valuation(x.denominator, p)


class PadicNumber:
    __slots__ = ("p", "valuation", "unit", "precision")

    def __init__(self, p: int, valuation, unit: int, precision: int):
        if precision < 1:
            raise PrecisionExhausted("p-adic value needs at least one significant digit")
        self.p = p
        self.precision = precision
        if valuation == INF:
            self.valuation = INF
            self.unit = 0
            return
        unit %= p**precision
        if unit % p == 0:
            raise ValueError("unit part must be prime to p")
        self.valuation = int(valuation)
        self.unit = unit

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, p: int, precision: int) -> PadicNumber:
        return cls(p, INF, 0, precision)

    @classmethod
    def from_rational(cls, x, p: int, precision: int) -> PadicNumber:
        x = Fraction(x)
        if x == 0:
            return cls.zero(p, precision)
        num, den = x.numerator, x.denominator
        v = 0
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        mod = p**precision
        return cls(p, v, num * pow(den, -1, mod), precision)

    @classmethod
    def from_scaled_int(cls, p: int, n: int, shift: int, modexp: int) -> PadicNumber:
        """Value ``p**shift * n`` where ``n`` is only known modulo ``p**modexp``."""
        n %= p**modexp
        if n == 0:
            raise PrecisionExhausted("all significant digits cancelled")
        v = 0
        while n % p == 0:
            n //= p
            v += 1
        return cls(p, shift + v, n, modexp - v)

    # -- accessors ----------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return self.valuation == INF

    @property
    def absolute_precision(self):
        return INF if self.is_zero else self.valuation + self.precision

    @property
    def digits(self) -> list[int]:
        """Unit-part digits, least significant first; ``digits[0] != 0``."""
        out, u = [], self.unit
        for _ in range(self.precision if not self.is_zero else 0):
            out.append(u % self.p)
            u //= self.p
        return out

    def to_fraction(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.valuation

    def to_int_mod(self, n: int) -> int:
        """Integer representative modulo ``p**n``; requires an integral value known that far."""
        if self.is_zero:
            return 0
        if self.valuation < 0:
            raise ValueError("value is not p-integral")
        if self.absolute_precision < n:
            raise PrecisionExhausted(
                f"value known to p^{self.absolute_precision}, requested p^{n}")
        return (self.unit * self.p**self.valuation) % self.p**n

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: PadicNumber) -> None:
        if other.p != self.p:
            raise ValueError("p-adic numbers for different primes")

    def __neg__(self) -> PadicNumber:
        if self.is_zero:
            return self
        return PadicNumber(self.p, self.valuation, -self.unit, self.precision)

    def __add__(self, other: PadicNumber) -> PadicNumber:
        self._check(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        p = self.p
        absprec = min(self.absolute_precision, other.absolute_precision)
        w = min(self.valuation, other.valuation)
        s = self.unit * p ** (self.valuation - w) + other.unit * p ** (other.valuation - w)
        return PadicNumber.from_scaled_int(p, s, w, absprec - w)

    def __sub__(self, other: PadicNumber) -> PadicNumber:
        return self + (-other)

    def __mul__(self, other: PadicNumber) -> PadicNumber:
        self._check(other)
        prec = min(self.precision, other.precision)
        if self.is_zero or other.is_zero:
            return PadicNumber.zero(self.p, prec)
        return PadicNumber(self.p, self.valuation + other.valuation,
                           self.unit * other.unit, prec)

    def inverse(self) -> PadicNumber:
        if self.is_zero:
            raise ZeroDivisionError("inverse of p-adic zero")
        mod = self.p**self.precision
        return PadicNumber(self.p, -self.valuation, pow(self.unit, -1, mod), self.precision)

    def __truediv__(self, other: PadicNumber) -> PadicNumber:
        return self * other.inverse()

    def agrees(self, other: PadicNumber) -> bool:
        """Equality to the precision both operands share."""
        self._check(other)
        if self.is_zero and other.is_zero:
            return True
        absprec = min(self.absolute_precision, other.absolute_precision)
        diff = self.to_fraction() - other.to_fraction()
        return rational_valuation(diff, self.p) >= absprec

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        mod = self.p**self.precision
        u = self.unit - mod if self.unit > mod // 2 else self.unit
        head = str(u) if self.valuation == 0 else f"{u}*{self.p}^{self.valuation}"
        return f"{head} + O({self.p}^{self.absolute_precision})"


def _poly_int_model(coeffs: list[PadicNumber]):
    """Scale a p-adic polynomial to integral coefficients.

    Returns (integer coefficients, absolute precision of the scaled model).
    """
    nonzero = [c for c in coeffs if not c.is_zero]
    if not nonzero:
        raise ZeroInput("zero polynomial")
    p = nonzero[0].p
    shift = max(0, -min(c.valuation for c in nonzero))
    known = min(c.absolute_precision + shift for c in nonzero)
    ints = []
    for c in coeffs:
        fr = c.to_fraction() * Fraction(p) ** shift
        assert fr.denominator == 1
        ints.append(fr.numerator)
    return ints, known


def _eval_mod(ints: list[int], x: int, mod: int) -> int:
    acc = 0
    for c in reversed(ints):
        acc = (acc * x + c) % mod
    return acc


def _capped_val(n: int, p: int, cap: int) -> int:
    v = int_valuation(n, p)
    return cap if v >= cap else int(v)


def hensel_lift_root(f, x0, target_precision: int, trace: list | None = None) -> PadicNumber:
    """Newton-lift an approximate root ``x0`` of ``f`` to ``target_precision`` digits.

    ``f`` is a univariate polynomial whose coefficients are p-adic field
    elements; ``x0`` must be p-integral.  The returned root ``r`` satisfies
    ``r = root + O(p**target_precision)`` (absolute precision).  If ``trace``
    is a list, the residual valuation ``v(f(x_k))`` of every iterate is
    appended, followed by nothing else.
    """
    coeffs = [getattr(c, "value", c) for c in f.coeffs]
    x0 = getattr(x0, "value", x0)
    p = x0.p
    if not x0.is_zero and x0.valuation < 0:
        raise ValueError("starting point must be p-integral")
    ints, known = _poly_int_model(coeffs)
    dints = [i * c for i, c in enumerate(ints)][1:]

    # exact integer model; W digits is ample for the Newton steps below
    seed = x0.to_fraction().numerator
    probe = p ** (known + 64)
    delta = _capped_val(_eval_mod(dints, seed, probe), p, known + 64)
    if delta >= known:
        raise HenselHypothesisFailed("derivative vanishes to the available precision")
    if target_precision + delta > known:
        raise PrecisionExhausted(
            f"root only determined to p^{known - delta}, requested p^{target_precision}")
    width = target_precision + 2 * delta + 1
    mod = p**width
    x = seed % mod
    r = _capped_val(_eval_mod(ints, x, mod), p, width)
    if r <= 2 * delta:
        raise HenselHypothesisFailed(f"v(f(x0)) = {r} <= 2*v(f'(x0)) = {2 * delta}")
    pd = p**delta
    for _ in range(200):
        if trace is not None:
            trace.append(r)
        if r >= target_precision + delta:
            break
        fx = _eval_mod(ints, x, mod)
        dfx = _eval_mod(dints, x, mod)
        x = (x - (fx // pd) * pow(dfx // pd, -1, mod)) % mod
        r = _capped_val(_eval_mod(ints, x, mod), p, width)
    else:  # pragma: no cover - Newton converges quadratically
        raise RuntimeError("Newton iteration did not converge")

    root = x % p**target_precision
    if root == 0:
        if coeffs[0].is_zero:
            return PadicNumber.zero(p, target_precision)
        raise PrecisionExhausted("root is zero to the requested precision")
    return PadicNumber.from_scaled_int(p, root, 0, target_precision)
