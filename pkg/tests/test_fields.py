import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from krasnerkit import GF, Q, Qp, FieldDescriptor, enumerate_field, is_square, padic_val, sqrt
from krasnerkit.errors import (DescriptorMismatch, DivisionByZero, HenselHypothesisFailed,
                               InfiniteField, PrecisionExhausted, UnsupportedCharacteristic,
                               ZeroInput)
from krasnerkit.fields import arith
from krasnerkit.padic import PadicNumber, hensel_lift_root
from krasnerkit.poly import Poly

DESCRIPTORS = [Q(), GF(2), GF(5), GF(13), GF(4), GF(9), GF(5, [2, 0, 1]), GF(8)]


def test_arith_examples():
    K = Q()
    assert arith("add", K(Fraction(2, 3)), K(Fraction(1, 6))) == K(Fraction(5, 6))
    assert arith("inv", GF(5)(3)) == GF(5)(2)
    F25 = GF(5, [2, 0, 1])
    t = F25.generator()
    assert arith("mul", t, t) == F25(3)


def test_descriptor_mismatch_and_division():
    with pytest.raises(DescriptorMismatch):
        GF(5)(1) + GF(7)(1)
    with pytest.raises(DivisionByZero):
        GF(5)(1) / GF(5)(0)
    with pytest.raises(ZeroDivisionError):
        Q()(0).inverse()


def test_descriptor_validation():
    with pytest.raises(ValueError):
        GF(6, [1, 1])
    with pytest.raises(ValueError):
        GF(5, [1, 0, 1])  # x^2 + 1 splits mod 5
    with pytest.raises(ValueError):
        Qp(5, 0)


@pytest.mark.parametrize("K", DESCRIPTORS, ids=str)
def test_field_axioms(K):
    rng = random.Random(7)
    for _ in range(1000):
        x, y, z = (K.random_element(rng, bound=50) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + (-x) == K.zero
        if x:
            assert x * x.inverse() == K.one


def test_rational_payload_normalised():
    x = Q()(Fraction(6, -4))
    assert x.value.denominator == 2 and x.value.numerator == -3


def test_padic_val_examples():
    assert padic_val(50, 5) == 2
    assert padic_val(Qp(5, 10)(0)) == math.inf
    assert padic_val(Fraction(3, 10), 5) == -1


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_padic_val_additive(x, y):
    for p in (2, 3, 7):
        assert padic_val(x * y, p) == padic_val(x, p) + padic_val(y, p)


def test_is_square_examples():
    K = Qp(5, 10)
    assert is_square(K(6))
    assert not is_square(K(2))
    assert is_square(GF(7)(4))
    with pytest.raises(UnsupportedCharacteristic):
        is_square(Qp(2, 10)(3))
    with pytest.raises(ZeroInput):
        is_square(GF(7)(0))


@pytest.mark.parametrize("K", [GF(3), GF(7), GF(13), GF(9), GF(25), GF(27)], ids=str)
def test_half_the_units_are_squares(K):
    units = [x for x in K.elements() if x]
    assert sum(is_square(x) for x in units) == (K.order - 1) // 2


@pytest.mark.parametrize("K", [GF(7), GF(11), GF(9), GF(4), GF(8)], ids=str)
def test_sqrt_finite(K):
    for x in K.elements():
        if x and is_square(x):
            r = sqrt(x)
            assert r * r == x
            assert r.index() <= (-r).index()


def test_sqrt_padic():
    K = Qp(7, 12)
    r = sqrt(K(2 * 49))
    assert r * r == K(98)
    assert padic_val(r) == 1
    # exact check on the representative
    rep = r.value.to_fraction()
    assert padic_val(rep * rep - 98, 7) >= 2 + 12


def test_hensel_examples():
    K = Qp(7, 12)
    f = Poly(K, [-2, 0, 1])
    trace = []
    r = hensel_lift_root(f, PadicNumber.from_rational(3, 7, 12), 6, trace)
    rep = r.to_fraction()
    assert (rep * rep - 2).numerator % 7**6 == 0
    assert int(rep) % 7 == 3
    # quadratic convergence on the residual valuations
    assert trace == sorted(trace) and trace[0] == 1
    # the final residual is capped by the working width target + 2*delta + 1
    for a, b in zip(trace, trace[1:]):
        assert b >= min(2 * a, 7)
    assert trace[-1] >= 6
    K5 = Qp(5, 12)
    lin = Poly(K5, [-5, 1])
    assert hensel_lift_root(lin, PadicNumber.from_rational(5, 5, 12), 8).to_fraction() == 5
    with pytest.raises(HenselHypothesisFailed):
        hensel_lift_root(Poly(K5, [-5, 0, 1]), PadicNumber.zero(5, 12), 4)


def test_hensel_residual_oracle():
    # independent check against the integer square root mod 7^k by brute force
    K = Qp(7, 8)
    r = hensel_lift_root(Poly(K, [-2, 0, 1]), PadicNumber.from_rational(4, 7, 8), 4)
    roots = [x for x in range(7**4) if (x * x - 2) % 7**4 == 0]
    assert int(r.to_fraction()) % 7**4 in roots
    assert int(r.to_fraction()) % 7 == 4


def test_precision_exhausted_on_cancellation():
    K = Qp(5, 6)
    x = K(7)
    with pytest.raises(PrecisionExhausted):
        x - K(7)


def test_padic_precision_rules():
    a = PadicNumber.from_rational(1, 5, 6)
    b = PadicNumber.from_rational(1 + 5**3, 5, 8)
    d = b - a
    assert d.valuation == 3
    assert d.absolute_precision == 6
    assert (a * b).precision == 6


def test_enumerate_field():
    assert [x.value for x in enumerate_field(GF(3))] == [0, 1, 2]
    assert len(list(enumerate_field(GF(4)))) == 4
    with pytest.raises(InfiniteField):
        list(enumerate_field(Q()))
    idx = [x.index() for x in enumerate_field(GF(9))]
    assert idx == list(range(9))


@pytest.mark.parametrize("K", [Q(), GF(5), GF(9), Qp(5, 12)], ids=str)
def test_json_round_trip(K):
    assert FieldDescriptor.from_json(K.to_json()) == K
    rng = random.Random(1)
    for _ in range(30):
        x = K.random_element(rng)
        assert K.decode(K.encode(x)) == x


def test_padic_json_format():
    K = Qp(5, 4)
    assert K.encode(K(50)) == {"val": 2, "digits": [2, 0, 0, 0]}
    assert K.encode(K(0))["val"] == "inf"


@settings(max_examples=200)
@given(st.integers(-10**6, 10**6), st.integers(1, 10**4))
def test_padic_matches_rational_arithmetic(n, d):
    p = 7
    x, y = Fraction(n, d), Fraction(d + 3, 1)
    K = Qp(p, 10)
    prod = K(x) * K(y)
    assert prod == K(x * y)
    if x + y:
        s = K(x) + K(y)
        assert s == K(x + y)
