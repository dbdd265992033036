import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from krasnerkit import GF, Qp, MonicVector
from krasnerkit.arith import (artin_schreier_index, conic_solve, coset_sum_covers, four_squares,
                              krasner_vadic_check, power_subgroup_index, power_sum_solve,
                              sopn_check, square_class_oracle)
from krasnerkit.errors import (NegativeInput, PrecisionExhausted, UnsupportedCharacteristic,
                               UnsupportedField, ZeroInput)
from krasnerkit.extensions import equiv

SMALL_PRIMES = [p for p in range(3, 102) if all(p % d for d in range(2, math.isqrt(p) + 1))]


def test_power_index_examples():
    assert power_subgroup_index(GF(13), 3).index == 3
    assert power_subgroup_index(GF(7), 5).index == 1
    t = power_subgroup_index(GF(7), 2)
    assert t.index == 2
    assert [r.value for r in t.representatives] == [1, 3]


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 49, 97])
def test_power_index_brute_force(q):
    # oracle on raw residues for prime q, cardinality count otherwise
    K = GF(q)
    for m in range(1, 13):
        t = power_subgroup_index(K, m)
        assert t.index == math.gcd(m, q - 1)
        assert t.index * t.subgroup_size == q - 1
        if K.degree == 1:
            powers = {pow(x, m, q) for x in range(1, q)}
            assert t.subgroup_size == len(powers)


def test_coset_representatives_distinct():
    t = power_subgroup_index(GF(31), 6)
    for i, r in enumerate(t.representatives):
        for j, s in enumerate(t.representatives):
            if i != j:
                assert s not in t.cosets[i]


def test_artin_schreier_examples():
    assert artin_schreier_index(GF(9)).index == 3
    assert artin_schreier_index(GF(4)).index == 2
    t = artin_schreier_index(GF(5))
    assert t.index == 5 and t.subgroup_size == 1


@pytest.mark.parametrize("q", [4, 5, 8, 9, 25, 27, 32, 49])
def test_artin_schreier_index_is_char(q):
    t = artin_schreier_index(GF(q))
    assert t.index == GF(q).characteristic
    assert t.matches


def _coset_oracle(p, m):
    # plain integer double loop over Z/p
    H = {pow(x, m, p) for x in range(1, p)}
    cosets, seen = [], set()
    for x in range(1, p):
        if x not in seen:
            c = {x * h % p for h in H}
            seen |= c
            cosets.append(c)
    units = set(range(1, p))
    return {(i, j): units <= {(x + y) % p for x in Hi for y in Hj}
            for i, Hi in enumerate(cosets) for j, Hj in enumerate(cosets)}


def test_coset_sum_examples():
    assert not coset_sum_covers(GF(3), 2).all_cover
    r = coset_sum_covers(GF(13), 2)
    assert len(r.pairs) == 4 and r.all_cover
    assert coset_sum_covers(GF(11), 1).all_cover


@pytest.mark.parametrize("m", [2, 3])
def test_coset_sum_matches_oracle(m):
    for p in SMALL_PRIMES:
        assert coset_sum_covers(GF(p), m).pairs == _coset_oracle(p, m)


def test_conic_examples():
    F7 = GF(7)
    assert conic_solve(F7, 1, 1) == (F7(2), F7(2))
    assert conic_solve(F7, 3, 5) == (F7(1), F7(1))
    for b in range(1, 7):
        c, d = conic_solve(F7, 1, b)
        assert c * c + F7(b) * d * d == F7.one
    with pytest.raises(UnsupportedCharacteristic):
        conic_solve(GF(4), 1, 1)
    with pytest.raises(ZeroInput):
        conic_solve(F7, 0, 1)


@pytest.mark.parametrize("q", [9, 25, 27, 49, 81, 125])
def test_conic_prime_powers(q):
    K = GF(q)
    rng = random.Random(q)
    units = [x for x in K.elements() if x]
    for _ in range(40):
        a, b = rng.choice(units), rng.choice(units)
        c, d = conic_solve(K, a, b)
        assert a * c * c + b * d * d == K.one


def test_power_sum_examples():
    F7 = GF(7)
    assert power_sum_solve(F7, 3, 1, 3) is None
    c, e = power_sum_solve(F7, 3, 2, 4)
    assert (c, e) == (F7(3), F7(3))
    assert c**3 + F7(2) * e**3 == F7(4)
    F13 = GF(13)
    for b in range(13):
        sol = power_sum_solve(F13, 3, 1, b)
        assert sol is not None
        assert sol[0] ** 3 + sol[1] ** 3 == F13(b)


def test_power_sum_against_brute_force():
    for p in (5, 7, 11, 13):
        K = GF(p)
        for m in (2, 3):
            for a in range(1, p):
                for b in range(1, p):
                    for nonzero in (False, True):
                        rng = range(1, p) if nonzero else range(p)
                        want = next(((c, e) for c in rng for e in rng
                                     if (pow(c, m, p) + a * pow(e, m, p) - b) % p == 0), None)
                        got = power_sum_solve(K, m, a, b, nonzero=nonzero)
                        assert (None if got is None else (got[0].value, got[1].value)) == want


def test_four_squares_examples():
    assert four_squares(7) == (2, 1, 1, 1)
    assert four_squares(0) == (0, 0, 0, 0)
    z = four_squares(Fraction(3, 2))
    assert z == (1, Fraction(1, 2), Fraction(1, 2), 0)
    with pytest.raises(NegativeInput):
        four_squares(-1)


def test_four_squares_all_small_integers():
    for n in range(0, 2001):
        z = four_squares(n)
        assert sum(x * x for x in z) == n
        assert list(z) == sorted(z, reverse=True)


@settings(deadline=None)
@given(st.integers(0, 10**5), st.integers(1, 500))
def test_four_squares_rationals(p, q):
    x = Fraction(p, q)
    assert sum(z * z for z in four_squares(x)) == x


def test_sopn_examples():
    r = sopn_check([5, 1])
    assert r.holds
    z = r.pairs[0]["witness"]
    assert sum(v * v for v in z) == 3
    assert z == (1, 1, 1, 0)
    assert sopn_check([1, 5]).refuted
    cyc = sopn_check([0, 3, 7], cyclic=True)
    assert cyc.refuted and cyc.telescoped == -3


def test_sopn_cycles_always_refuted():
    rng = random.Random(0)
    for _ in range(300):
        k = rng.randint(2, 6)
        chain = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(k)]
        r = sopn_check(chain, cyclic=True)
        assert r.refuted and r.telescoped == -k


def test_square_class_oracle():
    assert square_class_oracle(2, 5) == (0, False)
    assert square_class_oracle(-3, 5) == (0, False)
    assert square_class_oracle(Fraction(6, 25), 5) == (0, True)
    assert square_class_oracle(10, 5)[0] == 1


def test_vadic_examples():
    K = Qp(5, 12)
    a = MonicVector.of(K, (-2, 0))
    assert equiv(a, MonicVector.of(K, (123, 0)))
    assert equiv(a, MonicVector.of(K, (3, 0)))
    assert equiv(a, a)


@pytest.mark.parametrize("p,a", [(5, (-2, 0)), (7, (-3, 0)), (3, (-2, 0)), (5, (-5, 0)),
                                 (5, (1, 1)), (3, (-3, 0))])
def test_vadic_check_at_krasner_radius(p, a):
    K = Qp(p, 12)
    av = MonicVector.of(K, a)
    probe = krasner_vadic_check(av, 1, 1, seed=0)
    rep = krasner_vadic_check(av, probe.krasner_bound, 40, seed=1)
    assert rep.all_pass
    assert rep.minimal_radius is not None and rep.minimal_radius <= 2 * rep.krasner_bound


def test_vadic_errors():
    K = Qp(5, 12)
    with pytest.raises(PrecisionExhausted):
        krasner_vadic_check(MonicVector.of(K, (-2, 0)), 11, 5)
    with pytest.raises(UnsupportedField):
        krasner_vadic_check(MonicVector.of(GF(5), (2, 0)), 1, 5)


def test_vadic_report_deterministic():
    K = Qp(5, 12)
    a = MonicVector.of(K, (-2, 0))
    r1 = krasner_vadic_check(a, 2, 10, seed=7).to_json()
    r2 = krasner_vadic_check(a, 2, 10, seed=7).to_json()
    assert r1 == r2
