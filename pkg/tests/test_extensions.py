import random
from itertools import product

import pytest

from krasnerkit import GF, Q, Qp, MonicVector, count_classes, equiv, has_root, in_U
from krasnerkit.arith import square_class_oracle
from krasnerkit.errors import (DegreeMismatch, NotInU, PrecisionExhausted, UnsupportedField)
from krasnerkit.extensions import (QuotientAlgebra, has_root_exhaustive, quotient_algebra,
                                   root_exists)
from krasnerkit.poly import Poly


def mv(K, *a):
    return MonicVector.of(K, a)


def U_of(K, n):
    for tail in product(list(K.elements()), repeat=n):
        a = MonicVector.of(K, tail)
        if in_U(a):
            yield a


def test_in_U_examples():
    assert in_U(mv(GF(5), 1, 1))
    assert not in_U(mv(Q(), -1, 0))
    assert not in_U(mv(GF(5), 0, 0))
    assert not in_U(mv(Q(), 0, 0))


def test_quotient_algebra_examples():
    A = quotient_algebra(mv(GF(5), 2, 0))
    assert A.alpha * A.alpha == A(3)
    B = quotient_algebra(mv(Q(), -2, 0))
    assert B.alpha * B.alpha == B(2)
    C = quotient_algebra(mv(GF(7), 3))
    assert C.alpha == C(-3)
    assert C.n == 1


@pytest.mark.parametrize("K,a", [(GF(5), (2, 0)), (GF(7), (1, 0, 3)), (Q(), (-2, 0)),
                                 (GF(9), (1, 2, 0, 1)), (GF(5), (4, 0))],
                         ids=["F5", "F7n3", "Q", "F9n4", "F5split"])
def test_defining_relation_holds(K, a):
    A = QuotientAlgebra(MonicVector.of(K, a))
    lifted = Poly(A, [A(c) for c in A.modulus.coeffs])
    assert not lifted(A.alpha)


def test_is_field_matches_irreducibility():
    K = GF(3)
    for tail in product(range(3), repeat=2):
        A = QuotientAlgebra(MonicVector.of(K, tail))
        # oracle: a field has no zero divisors
        elems = [e for e in A.elements() if e]
        zero_div = any(not (x * y) for x in elems for y in elems)
        assert A.is_field == (not zero_div)


def test_has_root_examples():
    F5 = GF(5)
    A = quotient_algebra(mv(F5, 2, 0))
    g = has_root(Poly(F5, [1, 1, 1]), A)
    assert g == A.element([2, 1])
    assert has_root(A.modulus, A) == A.alpha
    K = Qp(5, 12)
    B = quotient_algebra(mv(K, -2, 0))
    assert has_root(Poly(K, [-5, 0, 1]), B) is None


@pytest.mark.parametrize("K,n", [(GF(3), 2), (GF(5), 2), (GF(4), 2), (GF(3), 3), (GF(2), 4)], ids=str)
def test_has_root_agrees_with_exhaustive_search(K, n):
    rng = random.Random(1)
    Us = list(U_of(K, n))
    for a in rng.sample(Us, min(6, len(Us))):
        A = quotient_algebra(a)
        for _ in range(6):
            f = Poly(K, [K.random_element(rng) for _ in range(n)] + [K.one])
            fast = has_root(f, A)
            slow = has_root_exhaustive(f, A)
            assert (fast is None) == (slow is None)
            if fast is not None:
                lifted = Poly(A, [A(c) for c in f.coeffs])
                assert not lifted(fast)
            assert root_exists(f, A) == (fast is not None)


def test_has_root_over_q_only_linear():
    A = quotient_algebra(mv(Q(), -2, 0))
    with pytest.raises(UnsupportedField):
        has_root(Poly(Q(), [-2, 0, 1]), A)


def test_equiv_examples():
    assert equiv(mv(GF(5), 2, 0), mv(GF(5), 1, 1))
    K = Qp(5, 12)
    assert equiv(mv(K, -2, 0), mv(K, -3, 0))
    assert not equiv(mv(K, -2, 0), mv(K, -5, 0))


def test_equiv_errors():
    F5 = GF(5)
    with pytest.raises(NotInU):
        equiv(mv(F5, 4, 0), mv(F5, 2, 0))
    with pytest.raises(DegreeMismatch):
        equiv(mv(F5, 2, 0), mv(F5, 1, 0, 1))
    with pytest.raises(UnsupportedField):
        equiv(mv(Q(), -2, 0), mv(Q(), -3, 0))


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4), (4, 2),
                                 (5, 2), (5, 3), (7, 2), (8, 2), (9, 2)])
def test_equiv_all_pairs_finite(q, n):
    K = GF(q)
    Us = list(U_of(K, n))
    algebras = {a: quotient_algebra(a) for a in Us}
    for a in Us:
        for b in Us:
            assert equiv(a, b, algebras[a])


@pytest.mark.slow
@pytest.mark.parametrize("q,n", [(7, 3), (5, 4)])
def test_equiv_star_finite(q, n):
    # all pairs would take minutes; every b against three fixed a's
    K = GF(q)
    Us = list(U_of(K, n))
    for a in (Us[0], Us[len(Us) // 2], Us[-1]):
        A = quotient_algebra(a)
        assert all(equiv(a, b, A) for b in Us)


def _oracle_class(a, p):
    # x^2 + a1 x + a0 generates Q_p(sqrt(a1^2 - 4 a0))
    a0, a1 = (c.value.to_fraction() for c in a.a)
    return square_class_oracle(a1 * a1 - 4 * a0, p)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_padic_equiv_matches_square_classes(p):
    K = Qp(p, 12)
    rng = random.Random(p)
    pool = []
    while len(pool) < 40:
        a = mv(K, rng.randint(-p**3, p**3), rng.randint(-p**3, p**3))
        try:
            if in_U(a):
                pool.append(a)
        except PrecisionExhausted:
            continue
    for a, b in zip(pool, pool[1:] + pool[:1]):
        assert equiv(a, b) == (_oracle_class(a, p) == _oracle_class(b, p))
        assert equiv(a, b) == equiv(b, a)
        assert equiv(a, a)


def test_padic_equiv_transitive_within_classes():
    K = Qp(5, 12)
    rng = random.Random(2)
    pool = [a for a in (mv(K, rng.randint(-200, 200), rng.randint(-200, 200)) for _ in range(60))
            if in_U(a)]
    for a in pool[:10]:
        for b in pool[:10]:
            for c in pool[:10]:
                if equiv(a, b) and equiv(b, c):
                    assert equiv(a, c)


@pytest.mark.parametrize("q,n", [(5, 2), (7, 3), (3, 2), (9, 2)])
def test_count_classes_finite(q, n):
    res = count_classes(GF(q), n)
    assert res.count == 1
    assert res.examined == q**n


@pytest.mark.parametrize("p", [3, 5, 7])
def test_count_classes_padic(p):
    res = count_classes(Qp(p, 12), 2, samples=500, seed=0)
    assert res.count == 3
    assert res.accepted >= 500
    # every representative is in a distinct nontrivial square class
    classes = {_oracle_class(r, p) for r in res.representatives}
    assert len(classes) == 3 and (0, True) not in classes


def test_degree_one_is_one_class():
    assert equiv(mv(GF(5), 3), mv(GF(5), 1))
    assert count_classes(GF(5), 1).count == 1
