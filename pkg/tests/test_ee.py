import json
import random
from itertools import combinations, product

import pytest

from krasnerkit import GF, Qp, MonicVector, PolyRing, in_U
from krasnerkit.errors import (DegreeTooLarge, DimensionMismatch, NotInU, WitnessMissing,
                               ZeroScale)
from krasnerkit.ee import (EtaleCover, affine_transform, disjointness_demo, identity_cover,
                           image, intersect, membership_witness, separate_points, split_cover)
from krasnerkit.krasner import build, krasner_cover


def pts(K, *tuples):
    return {tuple(K(x) for x in t) for t in tuples}


def split_oracle(K, n):
    # coefficient tuples of prod (x - r) over n-element subsets of K, by hand
    out = set()
    for roots in combinations(list(K.elements()), n):
        coeffs = [K.one]
        for r in roots:
            nxt = [K.zero] * (len(coeffs) + 1)
            for k, c in enumerate(coeffs):
                nxt[k + 1] = nxt[k + 1] + c
                nxt[k] = nxt[k] - c * r
            coeffs = nxt
        out.add(tuple(coeffs[:n]))
    return out


def test_split_cover_examples():
    F5 = GF(5)
    c = split_cover(2, F5)
    R = c.ring
    x0, x1 = R.gens
    assert c.map == [x0 * x1, -x0 - x1]
    assert any(g == x0 - x1 or g == x1 - x0 for g in c.inequations)
    v = membership_witness(c, (2, 2))
    assert v is not None and c.check_witness(v, (2, 2))
    assert set(v) == {F5(1), F5(2)}
    assert membership_witness(c, (2, 0)) is None
    assert membership_witness(c, (0, 0)) is None
    with pytest.raises(DegreeTooLarge):
        split_cover(6, F5)


def test_image_split_F3():
    F3 = GF(3)
    img = image(split_cover(2, F3))
    # roots {0,1}: x^2 - x -> (0, 2); {0,2}: x^2 - 2x -> (0, 1); {1,2}: x^2 - 3x + 2 -> (2, 0)
    assert img == pts(F3, (0, 2), (0, 1), (2, 0))
    assert img == split_oracle(F3, 2)


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (5, 2), (5, 3),
                                 (7, 2), (7, 3), (8, 3), (9, 2), (3, 4), (5, 4)])
def test_split_image_matches_root_enumeration(q, n):
    K = GF(q)
    assert image(split_cover(n, K)) == split_oracle(K, n)


def test_identity_cover_image_is_everything():
    F3 = GF(3)
    assert image(identity_cover(2, F3)) == set(product(list(F3.elements()), repeat=2))


def test_krasner_image_inside_class():
    F5 = GF(5)
    a = MonicVector.of(F5, (1, 1))
    img = image(krasner_cover(build(a)))
    assert (F5(1), F5(1)) in img
    assert (F5(4), F5(0)) not in img
    for w in img:
        assert in_U(MonicVector(F5, w))


def test_witnesses_are_sound():
    rng = random.Random(3)
    F7 = GF(7)
    covers = [split_cover(2, F7), krasner_cover(build(MonicVector.of(F7, (1, 0))))]
    for c in covers:
        for _ in range(30):
            w = (F7(rng.randrange(7)), F7(rng.randrange(7)))
            v = membership_witness(c, w)
            if v is not None:
                # independent evaluation of every map component and inequation
                assert tuple(f.evaluate(list(v)) for f in c.map) == w
                assert all(g.evaluate(list(v)) for g in c.inequations)
            else:
                assert w not in image(c)


def test_intersect_examples():
    F5 = GF(5)
    s = split_cover(2, F5)
    sys_ss = intersect(s, s)
    assert sys_ss.solvable_at((2, 2))
    kc = krasner_cover(build(MonicVector.of(F5, (1, 1))))
    assert intersect(kc, s).solutions() == []
    F3 = GF(3)
    both = intersect(identity_cover(2, F3), split_cover(2, F3))
    assert both.projected_image() == image(split_cover(2, F3))
    with pytest.raises(DimensionMismatch):
        intersect(split_cover(2, F3), split_cover(3, F3))


def test_intersect_solvability_matches_images():
    F5 = GF(5)
    s = split_cover(2, F5)
    shifted = affine_transform(s, (1, 0), (1, 1))
    system = intersect(s, shifted)
    expected = image(s) & image(shifted)
    assert system.projected_image() == expected
    for w in product(list(F5.elements()), repeat=2):
        assert system.solvable_at(w) == (w in expected)


def test_affine_transform_examples():
    F3 = GF(3)
    s = split_cover(2, F3)
    assert image(affine_transform(s, (0, 0), (1, 1))) == image(s)
    assert image(affine_transform(s, (1, 0), (1, 1))) == pts(F3, (1, 2), (1, 1), (0, 0))
    F5 = GF(5)
    s5 = split_cover(2, F5)
    doubled = image(affine_transform(s5, (0, 0), (2, 1)))
    assert doubled == {(F5(2) * x, y) for x, y in image(s5)}
    with pytest.raises(ZeroScale):
        affine_transform(s5, (0, 0), (0, 1))


@pytest.mark.parametrize("q", [3, 5])
def test_affine_transform_pointwise(q):
    K = GF(q)
    rng = random.Random(q)
    covers = [split_cover(2, K)]
    a = next(MonicVector.of(K, t) for t in product(range(q), repeat=2)
             if in_U(MonicVector.of(K, t)))
    covers.append(krasner_cover(build(a)))
    for c in covers:
        base = image(c)
        for _ in range(6):
            shift = (K(rng.randrange(q)), K(rng.randrange(q)))
            scale = (K(rng.randrange(1, q)), K(rng.randrange(1, q)))
            moved = image(affine_transform(c, shift, scale))
            assert moved == {tuple(m * x + b for x, m, b in zip(w, scale, shift)) for w in base}


def test_disjointness_examples():
    assert disjointness_demo(GF(5), (1, 1))
    with pytest.raises(NotInU):
        disjointness_demo(GF(7), (3, 0))
    F9 = GF(9)
    a = next(MonicVector.of(F9, t) for t in product(list(F9.elements()), repeat=2)
             if in_U(MonicVector.of(F9, t)))
    assert disjointness_demo(F9, a)


def test_json_round_trip_rechecks_witnesses():
    F5 = GF(5)
    c = krasner_cover(build(MonicVector.of(F5, (1, 1))))
    c.add_witness((2, 4), (2, 0))
    obj = json.loads(json.dumps(c.to_json()))
    back = EtaleCover.from_json(obj)
    assert back.map == c.map
    assert len(back.witnesses) == 2
    obj["witnesses"][1]["image"] = [F5.encode(F5(3)), F5.encode(F5(0))]
    with pytest.raises(WitnessMissing):
        EtaleCover.from_json(obj)


def test_jacobian_always_among_inequations():
    F7 = GF(7)
    R = PolyRing(F7, 2)
    x0, x1 = R.gens
    c = EtaleCover(F7, 2, [x0 * x0 + x1, x1 * 3])
    assert any(g == x0 * 6 or g == -(x0 * 6) for g in c.inequations)


def test_separate_points():
    F5 = GF(5)
    X = krasner_cover(build(MonicVector.of(F5, (1, 1))))
    Y = split_cover(2, F5)
    first, second = separate_points(X, Y, (1, 1), (2, 2))
    t0 = {first.project(v)[0] for v in first.solutions()}
    t1 = {second.project(v)[0] for v in second.solutions()}
    assert F5(0) in t0
    assert F5(1) in t1
    assert t0.isdisjoint(t1)
    with pytest.raises(WitnessMissing):
        separate_points(X, Y, (2, 2), (2, 2))


def test_padic_membership_split():
    K = Qp(5, 12)
    c = split_cover(2, K)
    trace = []
    v = membership_witness(c, (2, 3), trace)  # x^2 + 3x + 2 = (x + 1)(x + 2)
    assert v is not None and c.check_witness(v, (2, 3))
    assert membership_witness(c, (2, 0)) is None  # x^2 + 2 has no root mod 5


def test_padic_krasner_fiber_trace_doubles():
    K = Qp(5, 12)
    c = krasner_cover(build(MonicVector.of(K, (2, 0))))
    c.witnesses.clear()
    trace = []
    v = membership_witness(c, (7, 5), trace)
    assert v is not None and c.check_witness(v, (7, 5))
    assert trace[-1] >= 12
    for a, b in zip(trace, trace[1:]):
        assert b >= min(2 * a, 12)
    # x^2 + x + 3 has square discriminant mod 5, so it is split, not in the class
    assert membership_witness(c, (3, 1)) is None
