"""
EE sets as étale covers
=======================

An EE set is the image of an étale map on an open subset of affine space.
Two of them separate irreducible from split quadratics over F_5.
"""

from krasnerkit import GF, MonicVector
from krasnerkit.ee import (affine_transform, image, intersect, membership_witness,
                           separate_points, split_cover)
from krasnerkit.krasner import build, krasner_cover

F5 = GF(5)
Y = split_cover(2, F5)
print("split map:", Y.map)
print("witness for x^2 + 2x + 2:", membership_witness(Y, (2, 2)))
print("x^2 + 2 split?", membership_witness(Y, (2, 0)) is not None)

X = krasner_cover(build(MonicVector.of(F5, (1, 1))))
print("|image X| =", len(image(X)), " |image Y| =", len(image(Y)))
print("X and Y meet:", bool(intersect(X, Y).solutions()))

# translates stay EE
moved = affine_transform(Y, (1, 0), (1, 1))
print("Y + (1, 0) has", len(image(moved)), "points")

# pull both back along the line from a point of X to a point of Y
first, second = separate_points(X, Y, (1, 1), (2, 2))
ts = lambda s: sorted({int(s.project(v)[0]) for v in s.solutions()})
print("t in X-pullback:", ts(first), " t in Y-pullback:", ts(second))
