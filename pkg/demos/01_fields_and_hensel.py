"""
Exact fields and Hensel lifting
===============================

Rationals, finite fields and p-adic numbers share one element interface.
"""

from fractions import Fraction

from krasnerkit import GF, Q, Qp, is_square, padic_val, sqrt
from krasnerkit.padic import PadicNumber, hensel_lift_root
from krasnerkit.poly import Poly

# F_25 built from x^2 + 2; the generator squares to 3
F25 = GF(5, [2, 0, 1])
t = F25.generator()
print("t^2 in F_25:", t * t)

# valuations work on plain rationals too
print("v_5(3/10) =", padic_val(Fraction(3, 10), 5))

# 2 is a square in Q_7 because 3^2 = 2 mod 7
K = Qp(7, 12)
print("2 is a square in Q_7:", is_square(K(2)))
print("sqrt(2) =", sqrt(K(2)))

# Newton steps double the number of correct digits
trace = []
root = hensel_lift_root(Poly(K, [-2, 0, 1]), PadicNumber.from_rational(3, 7, 12), 10, trace)
print("residual valuations:", trace)
print("root mod 7^10:", root.to_fraction().numerator % 7**10)

# Q keeps exact fractions
print(Q()(Fraction(2, 3)) + Q()(Fraction(1, 6)))
