"""
Arithmetic checks
=================

Subgroup indices, coset sums, conics, four squares and Krasner balls.
"""

from fractions import Fraction

from krasnerkit import GF, Qp, MonicVector
from krasnerkit.arith import (artin_schreier_index, conic_solve, coset_sum_covers, four_squares,
                              krasner_vadic_check, power_subgroup_index, power_sum_solve,
                              sopn_check)

t = power_subgroup_index(GF(13), 3)
print("[F_13* : cubes] =", t.index, "reps", t.representatives)
print("[F_9 : wp(F_9)] =", artin_schreier_index(GF(9)).index)

# small fields can fail the covering property, larger ones satisfy it
for q in (3, 13):
    print(f"F_{q} square cosets cover:", coset_sum_covers(GF(q), 2).all_cover)

print("3c^2 + 5d^2 = 1 over F_7:", conic_solve(GF(7), 3, 5))
print("c^3 + e^3 = 3 over F_7:", power_sum_solve(GF(7), 3, 1, 3))

print("3/2 =", " + ".join(f"({z})^2" for z in four_squares(Fraction(3, 2))))
cycle = sopn_check([0, 3, 7], cyclic=True)
print("cycle 0 -> 3 -> 7 -> 0 telescopes to", cycle.telescoped)

rep = krasner_vadic_check(MonicVector.of(Qp(5, 12), (-2, 0)), 1, 50, seed=0)
print(f"Krasner ball: {rep.passed}/{rep.samples} perturbations equivalent,",
      "bound", rep.krasner_bound)
