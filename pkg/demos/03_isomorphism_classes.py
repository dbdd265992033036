"""
Counting isomorphism classes
============================

a and b are related when p_b has a root in K[x]/(p_a).  Over a finite field
all degree-n extensions agree; over Q_p (odd p) there are three quadratic ones.
"""

from krasnerkit import GF, Qp, MonicVector, count_classes, equiv

print("F_5, n = 2:", count_classes(GF(5), 2).count)
print("F_7, n = 3:", count_classes(GF(7), 3).count)

K = Qp(5, 12)
print("x^2 - 2 vs x^2 - 3 over Q_5:",
      equiv(MonicVector.of(K, (-2, 0)), MonicVector.of(K, (-3, 0))))
print("x^2 - 2 vs x^2 - 5 over Q_5:",
      equiv(MonicVector.of(K, (-2, 0)), MonicVector.of(K, (-5, 0))))

res = count_classes(K, 2, samples=300, seed=0)
print("Q_5 classes:", res.count, "from", res.accepted, "samples")
for r in res.representatives:
    print("  ", r)
