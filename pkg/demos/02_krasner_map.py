"""
The Krasner map G
=================

For irreducible separable p_a the map G sends b to the characteristic
polynomial of multiplication by beta(b) = b_0 + b_1 alpha + ... in K[x]/(p_a).
"""

from krasnerkit import GF, Q, MonicVector
from krasnerkit.krasner import build, chain_rule_factors, g_eval, in_V, verify_base_point

a = MonicVector.of(Q(), (1, 1))        # x^2 + x + 1
kd = build(a)
for j, g in enumerate(kd.G_sym):
    print(f"G_{j} =", g)

# the base point (0, 1) returns a, and the Jacobian there is -disc
report = verify_base_point(kd)
print("G(0, 1) = a:", report.base_point_ok)
print("Jacobian", report.jac_value, "discriminant", report.disc_value, "sign", report.sign)

# over F_5 every b with beta(b) generating lands in the class of a
F5 = GF(5)
kd5 = build(MonicVector.of(F5, (1, 1)))
print("in V at (1, 2):", in_V(kd5, (1, 2)))
print("G(2, 4) =", g_eval(kd5, (2, 4)))

# the chain rule evaluated at the roots in F_25
chain = chain_rule_factors(kd5)
print("roots:", chain.roots)
print("factors:", chain.jacP, chain.jacD, chain.jacE_at_roots, chain.jacF_vandermonde)
print("product matches Jac_G:", chain.matches)
