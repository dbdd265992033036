"""Exact computations around the Krasner map and EE sets over small fields.

Fields are ``Q``, ``F_p``, ``F_q`` and ``Q_p`` with explicit precision.
On top of them sit polynomials, quotient algebras ``K[x]/(p_a)`` with the
isomorphism relation ``a ≈ b``, the Krasner map ``G`` with its Jacobian
identity, EE sets as étale covers, and a handful of arithmetic checks.
"""

from .errors import *  # noqa: F401,F403
from .fields import (FieldDescriptor, FieldElement, GF, Q, Qp, enumerate_field,
                     is_square, padic_val, sqrt)
from .padic import PadicNumber, hensel_lift_root
from .poly import (Poly, discriminant, finite_field_roots, is_irreducible, is_separable,
                   poly_gcd, resultant)
from .multipoly import MultiPoly, PolyRing, e_map, elementary_symmetric_poly, jacobian_det
from .matrix import charpoly, det, vandermonde_det
from .extensions import (ClassCount, MonicVector, QuotientAlgebra, count_classes, equiv,
                         has_root, in_U)
from .krasner import (KrasnerData, build, chain_rule_factors, g_eval, in_V, krasner_cover,
                      verify_base_point)
from .ee import (ConstraintSystem, EtaleCover, affine_transform, disjointness_demo,
                 identity_cover, image, intersect, membership_witness, separate_points,
                 split_cover)
from .arith import (artin_schreier_index, conic_solve, coset_sum_covers, four_squares,
                    krasner_vadic_check, power_subgroup_index, power_sum_solve, sopn_check)

__version__ = "0.1.0"
