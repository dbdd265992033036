"""The Krasner map G and its étale cover.

Fix ``a`` with ``p_a`` separable and irreducible, ``α`` the class of ``x``
in ``A = K[x]/(p_a)``, and ``β(x̄) = x_0 + x_1 α + ... + x_{n-1} α**(n-1)``.
``G(b)`` is the coefficient vector (constant term first) of the
characteristic polynomial of multiplication by ``β(b)`` on ``A``.  The
matrix of that multiplication has entries linear in ``x̄``, so its
characteristic polynomial gives ``G_1, ..., G_n`` as honest polynomials
over ``K`` without ever touching the conjugate roots.

At the base point ``(0, 1, 0, ..., 0)`` we have ``β = α`` and ``G = a``;
the Jacobian there equals ``±disc(p_a)``, which is what makes the
restriction of ``G`` étale near ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (DegenerateDegree, DegreeTooLarge, NotInU,
                     PrecisionExhausted, UnsupportedField)
from .extensions import MonicVector, QuotientAlgebra, in_U
from .fields import (EXT, PADIC, PRIME, FieldDescriptor,
                     FieldElement, GF, Q, conway_like_modulus)
from .matrix import charpoly, det, vandermonde_det
from .multipoly import MultiPoly, PolyRing, e_map, jacobian_det, jacobian_det_at
from .padic import PadicNumber, rational_valuation
from .poly import Poly, discriminant, finite_field_roots

MAX_DEGREE = 5


@dataclass
class KrasnerData:
    a: MonicVector
    algebra: QuotientAlgebra
    G_sym: list
    V_condition: MultiPoly
    jac_det: MultiPoly
    notes: list = field(default_factory=list)

    @property
    def field(self) -> FieldDescriptor:
        return self.a.field

    @property
    def n(self) -> int:
        return self.a.n

    @property
    def base_point(self) -> tuple:
        K = self.field
        return tuple(K.one if i == 1 else K.zero for i in range(self.n))

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "a": self.a.to_json(),
                "G_sym": [g.to_json() for g in self.G_sym],
                "V_condition": self.V_condition.to_json(),
                "jac_det": self.jac_det.to_json(), "notes": self.notes}


def _symbolic(a: MonicVector):
    A = QuotientAlgebra(a)
    R = PolyRing(a.field, a.n)
    beta = R.gens
    M = A.mul_matrix(beta)
    cp = charpoly(M)
    G = [cp.coeff(j) for j in range(a.n)]
    V = det(A.powers(beta, a.n))
    return A, G, V


def _padic_coefficient(c: Fraction, K: FieldDescriptor, absprec: int) -> FieldElement:
    if c == 0:
        return K.zero
    rel = absprec - rational_valuation(c, K.p)
    if rel < 1:
        raise PrecisionExhausted(f"coefficient {c} not determined at p^{absprec}")
    return FieldElement(K, PadicNumber.from_rational(c, K.p, min(rel, K.precision)))


def build(a: MonicVector, check: bool = True) -> KrasnerData:
    """Construct ``G``, the condition cutting out ``V`` and ``|Jac_G|``.

    With ``check=False`` the construction also runs for ``a`` outside U
    (nothing here divides by the discriminant); only the class guarantee
    is lost then.
    """
    n = a.n
    if n == 1:
        raise DegenerateDegree("the base point (0, 1, 0, ...) needs n >= 2")
    if n > MAX_DEGREE:
        raise DegreeTooLarge(f"symbolic construction limited to n <= {MAX_DEGREE}")
    if check and not in_U(a):
        raise NotInU(f"{a} is not separable and irreducible")
    K = a.field
    notes = []
    if K.kind != PADIC:
        A, G, V = _symbolic(a)
    else:
        # exact construction from the rational representatives, then rounded
        # to the absolute precision the input actually carries
        vals = [c.value for c in a.a]
        if any(not v.is_zero and v.valuation < 0 for v in vals):
            raise UnsupportedField("p-adic construction needs integral coefficients")
        absprec = min((v.absolute_precision for v in vals if not v.is_zero), default=K.precision)
        absprec = min(absprec, K.precision)
        a_rat = MonicVector(Q(), tuple(v.to_fraction() for v in vals))
        _, G, V = _symbolic(a_rat)
        conv = lambda c: _padic_coefficient(c.value, K, absprec)  # noqa: E731
        G = [g.map_coeffs(K, conv) for g in G]
        V = V.map_coeffs(K, conv)
        A = QuotientAlgebra(a)
        notes.append(f"built over Q from representatives; coefficients known to {K.p}^{absprec}")
    jac = jacobian_det(G)
    return KrasnerData(a, A, G, V, jac, notes)


def in_V(kd: KrasnerData, b) -> bool:
    """``β(b)`` generates ``K(α)``: its first ``n`` powers are independent."""
    b = [kd.field(x) for x in b]
    return bool(kd.V_condition.evaluate(b))


def g_eval(kd: KrasnerData, b) -> MonicVector:
    b = [kd.field(x) for x in b]
    return MonicVector(kd.field, tuple(g.evaluate(b) for g in kd.G_sym))


# ---------------------------------------------------------------------------

@dataclass
class BasePointReport:
    base_point_ok: bool
    jac_value: FieldElement
    disc_value: FieldElement
    jac_invertible: bool
    jac_equals_pm_disc: bool
    sign: int | None
    stored_jac_agrees: bool
    approximate: bool

    @property
    def passed(self) -> bool:
        return (self.base_point_ok and self.jac_invertible
                and self.jac_equals_pm_disc and self.stored_jac_agrees)

    def to_json(self) -> dict:
        K = self.jac_value.field
        return {"base_point_ok": self.base_point_ok,
                "jac_value": K.encode(self.jac_value), "disc_value": K.encode(self.disc_value),
                "jac_invertible": self.jac_invertible,
                "jac_equals_pm_disc": self.jac_equals_pm_disc, "sign": self.sign,
                "stored_jac_agrees": self.stored_jac_agrees, "approximate": self.approximate}


def verify_base_point(kd: KrasnerData) -> BasePointReport:
    """G(base point) = a, and |Jac_G|(base point) = ±disc(p_a) ≠ 0."""
    base = kd.base_point
    image = g_eval(kd, base)
    jac_value = jacobian_det_at(kd.G_sym, base)
    disc_value = discriminant(kd.a.to_poly())
    stored = kd.jac_det.evaluate(base)
    sign = None
    if jac_value == disc_value:
        sign = 1
    elif jac_value == -disc_value:
        sign = -1
    return BasePointReport(
        base_point_ok=image == kd.a,
        jac_value=jac_value,
        disc_value=disc_value,
        jac_invertible=bool(jac_value),
        jac_equals_pm_disc=sign is not None,
        sign=sign,
        stored_jac_agrees=stored == jac_value,
        approximate=not kd.field.is_exact,
    )


# ---------------------------------------------------------------------------

@dataclass
class ChainRuleReport:
    splitting_field: FieldDescriptor
    roots: list
    jacP: FieldElement
    jacD: FieldElement
    jacE_at_roots: FieldElement
    jacF_vandermonde: FieldElement
    product: FieldElement
    jac_G: FieldElement

    @property
    def matches(self) -> bool:
        return self.product == self.jac_G

    def to_json(self) -> dict:
        L = self.splitting_field
        enc = L.encode
        return {"splitting_field": L.to_json(), "roots": [enc(r) for r in self.roots],
                "jacP": enc(self.jacP), "jacD": enc(self.jacD),
                "jacE_at_roots": enc(self.jacE_at_roots),
                "jacF_vandermonde": enc(self.jacF_vandermonde),
                "product": enc(self.product), "jac_G": enc(self.jac_G), "matches": self.matches}


def splitting_field(K: FieldDescriptor, a: MonicVector):
    """``F_{q^n}`` as an ``Fq`` descriptor, the embedding of ``K`` and the roots of ``p_a``.

    Roots come as the Frobenius orbit ``α_1, α_1**q, α_1**(q**2), ...``.
    """
    n = a.n
    if K.kind == PRIME:
        L = GF(K.p, [c.value for c in a.a] + [1])

        def embed(x):
            return L(x.value)

        first = L.generator()
    elif K.kind == EXT:
        L = GF(K.p, conway_like_modulus(K.p, K.degree * n))
        theta = finite_field_roots(Poly(L, list(K.modulus)))[0]

        def embed(x):
            acc = L.zero
            for i, c in enumerate(x.value):
                acc = acc + theta**i * c
            return acc

        first = finite_field_roots(Poly(L, [embed(c) for c in a.a] + [L.one]))[0]
    else:
        raise UnsupportedField("splitting fields are only built over finite fields")
    q = K.order
    roots = [first]
    for _ in range(n - 1):
        roots.append(roots[-1] ** q)
    return L, embed, roots


def chain_rule_factors(kd: KrasnerData) -> ChainRuleReport:
    """Evaluate the factors of ``Jac_G = Jac_P Jac_D Jac_E(α_1..α_n) Jac_F`` in ``F_{q^n}``.

    ``F(b) = (β_1(b), ..., β_n(b))`` has the Vandermonde Jacobian,
    ``E = (e_1, ..., e_n)``, ``D`` flips the signs ``(-, +, -, ...)`` and
    ``P`` reverses the order so that the constant coefficient comes first.
    """
    K = kd.field
    if not K.is_finite:
        raise UnsupportedField("chain-rule factors need a finite base field")
    if not in_U(kd.a):
        raise NotInU("the roots of p_a must form one Frobenius orbit")
    n = kd.n
    L, embed, roots = splitting_field(K, kd.a)
    one, zero = L.one, L.zero
    D = [[(-one if i % 2 == 0 else one) if i == j else zero for j in range(n)] for i in range(n)]
    P = [[one if i + j == n - 1 else zero for j in range(n)] for i in range(n)]
    jacD = det(D)
    jacP = det(P)
    jacE = jacobian_det_at(e_map(n, L), roots)
    jacF = vandermonde_det(roots)
    jac_G = embed(jacobian_det_at(kd.G_sym, kd.base_point))
    return ChainRuleReport(L, roots, jacP, jacD, jacE, jacF, jacP * jacD * jacE * jacF, jac_G)


def krasner_cover(kd: KrasnerData):
    """``G`` restricted to ``{|Jac_G| ≠ 0, V_condition ≠ 0}``; its image lies in the class of ``a``."""
    from .ee import EtaleCover
    cover = EtaleCover(kd.field, kd.n, list(kd.G_sym), [kd.jac_det, kd.V_condition])
    cover.add_witness(kd.base_point, kd.a.a)
    return cover
