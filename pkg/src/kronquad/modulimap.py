"""The weighted projective model of N(4; 2, 2).

Points are pairs (q, p) with q a quadratic form and p a scalar, modulo
t (q, p) = (t q, t^2 p).  The moduli space is the hypersurface
res(q) = p^2, where res(q) is the determinant of the matrix of partial
derivatives of q (the Hessian determinant; 16 times the Gram determinant).
"""

from __future__ import annotations

from . import linalg
from .errors import NeedsExtension, PreconditionError
from .field import Scalar
from .kronecker import KModule, det_semiinvariant, e_semiinvariant
from .multilinear import QuadForm, factor_quadric, gram_rank
from .normalform import DEFAULT_BUDGET, normal_form_module, normalizing_change
from .stability import is_semistable

__all__ = [
    "WPoint",
    "resultant",
    "eta",
    "on_hypersurface",
    "nu1",
    "nu2",
    "nu1_module",
    "nu2_module",
    "det_fiber",
    "eta_inverse",
]


class WPoint:
    """A point of P(S^2 V + L^4 V) with weights (1, 2), stored canonically.

    The canonical representative has the first nonzero coefficient of q
    (order x2, xy, xz, xw, y2, yz, yw, z2, zw, w2) equal to 1.  When q = 0
    the point is the unique one with p != 0 and p is stored as 1.
    """

    __slots__ = ("q", "p")

    def __init__(self, q: QuadForm, p: Scalar):
        lead = next((c for c in q.coeffs if c), None)
        if lead is None:
            if not p:
                raise ValueError("(0, 0) is not a point of the weighted projective space")
            self.q, self.p = q, p**0
            return
        t = 1 / lead
        self.q = q * t
        self.p = p * t * t

    def __eq__(self, other) -> bool:
        if not isinstance(other, WPoint):
            return NotImplemented
        return self.q == other.q and self.p == other.p

    def __hash__(self) -> int:
        return hash((self.q, self.p))

    def __repr__(self) -> str:
        return f"<{self.q}, {self.p}>"


def resultant(q: QuadForm) -> Scalar:
    return linalg.det(q.hessian())


def eta(phi: KModule) -> WPoint:
    if not is_semistable(phi):
        raise PreconditionError("eta is defined on semi-stable modules only")
    return WPoint(det_semiinvariant(phi), e_semiinvariant(phi))


def on_hypersurface(point: WPoint) -> bool:
    return resultant(point.q) == point.p * point.p


def nu1_module(field) -> KModule:
    return KModule.parse("x, y; z, w", field)


def nu2_module(field) -> KModule:
    return KModule.parse("x, z; y, w", field)


def nu1(field) -> WPoint:
    return eta(nu1_module(field))


def nu2(field) -> WPoint:
    return eta(nu2_module(field))


def det_fiber(q: QuadForm) -> list[WPoint]:
    """Points of the hypersurface lying over <q>.

    Two points when res(q) is a nonzero square, one on the branch locus
    res(q) = 0.  Raises :class:`NeedsExtension` when res(q) is not a square
    in the active field (the two points are then conjugate).
    """
    if not q:
        raise PreconditionError("the fiber over q = 0 is not defined")
    r = q.field.sqrt(resultant(q))
    if r is None:
        raise NeedsExtension("nonsquare-resultant", f"res({q}) is not a square")
    if not r:
        return [WPoint(q, r)]
    return [WPoint(q, r), WPoint(q, -r)]


def eta_inverse(point: WPoint, seed: int = 0, budget: int = DEFAULT_BUDGET) -> KModule:
    """A module phi with eta(phi) == point.

    Reducible q = u u' gives diag(u, u').  Otherwise q is put in the
    normal-form coordinates, the parameters b, c, a + d are read off the
    coefficients and d - a is recovered from p.
    """
    if not on_hypersurface(point):
        raise PreconditionError(f"{point} is not on the hypersurface res(q) = p^2")
    q, p = point.q, point.p
    if not q:
        raise PreconditionError("q must be nonzero")
    field = q.field
    if gram_rank(q) <= 2:
        u, v = factor_quadric(q)
        z = u * 0
        return KModule([[u, z], [z, v]])
    upsilon, kappa = normalizing_change(q, seed, budget)
    qn = q.substitute(upsilon.matrix) / kappa
    # qn = x^2 - yz + (a+d)xw - c yw - b zw + (ad - bc)w^2
    trace = qn.coefficient(0, 3)
    c = -qn.coefficient(1, 3)
    b = -qn.coefficient(2, 3)
    diff = p * upsilon.det / (kappa * kappa)
    a, d = (trace - diff) / 2, (trace + diff) / 2
    if a * d - b * c != qn.coefficient(3, 3):
        raise AssertionError("inconsistent w^2 coefficient on the hypersurface")
    nf = normal_form_module(field.one, a, b, c, d, field)
    return nf.substitute(upsilon.inverse().matrix)
