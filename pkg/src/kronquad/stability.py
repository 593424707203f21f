"""Semi-stability and stability of 2x2 Kronecker modules.

Two independent routes:

* the determinant criterion (semi-stable iff det != 0, stable iff det is
  irreducible, i.e. of Gram rank >= 3);
* :func:`king_oracle`, a direct search for destabilizing subrepresentations
  (K, L) with M_i K in L for every constant slice M_i.  For dimension vector
  (2, 2) semi-stability fails iff some pair has dim L < dim K, and stability
  fails iff some proper nonzero pair has dim L <= dim K.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any

from . import linalg
from .field import Field, Scalar
from .kronecker import KModule, det_semiinvariant
from .multilinear import gram_rank

__all__ = ["StabilityVerdict", "is_semistable", "is_stable", "king_oracle"]


@dataclass(frozen=True)
class StabilityVerdict:
    semistable: bool
    stable: bool
    witness: dict[str, Any] | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        if self.stable and not self.semistable:
            raise ValueError("stable implies semistable")


def is_semistable(phi: KModule) -> bool:
    return bool(det_semiinvariant(phi))


def is_stable(phi: KModule) -> bool:
    return gram_rank(det_semiinvariant(phi)) >= 3


# univariate polynomials: coefficient lists, lowest degree first


def _trim(p: list[Scalar]) -> list[Scalar]:
    while p and not p[-1]:
        p = p[:-1]
    return p


def _poly_rem(a: list[Scalar], b: list[Scalar]) -> list[Scalar]:
    a = list(a)
    lead = b[-1]
    while len(a) >= len(b):
        f = a[-1] / lead
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = a[shift + i] - f * c
        a = _trim(a[:-1])
    return a


def _poly_gcd(polys: list[list[Scalar]]) -> list[Scalar]:
    """Monic gcd; [] if every input is zero."""
    g: list[Scalar] = []
    for p in polys:
        p = _trim(p)
        a, b = g, p
        while b:
            a, b = b, _poly_rem(a, b)
        g = a
    if g:
        g = [c / g[-1] for c in g]
    return g


def _roots_upto_quadratic(g: list[Scalar], field: Field) -> list[Scalar]:
    if len(g) == 2:
        return [-g[0] / g[1]]
    if len(g) == 3:
        c, b, a = g
        s = field.sqrt(b * b - 4 * a * c)
        if s is None:
            return []
        return [(-b + s) / (2 * a)]
    return []


def _image_matrix(slices: list[linalg.Matrix], k: list) -> list[list]:
    """2 x n matrix whose columns are M_v k."""
    return [[m[i][0] * k[0] + m[i][1] * k[1] for m in slices] for i in range(2)]


def _witness(dim_k: int, dim_l: int, k_basis, l_basis, **extra) -> dict[str, Any]:
    w = {"dim_K": dim_k, "dim_L": dim_l, "K": k_basis, "L": l_basis}
    w.update(extra)
    return w


def _column_space(m: linalg.Matrix) -> list[list[Scalar]]:
    cols = linalg.transpose(m)
    basis: list[list[Scalar]] = []
    for c in cols:
        if linalg.rank(basis + [c]) > len(basis):
            basis.append(c)
    return basis


def king_oracle(phi: KModule) -> StabilityVerdict:
    """Brute-force King criterion for dimension vector (2, 2).

    One-dimensional K = span(1, t) are handled all at once: the 2 x n matrix
    [M_v k] has rank <= 1 exactly at the common roots of its 2 x 2 minors,
    which are the roots of their gcd.  A positive-degree gcd means a
    destabilizer over the algebraic closure; the witness then carries an
    explicit K when a root lies in the active field and the gcd otherwise.
    """
    field = phi.field
    zero, one = field.zero, field.one
    slices = phi.slices()
    n = len(slices)

    # K = whole source: L must contain the images of all slices
    big = [[m[i][j] for m in slices for j in range(2)] for i in range(2)]
    r = linalg.rank(big)
    e = [[one, zero], [zero, one]]
    if r < 2:
        return StabilityVerdict(False, False, _witness(2, r, e, _column_space(big)))

    # K one-dimensional with L = 0: a common kernel vector
    stacked = [row for m in slices for row in m]
    kernel = linalg.nullspace(stacked, field)
    if kernel:
        return StabilityVerdict(False, False, _witness(1, 0, [kernel[0]], []))

    # K one-dimensional with dim L <= 1
    k_inf = [zero, one]
    n_inf = _image_matrix(slices, k_inf)
    if linalg.rank(n_inf) <= 1:
        return StabilityVerdict(True, False, _witness(1, 1, [k_inf], _column_space(n_inf)))
    # N(t) = N0 + t N1 for k = (1, t)
    n0 = _image_matrix(slices, [one, zero])
    n1 = n_inf
    minors = []
    for a in range(n):
        for b in range(a + 1, n):
            p00, p01 = n0[0][a], n1[0][a]
            p10, p11 = n0[1][b], n1[1][b]
            q00, q01 = n0[0][b], n1[0][b]
            q10, q11 = n0[1][a], n1[1][a]
            minors.append(
                [
                    p00 * p10 - q00 * q10,
                    p00 * p11 + p01 * p10 - q00 * q11 - q01 * q10,
                    p01 * p11 - q01 * q11,
                ]
            )
    g = _poly_gcd(minors)
    if not g:
        k = [one, zero]
        return StabilityVerdict(True, False, _witness(1, 1, [k], _column_space(n0)))
    if len(g) > 1:
        roots = _roots_upto_quadratic(g, field)
        if roots:
            k = [one, roots[0]]
            nk = _image_matrix(slices, k)
            return StabilityVerdict(True, False, _witness(1, 1, [k], _column_space(nk)))
        return StabilityVerdict(
            True, False, _witness(1, 1, None, None, over_closure=True, gcd=g)
        )
    return StabilityVerdict(True, True, None)
