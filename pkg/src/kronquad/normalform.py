"""Reduction of a stable module to [[x + aw, y + bw], [lam z + cw, x + dw]].

The reduction has three stages, each returning exact data that can be
replayed:

1. :func:`choose_splitting` picks coordinates in which dropping the last
   variable leaves a determinant of Gram rank 3 (an irreducible conic);
2. :func:`conic_normalize` brings that conic to a multiple of x^2 - yz;
3. :func:`conify` finds (g, h) carrying the projected module to
   [[x, y], [lam z, x]].

The scalar by which the conic is multiplied is absorbed by the group
character det(h)/det(g), so the reachable target always has lam = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import linalg
from .errors import NeedsExtension, PreconditionError
from .field import Field, Scalar, field_of
from .kronecker import GroupElem, KModule, act, det_semiinvariant
from .multilinear import CoordChange, LinForm, QuadForm, gram_rank
from .stability import is_stable

__all__ = [
    "NormalForm",
    "normal_form_module",
    "choose_splitting",
    "conic_normalize",
    "conify",
    "normal_form",
    "normalizing_change",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10_000
# over Q a splitting whose conic has no rational point is skipped; these cap
# how long normal_form keeps looking before giving up
CONIC_BUDGET = 1_000
MAX_CONIC_FAILURES = 10


def normal_form_module(lam: Scalar, a: Scalar, b: Scalar, c: Scalar, d: Scalar, field: Field) -> KModule:
    one, zero = field.one, field.zero
    return KModule(
        [
            [LinForm([one, zero, zero, field(a)]), LinForm([zero, one, zero, field(b)])],
            [LinForm([zero, zero, field(lam), field(c)]), LinForm([one, zero, zero, field(d)])],
        ]
    )


@dataclass(frozen=True)
class NormalForm:
    """Parameters and certificate of a normal form.

    ``act(gh, apply_coord_change(upsilon, phi)) == self.module()`` for the
    module ``phi`` it was computed from.
    """

    lam: Scalar
    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar
    upsilon: CoordChange
    gh: GroupElem

    @property
    def field(self) -> Field:
        return field_of(self.lam)

    def module(self) -> KModule:
        return normal_form_module(self.lam, self.a, self.b, self.c, self.d, self.field)

    def replay(self, phi: KModule) -> KModule:
        return act(self.gh, phi.substitute(self.upsilon.matrix))

    def verify(self, phi: KModule) -> bool:
        return self.replay(phi) == self.module()

    def expected_det(self) -> QuadForm:
        """x^2 - lam yz + (a+d)xw - c yw - lam b zw + (ad - bc)w^2."""
        lam, a, b, c, d = self.lam, self.a, self.b, self.c, self.d
        zero, one = lam * 0, lam**0
        # order: x2 xy xz xw y2 yz yw z2 zw w2
        return QuadForm([one, zero, zero, a + d, zero, -lam, -c, zero, -lam * b, a * d - b * c])

    @property
    def epsilon(self) -> Scalar:
        return self.lam * (self.d - self.a)


def _permutation_dropping(k: int, field: Field) -> linalg.Matrix:
    """Substitution moving variable k to the last slot, others kept in order."""
    order = [i for i in range(4) if i != k] + [k]
    m = linalg.zeros(4, 4, field)
    for new, old in enumerate(order):
        m[old][new] = field.one
    return m


def _splittings(q: QuadForm, seed: int, budget: int) -> Iterator[CoordChange]:
    field = q.field
    tried = 0
    for k in (3, 2, 1, 0):
        tried += 1
        m = _permutation_dropping(k, field)
        if gram_rank(q.substitute(m).drop(3)) == 3:
            yield CoordChange(m)
    rng = np.random.default_rng(seed)
    while tried < budget:
        tried += 1
        m = linalg.identity(4, field)
        m[3][:3] = [field(int(v)) for v in rng.integers(-3, 4, size=3)]
        perm = _permutation_dropping(int(rng.integers(0, 4)), field)
        m = linalg.matmul(perm, m)
        if gram_rank(q.substitute(m).drop(3)) == 3:
            yield CoordChange(m)


def choose_splitting(phi: KModule | QuadForm, seed: int = 0, budget: int = DEFAULT_BUDGET) -> CoordChange:
    """Coordinates X = M X' in which det(phi) restricted to {w' = 0} has rank 3.

    The first three columns of M span the kept subspace and the last column
    is the dropped direction.  Coordinate directions are tried first (w, z,
    y, x), then seeded random ones.
    """
    q = det_semiinvariant(phi) if isinstance(phi, KModule) else phi
    if q.n != 4 or gram_rank(q) < 3:
        raise PreconditionError("splitting needs a determinant of Gram rank >= 3")
    for m in _splittings(q, seed, budget):
        return m
    raise RuntimeError(f"no splitting direction found within {budget} trials")


def _small_pairs() -> Iterator[tuple[int, int]]:
    yield (1, 0)
    yield (0, 1)
    h = 1
    while True:
        for a in range(-h, h + 1):
            for b in (-h, h):
                yield (a, b)
        for b in range(-h + 1, h):
            for a in (-h, h):
                yield (a, b)
        h += 1


def _isotropic_vector(t: QuadForm, seed: int, budget: int) -> list[Scalar]:
    field = t.field
    zero, one = field.zero, field.one
    for i in range(3):
        e = [one if j == i else zero for j in range(3)]
        if not t(e):
            return e
    a_coef = t.coefficient(2, 2)
    cand = _small_pairs()
    rng = np.random.default_rng(seed) if field.characteristic else None
    for trial in range(budget):
        if rng is not None and trial >= 16:
            a, b = (int(v) for v in rng.integers(0, field.characteristic, size=2))
        else:
            a, b = next(cand)
        a, b = field(a), field(b)
        # t(a, b, s) = A s^2 + B s + C
        bb = t.coefficient(0, 2) * a + t.coefficient(1, 2) * b
        cc = t([a, b, zero])
        s = field.sqrt(bb * bb - 4 * a_coef * cc)
        if s is not None:
            v = [a, b, (s - bb) / (2 * a_coef)]
            if any(v):
                return v
    raise NeedsExtension("no-isotropic-vector", f"no rational point found on {t} within {budget} trials")


def conic_normalize(t: QuadForm, seed: int = 0, budget: int = DEFAULT_BUDGET) -> tuple[CoordChange, Scalar]:
    """Coordinate change N on U and scale k with t(N X) = k (x^2 - yz).

    Needs a point on the conic: over F_p one always exists and is found by
    a seeded search; over Q the search may fail, which raises
    :class:`NeedsExtension`.
    """
    if t.n != 3:
        raise ValueError("conic_normalize expects a ternary form")
    if gram_rank(t) != 3:
        raise PreconditionError("conic must be nondegenerate (Gram rank 3)")
    field = t.field
    zero, one = field.zero, field.one
    alpha, beta = t.coefficient(0, 0), t.coefficient(1, 2)
    cross = [t.coefficient(i, j) for i, j in ((0, 1), (0, 2), (1, 1), (2, 2))]
    if alpha and beta and not any(cross):
        # already alpha x^2 + beta yz: rescale z
        return CoordChange(linalg.diag([one, one, -alpha / beta], field)), alpha

    v = _isotropic_vector(t, seed, budget)
    basis = linalg.identity(3, field)
    u = next(e for e in basis if t.bilinear(v, e))
    bvu = t.bilinear(v, u)
    shift = t(u) / (2 * bvu)
    u = [ui - shift * vi for ui, vi in zip(u, v)]
    b = t.bilinear(v, u)
    gram = t.gram()
    rows = [linalg.matmul([v], gram)[0], linalg.matmul([u], gram)[0]]
    (r,) = linalg.nullspace(rows, field)
    gamma = t(r)
    col_z = [-gamma / (2 * b) * ui for ui in u]
    n = linalg.transpose([r, v, col_z])
    return CoordChange(n), gamma


def conify(psi: KModule, lam: Scalar | None = None) -> GroupElem:
    """(g, h) with act((g, h), psi) = [[x, y], [lam z, x]].

    ``psi`` is a module in three variables whose determinant is a nonzero
    multiple of x^2 - lam yz; ``lam`` is read off the determinant if not
    given.
    """
    if psi.n != 3:
        raise ValueError("conify expects a module in three variables")
    field = psi.field
    q = det_semiinvariant(psi)
    kappa = q.coefficient(0, 0)
    if lam is None:
        lam = -q.coefficient(1, 2) / kappa if kappa else field.zero
    lam = field(lam)
    expected = QuadForm([kappa, 0 * kappa, 0 * kappa, 0 * kappa, -lam * kappa, 0 * kappa], 3)
    if not kappa or not lam or q != expected:
        raise PreconditionError(f"det {q} is not a nonzero multiple of x^2 - {lam}yz")
    s1, s2, s3 = psi.slices()
    s1_inv = linalg.inv2(s1)
    a = linalg.matmul(s1_inv, s2)
    b = linalg.matmul(s1_inv, s3)
    zero, one = field.zero, field.one
    # a is a nonzero nilpotent; in the basis (a v, v) it becomes E12
    for v in ([one, zero], [zero, one]):
        av = [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
        if any(av):
            break
    p = [[av[0], v[0]], [av[1], v[1]]]
    bp = linalg.matmul(linalg.inv2(p), linalg.matmul(b, p))
    # bp = [[s, -s^2/lam], [lam, -s]]; conjugating by [[1, s/lam], [0, 1]] fixes E12
    shift = bp[0][0] / lam
    q_mat = linalg.matmul(p, [[one, shift], [zero, one]])
    q_inv = linalg.inv2(q_mat)
    return GroupElem(q_inv, linalg.matmul(q_inv, s1_inv))


def normalizing_change(q: QuadForm, seed: int = 0, budget: int = DEFAULT_BUDGET) -> tuple[CoordChange, Scalar]:
    """upsilon and k with q(upsilon X) = k (x^2 - yz) modulo w.

    Splittings are tried in the order of :func:`choose_splitting`; over Q
    ones whose conic has no rational point found are skipped.
    """
    field = q.field
    failures = 0
    for split in _splittings(q, seed, budget):
        t = q.substitute(split.matrix).drop(3)
        try:
            conic, kappa = conic_normalize(t, seed, min(budget, CONIC_BUDGET))
        except NeedsExtension:
            failures += 1
            if failures >= MAX_CONIC_FAILURES:
                break
            continue
        return split.then(CoordChange(linalg.block_diag(conic.matrix, [[field.one]], field))), kappa
    raise NeedsExtension("no-isotropic-vector", f"no hyperplane section of {q} with a rational point was found")


def normal_form(phi: KModule, seed: int = 0, budget: int = DEFAULT_BUDGET) -> NormalForm:
    """Normal form of a stable module together with its certificate."""
    if phi.n != 4:
        raise ValueError("normal_form expects a module over a 4-dimensional space")
    if not is_stable(phi):
        raise PreconditionError("normal form requires a stable module")
    field = phi.field
    upsilon, _ = normalizing_change(det_semiinvariant(phi), seed, budget)
    phi2 = phi.substitute(upsilon.matrix)
    gh = conify(phi2.drop(3), field.one)
    out = act(gh, phi2)
    a, b = out[0, 0].coeffs[3], out[0, 1].coeffs[3]
    c, d = out[1, 0].coeffs[3], out[1, 1].coeffs[3]
    return NormalForm(field.one, a, b, c, d, upsilon, gh)
