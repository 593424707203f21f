"""Seeded samplers for modules, group elements and the psi regions.

Every trial of a campaign gets its own generator derived from the 64-bit
campaign seed, a suite tag and the trial index (:func:`trial_rng`), so
results do not depend on how trials are split among workers.

Samplers that reject draws record the counts in an :class:`Audit`.
Rational coefficients are drawn from [-9, 9]; F_p coefficients uniformly.
"""

from __future__ import annotations

import zlib
from collections import Counter
from typing import Callable, TypeVar

import numpy as np

from . import linalg
from .blowdown import BigGroupElem, BigPsi, BiForm, in_w0
from .field import Field
from .kronecker import GroupElem, KModule, act
from .multilinear import CoordChange, LinForm, QuadForm
from .normalform import normal_form_module
from .stability import is_semistable, is_stable

__all__ = [
    "Audit",
    "trial_rng",
    "random_linform",
    "random_module",
    "random_semistable_module",
    "random_stable_module",
    "random_mixed_module",
    "random_group_elem",
    "random_coord_change",
    "random_normal_form_params",
    "scrambled_normal_form",
    "random_reducible_quadric",
    "random_psi_w0",
    "random_psi_w1",
    "random_psi_w2",
    "random_big_group_elem",
    "crafted_degenerates",
    "MAX_REJECTIONS",
]

MAX_REJECTIONS = 1_000
T = TypeVar("T")


class Audit(Counter):
    """Per-sampler counts of accepted and rejected draws."""

    def accept(self, name: str) -> None:
        self[f"{name}.accepted"] += 1

    def reject(self, name: str) -> None:
        self[f"{name}.rejected"] += 1

    def as_dict(self) -> dict[str, int]:
        return dict(sorted(self.items()))


def trial_rng(seed: int, suite: str, trial: int) -> np.random.Generator:
    """Independent generator for one trial of one suite."""
    tag = zlib.crc32(suite.encode())
    ss = np.random.SeedSequence(entropy=int(seed) & (2**64 - 1), spawn_key=(tag, int(trial)))
    return np.random.default_rng(ss)


def _rejection(name: str, draw: Callable[[], T], ok: Callable[[T], bool], audit: Audit | None) -> T:
    for _ in range(MAX_REJECTIONS):
        x = draw()
        if ok(x):
            if audit is not None:
                audit.accept(name)
            return x
        if audit is not None:
            audit.reject(name)
    raise RuntimeError(f"{name}: no acceptable sample in {MAX_REJECTIONS} draws")


def random_linform(field: Field, rng, n: int = 4) -> LinForm:
    return LinForm(field.random_vector(rng, n))


def random_module(field: Field, rng) -> KModule:
    return KModule([[random_linform(field, rng), random_linform(field, rng)] for _ in range(2)])


def random_semistable_module(field: Field, rng, audit: Audit | None = None) -> KModule:
    return _rejection("semistable_module", lambda: random_module(field, rng), is_semistable, audit)


def random_stable_module(field: Field, rng, audit: Audit | None = None) -> KModule:
    return _rejection("stable_module", lambda: random_module(field, rng), is_stable, audit)


def random_mixed_module(field: Field, rng) -> KModule:
    """Dense, sparse or low-span module, to reach the unstable strata often."""
    mode = int(rng.integers(0, 3))
    if mode == 0:
        return random_module(field, rng)
    if mode == 1:
        mask = rng.random(16) < 0.25
        vals = field.random_vector(rng, 16)
        coeffs = [v if m else field.zero for v, m in zip(vals, mask)]
        return KModule([[LinForm(coeffs[4 * (2 * i + j) : 4 * (2 * i + j) + 4]) for j in range(2)] for i in range(2)])
    # entries in a random subspace of dimension 1 or 2 of V
    dim = int(rng.integers(1, 3))
    basis = [random_linform(field, rng) for _ in range(dim)]
    entries = []
    for _ in range(4):
        e = LinForm.zero(field)
        for b in basis:
            e = e + b * field.random(rng, -2, 2)
        entries.append(e)
    return KModule([entries[:2], entries[2:]])


def _random_invertible(field: Field, rng, n: int, audit: Audit | None, name: str) -> linalg.Matrix:
    return _rejection(
        name,
        lambda: [field.random_vector(rng, n) for _ in range(n)],
        lambda m: bool(linalg.det(m)),
        audit,
    )


def random_group_elem(field: Field, rng, audit: Audit | None = None) -> GroupElem:
    g = _random_invertible(field, rng, 2, audit, "gl2")
    h = _random_invertible(field, rng, 2, audit, "gl2")
    return GroupElem(g, h)


def random_coord_change(field: Field, rng, audit: Audit | None = None) -> CoordChange:
    return CoordChange(_random_invertible(field, rng, 4, audit, "gl4"))


def random_normal_form_params(field: Field, rng) -> tuple:
    """(lam, a, b, c, d) with lam != 0."""
    return (field.random_nonzero(rng), *(field.random(rng) for _ in range(4)))


def scrambled_normal_form(field: Field, rng, audit: Audit | None = None) -> tuple[tuple, KModule]:
    """Random normal-form parameters and a random group/coordinate image."""
    params = random_normal_form_params(field, rng)
    nf = normal_form_module(*params, field)
    gh = random_group_elem(field, rng, audit)
    upsilon = random_coord_change(field, rng, audit)
    return params, act(gh, nf.substitute(upsilon.matrix))


def random_reducible_quadric(field: Field, rng) -> QuadForm:
    """A nonzero product of two linear forms (res = 0)."""
    while True:
        q = QuadForm.product(random_linform(field, rng), random_linform(field, rng))
        if q:
            return q


def _pair(field: Field, rng) -> tuple:
    return tuple(field.random_vector(rng, 2))


def _independent_pairs(field: Field, rng, audit: Audit | None, name: str) -> tuple[tuple, tuple]:
    return _rejection(
        name,
        lambda: (_pair(field, rng), _pair(field, rng)),
        lambda uv: bool(uv[0][0] * uv[1][1] - uv[0][1] * uv[1][0]),
        audit,
    )


def _random_psi(field: Field, rng, a1, a2, **fixed) -> BigPsi:
    kw = {name: _pair(field, rng) for name in BigPsi.V1_FIELDS + BigPsi.V2_FIELDS}
    kw.update({name: random_linform(field, rng) for name in BigPsi.F_FIELDS})
    kw.update(fixed)
    return BigPsi(a1=a1, a2=a2, **kw)


def random_psi_w0(field: Field, rng, audit: Audit | None = None) -> BigPsi:
    """a1 a2 != 0 with alpha(psi) semi-stable and injective on the quadric."""
    return _rejection(
        "psi_w0",
        lambda: _random_psi(field, rng, field.random_nonzero(rng), field.random_nonzero(rng)),
        in_w0,
        audit,
    )


def random_psi_w1(field: Field, rng, audit: Audit | None = None) -> BigPsi:
    u11, v11 = _independent_pairs(field, rng, audit, "psi_w1.pairs")
    u22, v22 = _independent_pairs(field, rng, audit, "psi_w1.pairs")
    psi = _random_psi(field, rng, field.random_nonzero(rng), field.zero, u11=u11, v11=v11, u22=u22, v22=v22)
    if audit is not None:
        audit.accept("psi_w1")
    return psi


def random_psi_w2(field: Field, rng, audit: Audit | None = None) -> BigPsi:
    u12, v12 = _independent_pairs(field, rng, audit, "psi_w2.pairs")
    u21, v21 = _independent_pairs(field, rng, audit, "psi_w2.pairs")
    psi = _random_psi(field, rng, field.zero, field.random_nonzero(rng), u12=u12, v12=v12, u21=u21, v21=v21)
    if audit is not None:
        audit.accept("psi_w2")
    return psi


def _random_biform(field: Field, rng, bidegree: tuple[int, int]) -> BiForm:
    pair = _pair(field, rng)
    if bidegree == (1, 0):
        return BiForm.from_v1(pair, field)
    return BiForm.from_v2(pair, field)


def random_big_group_elem(field: Field, rng, audit: Audit | None = None) -> BigGroupElem:
    g11 = _random_invertible(field, rng, 2, audit, "gl2")
    h22 = _random_invertible(field, rng, 2, audit, "gl2")
    g21 = [[_random_biform(field, rng, (0, 1)) for _ in range(2)], [_random_biform(field, rng, (1, 0)) for _ in range(2)]]
    h21 = [[_random_biform(field, rng, (1, 0)), _random_biform(field, rng, (0, 1))] for _ in range(2)]
    g22 = [field.random_nonzero(rng) for _ in range(2)]
    h11 = [field.random_nonzero(rng) for _ in range(2)]
    return BigGroupElem(g11, g21, g22, h11, h21, h22, field)


def crafted_degenerates(field: Field, count: int = 50) -> list[KModule]:
    """Fixed modules on the boundary strata, followed by seeded variations.

    Zero columns or rows, determinants of rank 1 and 2, nilpotent and
    commuting slices, and the zero module.
    """
    P = lambda s: KModule.parse(s, field)  # noqa: E731
    base = [
        P("0, 0; 0, 0"),
        P("x, 0; y, 0"),
        P("0, x; 0, y"),
        P("x, y; 0, 0"),
        P("x, y; 2x, 2y"),
        P("x, 0; 0, x"),
        P("x, 0; 0, y"),
        P("x+y, 0; 0, z-w"),
        P("x, y; 0, x"),
        P("x, y; 0, z"),
        P("x, 0; z, w"),
        P("0, x; y, z"),
        P("x, y; y, 0"),
        P("x, y+z; 0, x"),
        P("0, y; 0, 0"),
        P("x, y; z, 0"),
        P("x, y; -y, x"),
        P("x, y; y, x"),
        P("x+w, y; z, x+w"),
        P("x, y; z, w"),
        P("x, 2y; y, 2x"),
        P("x, x; x, x"),
        P("x, y; x, y"),
        P("x, w; 0, 0"),
        P("x+y, y; 0, x+y"),
    ]
    out = list(base)
    rng = trial_rng(0, "crafted", 0)
    while len(out) < count:
        phi = base[len(out) % len(base)]
        upsilon = random_coord_change(field, rng)
        out.append(phi.substitute(upsilon.matrix))
    return out[:count]
