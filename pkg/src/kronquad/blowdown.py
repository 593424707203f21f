"""The P1 x P1 matrix model and the blow-down map.

Bihomogeneous forms live in S^r V1* (x) S^s V2* with V1* = span{u1, v1}
and V2* = span{u2, v2}; the Segre basis x = u1u2, y = v1u2, z = u1v2,
w = v1v2 identifies bidegree (1, 1) with the linear forms on V.

A morphism psi from 2O(-1,-1) + O(-1,0) + O(0,-1) to O(-1,0) + O(0,-1) + 2O
is the 4x4 matrix

    [ 1(x)u12  1(x)v12  a1        0       ]
    [ u11(x)1  v11(x)1  0         a2      ]
    [ f11      f12      u21(x)1   1(x)u22 ]
    [ f21      f22      v21(x)1   1(x)v22 ]

whose entry (i, j) has bidegree T_i - S_j for the twists below.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from . import linalg
from .errors import PreconditionError
from .field import Field, Scalar
from .kronecker import KModule, is_injective_on_quadric
from .modulimap import WPoint, eta
from .multilinear import LinForm
from .stability import is_semistable

__all__ = [
    "BiForm",
    "BigPsi",
    "BigGroupElem",
    "Region",
    "SnakeReport",
    "segre",
    "segre_module",
    "unsegre",
    "classify",
    "alpha",
    "alpha_explicit",
    "act_psi",
    "reduce_psi",
    "reduced_psi",
    "beta",
    "beta_matrix",
    "build_xi",
    "verify_snake",
    "in_w0",
    "SOURCE_TWISTS",
    "TARGET_TWISTS",
]

Bidegree = tuple[int, int]
Mono = tuple[int, int, int, int]  # exponents of u1, v1, u2, v2
Pair = tuple  # (coefficient of u_k, coefficient of v_k)

SOURCE_TWISTS: tuple[Bidegree, ...] = ((-1, -1), (-1, -1), (-1, 0), (0, -1))
TARGET_TWISTS: tuple[Bidegree, ...] = ((-1, 0), (0, -1), (0, 0), (0, 0))

_X, _Y, _Z, _W = (1, 0, 1, 0), (0, 1, 1, 0), (1, 0, 0, 1), (0, 1, 0, 1)
_U1, _V1, _U2, _V2 = (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)
_ONE = (0, 0, 0, 0)


def _sub(a: Bidegree, b: Bidegree) -> Bidegree:
    return (a[0] - b[0], a[1] - b[1])


class BiForm:
    """A bihomogeneous polynomial in (u1, v1; u2, v2).

    The zero form may carry any bidegree, including negative ones; this is
    how structurally zero matrix positions are typed.  Adding a zero form
    of a different bidegree is allowed and returns the other summand.
    """

    __slots__ = ("bidegree", "terms", "field")

    def __init__(self, bidegree: Bidegree, terms: dict[Mono, Scalar], field: Field):
        self.bidegree = (int(bidegree[0]), int(bidegree[1]))
        self.field = field
        self.terms = {m: c for m, c in terms.items() if c}
        r, s = self.bidegree
        for m in self.terms:
            if m[0] + m[1] != r or m[2] + m[3] != s:
                raise ValueError(f"monomial {m} does not have bidegree {self.bidegree}")

    @classmethod
    def zero(cls, field: Field, bidegree: Bidegree = (0, 0)) -> "BiForm":
        return cls(bidegree, {}, field)

    @classmethod
    def constant(cls, c: Scalar, field: Field) -> "BiForm":
        return cls((0, 0), {_ONE: field(c)}, field)

    @classmethod
    def from_v1(cls, pair: Pair, field: Field) -> "BiForm":
        """``pair[0] u1 + pair[1] v1``, i.e. ``u (x) 1``."""
        return cls((1, 0), {_U1: field(pair[0]), _V1: field(pair[1])}, field)

    @classmethod
    def from_v2(cls, pair: Pair, field: Field) -> "BiForm":
        """``pair[0] u2 + pair[1] v2``, i.e. ``1 (x) u``."""
        return cls((0, 1), {_U2: field(pair[0]), _V2: field(pair[1])}, field)

    def coefficient(self, mono: Mono) -> Scalar:
        return self.terms.get(mono, self.field.zero)

    def _like(self, terms: dict[Mono, Scalar], bidegree: Bidegree | None = None) -> "BiForm":
        return BiForm(bidegree or self.bidegree, terms, self.field)

    def __add__(self, other: "BiForm") -> "BiForm":
        if not other.terms:
            return self
        if not self.terms:
            return other
        if other.bidegree != self.bidegree:
            raise ValueError(f"cannot add bidegrees {self.bidegree} and {other.bidegree}")
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, self.field.zero) + c
        return self._like(out)

    def __neg__(self) -> "BiForm":
        return self._like({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "BiForm") -> "BiForm":
        return self + (-other)

    def __mul__(self, other) -> "BiForm":
        if not isinstance(other, BiForm):
            return self._like({m: c * other for m, c in self.terms.items()})
        deg = (self.bidegree[0] + other.bidegree[0], self.bidegree[1] + other.bidegree[1])
        out: dict[Mono, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3])
                out[m] = out.get(m, self.field.zero) + c1 * c2
        return self._like(out, deg)

    def __rmul__(self, c) -> "BiForm":
        return self * c

    def __truediv__(self, c) -> "BiForm":
        inv = 1 / c
        return self * inv

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiForm):
            return NotImplemented
        return self.terms == other.terms and (not self.terms or self.bidegree == other.bidegree)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            mono = "".join(
                name + (str(e) if e > 1 else "")
                for name, e in zip(("u1", "v1", "u2", "v2"), m)
                if e
            )
            s = str(c)
            if mono and s in ("1", "-1"):
                s = s[:-1]
            elif mono and "/" in s:
                s = f"{'-' if s.startswith('-') else ''}({s.lstrip('-')})"
            parts.append(s + mono)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"BiForm{self.bidegree}({self})"


def segre(l: LinForm) -> BiForm:
    """Substitute x = u1u2, y = v1u2, z = u1v2, w = v1v2."""
    if l.n != 4:
        raise ValueError("segre expects a linear form in x, y, z, w")
    return BiForm((1, 1), dict(zip((_X, _Y, _Z, _W), l.coeffs)), l.field)


def unsegre(b: BiForm) -> LinForm:
    """Inverse of :func:`segre` on bidegree (1, 1)."""
    if b and b.bidegree != (1, 1):
        raise ValueError(f"expected bidegree (1, 1), got {b.bidegree}")
    return LinForm([b.coefficient(m) for m in (_X, _Y, _Z, _W)])


def segre_module(phi: KModule) -> list[list[BiForm]]:
    return [[segre(e) for e in row] for row in phi.rows]


def _v1_pair(b: BiForm) -> tuple[Scalar, Scalar]:
    return (b.coefficient(_U1), b.coefficient(_V1))


def _v2_pair(b: BiForm) -> tuple[Scalar, Scalar]:
    return (b.coefficient(_U2), b.coefficient(_V2))


# matrices of BiForms


BiMatrix = list[list[BiForm]]


def _bmatmul(a: BiMatrix, b: BiMatrix) -> BiMatrix:
    out = []
    for row in a:
        new = []
        for j in range(len(b[0])):
            acc = row[0] * b[0][j]
            for k in range(1, len(b)):
                acc = acc + row[k] * b[k][j]
            new.append(acc)
        out.append(new)
    return out


def _bconst(m: linalg.Matrix, field: Field) -> BiMatrix:
    return [[BiForm.constant(c, field) for c in row] for row in m]


def _degree_audit(m: BiMatrix, rows: Sequence[Bidegree], cols: Sequence[Bidegree]) -> list[str]:
    """Entries whose bidegree differs from rows[i] - cols[j]."""
    bad = []
    for i, row in enumerate(m):
        for j, e in enumerate(row):
            want = _sub(rows[i], cols[j])
            if e and (e.bidegree != want or min(want) < 0):
                bad.append(f"({i},{j}): bidegree {e.bidegree}, expected {want}")
    return bad


class Region(str, enum.Enum):
    W0 = "W0"
    W1 = "W1"
    W2 = "W2"
    INVALID = "Invalid"


@dataclass(frozen=True)
class BigPsi:
    """Named entries of psi; V1-forms and V2-forms are coefficient pairs."""

    a1: Scalar
    a2: Scalar
    u12: Pair
    v12: Pair
    u22: Pair
    v22: Pair
    u11: Pair
    v11: Pair
    u21: Pair
    v21: Pair
    f11: LinForm
    f12: LinForm
    f21: LinForm
    f22: LinForm

    V1_FIELDS = ("u11", "v11", "u21", "v21")
    V2_FIELDS = ("u12", "v12", "u22", "v22")
    F_FIELDS = ("f11", "f12", "f21", "f22")

    def __post_init__(self):
        for name in self.V1_FIELDS + self.V2_FIELDS:
            pair = getattr(self, name)
            if len(pair) != 2:
                raise ValueError(f"{name} must be a pair of coefficients")
            object.__setattr__(self, name, tuple(pair))
        for name in self.F_FIELDS:
            if getattr(self, name).n != 4:
                raise ValueError(f"{name} must be a linear form in x, y, z, w")

    @property
    def field(self) -> Field:
        return self.f11.field

    def v1(self, name: str) -> BiForm:
        return BiForm.from_v1(getattr(self, name), self.field)

    def v2(self, name: str) -> BiForm:
        return BiForm.from_v2(getattr(self, name), self.field)

    def to_matrix(self) -> BiMatrix:
        F = self.field
        c = lambda s: BiForm.constant(s, F)  # noqa: E731
        z = lambda i, j: BiForm.zero(F, _sub(TARGET_TWISTS[i], SOURCE_TWISTS[j]))  # noqa: E731
        return [
            [self.v2("u12"), self.v2("v12"), c(self.a1), z(0, 3)],
            [self.v1("u11"), self.v1("v11"), z(1, 2), c(self.a2)],
            [segre(self.f11), segre(self.f12), self.v1("u21"), self.v2("u22")],
            [segre(self.f21), segre(self.f22), self.v1("v21"), self.v2("v22")],
        ]

    @classmethod
    def from_matrix(cls, m: BiMatrix) -> "BigPsi":
        bad = _degree_audit(m, TARGET_TWISTS, SOURCE_TWISTS)
        if bad:
            raise PreconditionError("illegal entries: " + "; ".join(bad))
        return cls(
            a1=m[0][2].coefficient(_ONE),
            a2=m[1][3].coefficient(_ONE),
            u12=_v2_pair(m[0][0]),
            v12=_v2_pair(m[0][1]),
            u11=_v1_pair(m[1][0]),
            v11=_v1_pair(m[1][1]),
            f11=unsegre(m[2][0]),
            f12=unsegre(m[2][1]),
            f21=unsegre(m[3][0]),
            f22=unsegre(m[3][1]),
            u21=_v1_pair(m[2][2]),
            v21=_v1_pair(m[3][2]),
            u22=_v2_pair(m[2][3]),
            v22=_v2_pair(m[3][3]),
        )

    def blocks(self) -> tuple[BiMatrix, BiMatrix, BiMatrix, BiMatrix]:
        """(psi11, psi12, psi21, psi22)."""
        m = self.to_matrix()
        return (
            [r[:2] for r in m[:2]],
            [r[2:] for r in m[:2]],
            [r[:2] for r in m[2:]],
            [r[2:] for r in m[2:]],
        )


class BigGroupElem:
    """(g, h) with g = [[g11, 0], [g21, g22]] and h = [[h11, 0], [h21, h22]].

    g11 and h22 are constant invertible 2x2 matrices, g22 and h11 are
    invertible diagonal ones; g21 has rows of bidegree (0, 1) and (1, 0),
    h21 has columns of bidegree (1, 0) and (0, 1).
    """

    __slots__ = ("g", "h", "g11", "g22", "h11", "h22", "g21", "h21", "field")

    def __init__(
        self,
        g11: linalg.Matrix,
        g21: BiMatrix,
        g22: Sequence[Scalar],
        h11: Sequence[Scalar],
        h21: BiMatrix,
        h22: linalg.Matrix,
        field: Field,
    ):
        self.field = field
        self.g11 = [[field(c) for c in r] for r in g11]
        self.h22 = [[field(c) for c in r] for r in h22]
        self.g22 = [field(c) for c in g22]
        self.h11 = [field(c) for c in h11]
        if not linalg.det2(self.g11) or not linalg.det2(self.h22):
            raise PreconditionError("g11 and h22 must be invertible")
        if not all(self.g22) or not all(self.h11):
            raise PreconditionError("g22 and h11 must be invertible")
        self.g21 = [list(r) for r in g21]
        self.h21 = [list(r) for r in h21]
        zero = BiForm.zero
        self.g = [
            [BiForm.constant(c, field) for c in self.g11[0]] + [zero(field, _sub(SOURCE_TWISTS[0], SOURCE_TWISTS[j])) for j in (2, 3)],
            [BiForm.constant(c, field) for c in self.g11[1]] + [zero(field, _sub(SOURCE_TWISTS[1], SOURCE_TWISTS[j])) for j in (2, 3)],
            self.g21[0] + [BiForm.constant(self.g22[0], field), zero(field, _sub(SOURCE_TWISTS[2], SOURCE_TWISTS[3]))],
            self.g21[1] + [zero(field, _sub(SOURCE_TWISTS[3], SOURCE_TWISTS[2])), BiForm.constant(self.g22[1], field)],
        ]
        self.h = [
            [BiForm.constant(self.h11[0], field), zero(field, _sub(TARGET_TWISTS[0], TARGET_TWISTS[1]))]
            + [zero(field, _sub(TARGET_TWISTS[0], TARGET_TWISTS[j])) for j in (2, 3)],
            [zero(field, _sub(TARGET_TWISTS[1], TARGET_TWISTS[0])), BiForm.constant(self.h11[1], field)]
            + [zero(field, _sub(TARGET_TWISTS[1], TARGET_TWISTS[j])) for j in (2, 3)],
            self.h21[0] + [BiForm.constant(c, field) for c in self.h22[0]],
            self.h21[1] + [BiForm.constant(c, field) for c in self.h22[1]],
        ]
        bad = self.audit()
        if bad:
            raise PreconditionError("illegal group element: " + "; ".join(bad))

    @classmethod
    def identity(cls, field: Field) -> "BigGroupElem":
        one, zero = field.one, field.zero
        eye = [[one, zero], [zero, one]]
        z = lambda d: BiForm.zero(field, d)  # noqa: E731
        g21 = [[z((0, 1)), z((0, 1))], [z((1, 0)), z((1, 0))]]
        h21 = [[z((1, 0)), z((0, 1))], [z((1, 0)), z((0, 1))]]
        return cls(eye, g21, [one, one], [one, one], h21, eye, field)

    def audit(self) -> list[str]:
        """Degree violations of g and h (empty when the element is legal)."""
        bad = [f"g{e}" for e in _degree_audit(self.g, SOURCE_TWISTS, SOURCE_TWISTS)]
        bad += [f"h{e}" for e in _degree_audit(self.h, TARGET_TWISTS, TARGET_TWISTS)]
        return bad

    def g_inverse(self) -> BiMatrix:
        """[[g11^-1, 0], [-g22^-1 g21 g11^-1, g22^-1]]."""
        F = self.field
        g11_inv = linalg.inv2(self.g11)
        g22_inv = [1 / c for c in self.g22]
        lower = _bmatmul(self.g21, _bconst(g11_inv, F))
        lower = [[e * (-g22_inv[i]) for e in row] for i, row in enumerate(lower)]
        out = [[BiForm.zero(F, _sub(SOURCE_TWISTS[i], SOURCE_TWISTS[j])) for j in range(4)] for i in range(4)]
        for i in range(2):
            for j in range(2):
                out[i][j] = BiForm.constant(g11_inv[i][j], F)
                out[2 + i][j] = lower[i][j]
            out[2 + i][2 + i] = BiForm.constant(g22_inv[i], F)
        return out


def act_psi(gh: BigGroupElem, psi: BigPsi) -> BigPsi:
    """h psi g^-1."""
    return BigPsi.from_matrix(_bmatmul(_bmatmul(gh.h, psi.to_matrix()), gh.g_inverse()))


def _independent(p: Pair, q: Pair) -> bool:
    return bool(p[0] * q[1] - p[1] * q[0])


def classify(psi: BigPsi) -> Region:
    a1, a2 = psi.a1, psi.a2
    if a1 and a2:
        return Region.W0
    if a1 and _independent(psi.u11, psi.v11) and _independent(psi.u22, psi.v22):
        return Region.W1
    if a2 and _independent(psi.u12, psi.v12) and _independent(psi.u21, psi.v21):
        return Region.W2
    return Region.INVALID


def _require(psi: BigPsi, *regions: Region) -> Region:
    region = classify(psi)
    if region not in regions:
        names = "/".join(r.value for r in regions)
        raise PreconditionError(f"psi lies in {region.value}, expected {names}")
    return region


def _outer(col: Sequence[BiForm], row: Sequence[BiForm]) -> BiMatrix:
    return [[c * r for r in row] for c in col]


def _to_module(m: BiMatrix) -> KModule:
    return KModule([[unsegre(e) for e in row] for row in m])


def alpha(psi: BigPsi) -> KModule:
    """psi21 - psi22 psi12^-1 psi11."""
    _require(psi, Region.W0)
    psi11, psi12, psi21, psi22 = psi.blocks()
    F = psi.field
    inv12 = _bconst([[1 / psi.a1, F.zero], [F.zero, 1 / psi.a2]], F)
    corr = _bmatmul(_bmatmul(psi22, inv12), psi11)
    return _to_module([[psi21[i][j] - corr[i][j] for j in range(2)] for i in range(2)])


def alpha_explicit(psi: BigPsi) -> KModule:
    """Entrywise pure-tensor expansion of :func:`alpha`."""
    _require(psi, Region.W0)
    left = _outer([psi.v1("u21"), psi.v1("v21")], [psi.v2("u12"), psi.v2("v12")])
    right = _outer([psi.v2("u22"), psi.v2("v22")], [psi.v1("u11"), psi.v1("v11")])
    f = [[segre(psi.f11), segre(psi.f12)], [segre(psi.f21), segre(psi.f22)]]
    return _to_module(
        [[f[i][j] - left[i][j] / psi.a1 - right[i][j] / psi.a2 for j in range(2)] for i in range(2)]
    )


def reduce_psi(psi: BigPsi) -> tuple[BigGroupElem, BigPsi]:
    """Certificate (g, h) with h psi g^-1 = [[0, I], [alpha(psi), 0]].

    g = [[I, 0], [psi11, psi12]] and h = [[I, 0], [-psi22 psi12^-1, I]].
    """
    _require(psi, Region.W0)
    F = psi.field
    one, zero = F.one, F.zero
    eye = [[one, zero], [zero, one]]
    psi11, _, _, psi22 = psi.blocks()
    h21 = [
        [-psi22[0][0] / psi.a1, -psi22[0][1] / psi.a2],
        [-psi22[1][0] / psi.a1, -psi22[1][1] / psi.a2],
    ]
    gh = BigGroupElem(eye, psi11, [psi.a1, psi.a2], [one, one], h21, eye, F)
    return gh, act_psi(gh, psi)


def reduced_psi(phi: KModule) -> BigPsi:
    """[[0, I], [phi, 0]] as a BigPsi."""
    F = phi.field
    one, zero = F.one, F.zero
    z = (zero, zero)
    (f11, f12), (f21, f22) = phi.rows
    return BigPsi(one, one, z, z, z, z, z, z, z, z, f11, f12, f21, f22)


def beta_matrix(psi: BigPsi, formula: str | None = None) -> KModule:
    """The 2x2 matrix whose class is beta(psi).

    Formula "A" (needs a1 != 0, covers W0 and W1):
        a2 psi21 - a2/a1 [u21; v21][u12, v12] - [u22; v22][u11, v11]
    Formula "B" (needs a2 != 0, covers W0 and W2):
        a1 psi21 - [u21; v21][u12, v12] - a1/a2 [u22; v22][u11, v11]
    By default the formula valid on the region of ``psi`` is used.
    """
    region = _require(psi, Region.W0, Region.W1, Region.W2)
    if formula is None:
        formula = "B" if region is Region.W2 else "A"
    left = _outer([psi.v1("u21"), psi.v1("v21")], [psi.v2("u12"), psi.v2("v12")])
    right = _outer([psi.v2("u22"), psi.v2("v22")], [psi.v1("u11"), psi.v1("v11")])
    f = [[segre(psi.f11), segre(psi.f12)], [segre(psi.f21), segre(psi.f22)]]
    if formula == "A":
        if not psi.a1:
            raise PreconditionError("formula A needs a1 != 0")
        c_f, c_left, c_right = psi.a2, psi.a2 / psi.a1, psi.field.one
    elif formula == "B":
        if not psi.a2:
            raise PreconditionError("formula B needs a2 != 0")
        c_f, c_left, c_right = psi.a1, psi.field.one, psi.a1 / psi.a2
    else:
        raise ValueError(f"unknown formula {formula!r}")
    return _to_module(
        [
            [f[i][j] * c_f - left[i][j] * c_left - right[i][j] * c_right for j in range(2)]
            for i in range(2)
        ]
    )


def beta(psi: BigPsi) -> WPoint:
    return eta(beta_matrix(psi))


def in_w0(psi: BigPsi) -> bool:
    """a1 a2 != 0 and alpha(psi) is semi-stable and not a multiple of xw - yz in det."""
    if classify(psi) is not Region.W0:
        return False
    a = alpha(psi)
    return is_semistable(a) and is_injective_on_quadric(a)


def build_xi(psi: BigPsi) -> BiMatrix:
    """The 3x3 matrix from 2O(-1,-1) + O(0,-1) to O(0,-1) + 2O on W1."""
    _require(psi, Region.W1)
    F = psi.field
    a1 = psi.a1
    u21, v21 = psi.v1("u21"), psi.v1("v21")
    u12, v12 = psi.v2("u12"), psi.v2("v12")
    return [
        [psi.v1("u11"), psi.v1("v11"), BiForm.zero(F, (-1, 1))],
        [segre(psi.f11) - u21 * u12 / a1, segre(psi.f12) - u21 * v12 / a1, psi.v2("u22")],
        [segre(psi.f21) - v21 * u12 / a1, segre(psi.f22) - v21 * v12 / a1, psi.v2("v22")],
    ]


@dataclass
class SnakeReport:
    """Residues of the snake-diagram identities; empty lists mean exact."""

    checks: dict[str, list[str]] = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.checks.values())

    def failures(self) -> dict[str, list[str]]:
        return {k: v for k, v in self.checks.items() if v}


def _residues(m: BiMatrix) -> list[str]:
    return [f"({i},{j}): {e}" for i, row in enumerate(m) for j, e in enumerate(row) if e]


def _diff(a: BiMatrix, b: BiMatrix) -> BiMatrix:
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def verify_snake(psi: BigPsi) -> SnakeReport:
    """Exact checks of the diagram built from xi on W1.

    Rows: O(0,-1) -> 2O -> O(0,1), the middle row xi, and
    O(-2,-1) -> 2O(-1,-1) -> O(0,-1).  Columns: inclusion into and
    projection off the extra summand.
    """
    _require(psi, Region.W1)
    F = psi.field
    one = BiForm.constant(1, F)
    zero = BiForm.zero(F)
    u11, v11 = psi.v1("u11"), psi.v1("v11")
    u22, v22 = psi.v2("u22"), psi.v2("v22")
    xi = build_xi(psi)

    top_in = [[u22], [v22]]
    top_out = [[-v22, u22]]
    bot_in = [[-v11], [u11]]
    bot_out = [[u11, v11]]
    incl_left = [[zero], [zero], [one]]
    proj_left = [[one, zero, zero], [zero, one, zero]]
    incl_mid = [[zero, zero], [one, zero], [zero, one]]
    proj_mid = [[one, zero, zero]]

    report = SnakeReport()
    report.checks["top_row"] = _residues(_bmatmul(top_out, top_in))
    report.checks["bottom_row"] = _residues(_bmatmul(bot_out, bot_in))
    report.checks["left_column"] = _residues(_bmatmul(proj_left, incl_left))
    report.checks["middle_column"] = _residues(_bmatmul(proj_mid, incl_mid))
    report.checks["upper_square"] = _residues(
        _diff(_bmatmul(xi, incl_left), _bmatmul(incl_mid, top_in))
    )
    report.checks["lower_square"] = _residues(
        _diff(_bmatmul(proj_mid, xi), _bmatmul(bot_out, proj_left))
    )
    report.checks["elimination"] = _elimination_residues(psi, xi)
    return report


def _elimination_residues(psi: BigPsi, xi: BiMatrix) -> list[str]:
    """Clearing the pivot a1 by legal row and column operations leaves a1 + xi."""
    F = psi.field
    one, zero = F.one, F.zero
    eye = [[one, zero], [zero, one]]
    z = lambda d: BiForm.zero(F, d)  # noqa: E731
    g21 = [[psi.v2("u12") / psi.a1, psi.v2("v12") / psi.a1], [z((1, 0)), z((1, 0))]]
    h21 = [[-psi.v1("u21") / psi.a1, z((0, 1))], [-psi.v1("v21") / psi.a1, z((0, 1))]]
    gh = BigGroupElem(eye, g21, [one, one], [one, one], h21, eye, F)
    m = _bmatmul(_bmatmul(gh.h, psi.to_matrix()), gh.g_inverse())
    expected = psi.to_matrix()
    expected[0] = [z((0, 1)), z((0, 1)), BiForm.constant(psi.a1, F), z((-1, 1))]
    # rows 1-3, columns 0, 1, 3 carry xi; column 2 below the pivot is cleared
    for i in range(3):
        expected[1 + i][0], expected[1 + i][1], expected[1 + i][3] = xi[i]
    expected[1][2] = z((-1, 1))
    expected[2][2] = z((1, 0))
    expected[3][2] = z((1, 0))
    return _residues(_diff(m, expected))
