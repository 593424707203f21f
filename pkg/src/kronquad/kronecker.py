"""2x2 Kronecker modules with entries in V and their semi-invariants.

A module phi is a 2x2 matrix of linear forms.  The group G = (GL2 x GL2)/C*
acts by ``(g, h) . phi = h phi g^-1``; with this convention

    det((g, h) phi) = det(g)^-1 det(h) det(phi)
    e((g, h) phi)   = det(g)^-2 det(h)^2 e(phi)
"""

from __future__ import annotations

from typing import Sequence

from . import linalg
from .errors import PreconditionError
from .field import Field, Scalar, field_of
from .multilinear import VARIABLES, LinForm, QuadForm, internal_product, wedge4

__all__ = [
    "KModule",
    "GroupElem",
    "det_semiinvariant",
    "e_semiinvariant",
    "epsilon",
    "rho",
    "act",
    "project_module",
    "is_injective_on_quadric",
    "class_equal",
    "parse_linform",
]


class KModule:
    """phi = [[phi11, phi12], [phi21, phi22]] with LinForm entries."""

    __slots__ = ("entries",)

    def __init__(self, rows: Sequence[Sequence[LinForm]]):
        (a, b), (c, d) = rows
        self.entries = (a, b, c, d)
        if len({e.n for e in self.entries}) != 1:
            raise ValueError("module entries must live in the same space")

    @classmethod
    def from_slices(cls, slices: Sequence[linalg.Matrix]) -> "KModule":
        """Inverse of :meth:`slices`: phi = sum_k slices[k] * X_k."""
        return cls(
            [[LinForm([s[i][j] for s in slices]) for j in range(2)] for i in range(2)]
        )

    @classmethod
    def zero(cls, field: Field, n: int = 4) -> "KModule":
        z = LinForm.zero(field, n)
        return cls([[z, z], [z, z]])

    @classmethod
    def parse(cls, text: str, field: Field, n: int = 4) -> "KModule":
        """Build from a compact string such as ``"x+w, y; z, x+3w"``."""
        rows = [r.split(",") for r in text.split(";")]
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("expected 'a, b; c, d'")
        return cls([[parse_linform(e, field, n) for e in r] for r in rows])

    @property
    def n(self) -> int:
        return self.entries[0].n

    @property
    def field(self) -> Field:
        return self.entries[0].field

    @property
    def rows(self) -> list[list[LinForm]]:
        a, b, c, d = self.entries
        return [[a, b], [c, d]]

    def __getitem__(self, ij: tuple[int, int]) -> LinForm:
        i, j = ij
        return self.entries[2 * i + j]

    def slices(self) -> list[linalg.Matrix]:
        """Constant 2x2 matrices M_k with phi = sum_k M_k X_k."""
        a, b, c, d = (e.coeffs for e in self.entries)
        return [[[a[k], b[k]], [c[k], d[k]]] for k in range(self.n)]

    def substitute(self, m: linalg.Matrix) -> "KModule":
        return KModule([[e.substitute(m) for e in row] for row in self.rows])

    def drop(self, k: int) -> "KModule":
        return KModule([[e.drop(k) for e in row] for row in self.rows])

    def __mul__(self, c) -> "KModule":
        return KModule([[e * c for e in row] for row in self.rows])

    __rmul__ = __mul__

    def __add__(self, other: "KModule") -> "KModule":
        return KModule([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "KModule":
        return KModule([[-e for e in row] for row in self.rows])

    def __bool__(self) -> bool:
        return any(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KModule):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __str__(self) -> str:
        a, b, c, d = self.entries
        return f"[[{a}, {b}], [{c}, {d}]]"

    def __repr__(self) -> str:
        return f"KModule({self})"


def parse_linform(text: str, field: Field, n: int = 4) -> LinForm:
    """Parse ``"2x - y + 1/2w"`` (no spaces needed, ``*`` optional)."""
    s = text.replace(" ", "").replace("*", "")
    if s in ("", "0"):
        return LinForm.zero(field, n)
    coeffs = [field.zero] * n
    if s[0] not in "+-":
        s = "+" + s
    pos = 0
    while pos < len(s):
        sign = -1 if s[pos] == "-" else 1
        pos += 1
        end = pos
        while end < len(s) and s[end] not in "+-":
            end += 1
        term = s[pos:end].strip("()")
        pos = end
        var = term[-1]
        if var not in VARIABLES[:n]:
            raise ValueError(f"bad term {term!r} in {text!r}")
        c = term[:-1].strip("()")
        coeffs[VARIABLES.index(var)] += field.parse(c) * sign if c else field(sign)
    return LinForm(coeffs)


class GroupElem:
    """A pair (g, h) of invertible 2x2 matrices, stored without quotienting."""

    __slots__ = ("g", "h", "det_g", "det_h", "_g_inv")

    def __init__(self, g: linalg.Matrix, h: linalg.Matrix):
        self.g = [list(r) for r in g]
        self.h = [list(r) for r in h]
        self.det_g = linalg.det2(self.g)
        self.det_h = linalg.det2(self.h)
        if not self.det_g or not self.det_h:
            raise PreconditionError("group element must have invertible g and h")
        self._g_inv = linalg.inv2(self.g)

    @classmethod
    def identity(cls, field: Field) -> "GroupElem":
        return cls(linalg.identity(2, field), linalg.identity(2, field))

    @property
    def g_inv(self) -> linalg.Matrix:
        return self._g_inv

    @property
    def character(self) -> Scalar:
        """det(h)/det(g): the factor by which det(phi) scales."""
        return self.det_h / self.det_g

    def __matmul__(self, other: "GroupElem") -> "GroupElem":
        """``a @ b`` acts as b first, then a."""
        return GroupElem(linalg.matmul(self.g, other.g), linalg.matmul(self.h, other.h))

    def inverse(self) -> "GroupElem":
        return GroupElem(self._g_inv, linalg.inv2(self.h))

    def __repr__(self) -> str:
        fmt = lambda m: [[str(c) for c in r] for r in m]  # noqa: E731
        return f"GroupElem(g={fmt(self.g)}, h={fmt(self.h)})"


def _const_times(m: linalg.Matrix, rows: list[list[LinForm]]) -> list[list[LinForm]]:
    return [
        [rows[0][j] * m[i][0] + rows[1][j] * m[i][1] for j in range(2)] for i in range(2)
    ]


def _times_const(rows: list[list[LinForm]], m: linalg.Matrix) -> list[list[LinForm]]:
    return [
        [rows[i][0] * m[0][j] + rows[i][1] * m[1][j] for j in range(2)] for i in range(2)
    ]


def act(gh: GroupElem, phi: KModule) -> KModule:
    """(g, h) . phi = h phi g^-1."""
    return KModule(_times_const(_const_times(gh.h, phi.rows), gh.g_inv))


def det_semiinvariant(phi: KModule) -> QuadForm:
    a, b, c, d = phi.entries
    return QuadForm.product(a, d) - QuadForm.product(b, c)


def e_semiinvariant(phi: KModule) -> Scalar:
    """phi11 ^ phi22 ^ phi12 ^ phi21 as a multiple of x^y^z^w."""
    if phi.n != 4:
        raise PreconditionError("e is defined for modules over a 4-dimensional space")
    a, b, c, d = phi.entries
    return wedge4(a, d, b, c)


# in the dual basis of {x, y, z, w} the contraction with v1^v2^v3^v4 is the identity
epsilon = e_semiinvariant


def rho(phi: KModule) -> Scalar:
    """Wedge of the four internal products of det(phi)."""
    q = det_semiinvariant(phi)
    return wedge4(*(internal_product(i, q) for i in range(1, 5)))


def project_module(phi: KModule, kept: Sequence[str] | str = "xyz") -> KModule:
    """Drop the coefficient of the one variable not listed in ``kept``."""
    kept = "".join(kept)
    if len(kept) != phi.n - 1 or not set(kept) <= set(VARIABLES[: phi.n]):
        raise ValueError(f"kept must name {phi.n - 1} of the variables")
    (k,) = [i for i, v in enumerate(VARIABLES[: phi.n]) if v not in kept]
    return phi.drop(k)


def is_injective_on_quadric(phi: KModule) -> bool:
    """True iff det(phi) is not a multiple of xw - yz."""
    q = det_semiinvariant(phi)
    c = q.coefficient(0, 3)
    zero = c * 0
    segre = [zero] * 10
    segre[3], segre[5] = c, -c
    return q.coeffs != tuple(segre)


def class_equal(phi1: KModule, phi2: KModule) -> bool:
    """Whether two semi-stable modules define the same point of the moduli space."""
    from .modulimap import eta

    return eta(phi1) == eta(phi2)

