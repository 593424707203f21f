"""Linear and quadratic forms on V = span{x, y, z, w} (or span{x, y, z}).

A :class:`LinForm` is a coefficient vector against the variables, a
:class:`QuadForm` stores the upper-triangular coefficients in the order
x2, xy, xz, xw, y2, yz, yw, z2, zw, w2.  The internal product with the i-th
dual basis vector is the partial derivative, so the matrix of all four
internal products is the Hessian (twice the Gram matrix).

Coordinate changes act by substitution: a matrix M sends a form f(X) to
f(M X).  Consequently ``apply(M2, apply(M1, f)) == apply(M1 @ M2, f)``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from . import linalg
from .errors import NeedsExtension, PreconditionError
from .field import Field, Scalar, field_of

VARIABLES = "xyzw"

__all__ = [
    "VARIABLES",
    "LinForm",
    "QuadForm",
    "CoordChange",
    "internal_product",
    "wedge4",
    "gram_rank",
    "factor_quadric",
    "apply_coord_change",
    "monomial_names",
]


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i, n)]


_PAIRS = {n: _pairs(n) for n in (1, 2, 3, 4)}
_INDEX = {n: {pair: k for k, pair in enumerate(_PAIRS[n])} for n in (1, 2, 3, 4)}


def monomial_names(n: int = 4) -> list[str]:
    """``["x2", "xy", ...]`` in storage order."""
    v = VARIABLES[:n]
    return [v[i] + "2" if i == j else v[i] + v[j] for i, j in _PAIRS[n]]


def _term(c, mono: str) -> str:
    s = str(c)
    neg = s.startswith("-")
    if neg:
        s = s[1:]
    if mono:
        if s == "1":
            s = mono
        elif "/" in s:
            s = f"({s}){mono}"
        else:
            s += mono
    return "-" + s if neg else s


def _format(terms: Iterable[tuple[Scalar, str]]) -> str:
    out = ""
    for c, mono in terms:
        if not c:
            continue
        t = _term(c, mono)
        if not out:
            out = t
        elif t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out or "0"


class LinForm:
    """Linear form sum(c_i * X_i) with exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Scalar]):
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, field: Field, n: int = 4) -> "LinForm":
        return cls((field.zero,) * n)

    @classmethod
    def var(cls, name: str, field: Field, n: int = 4) -> "LinForm":
        k = VARIABLES.index(name)
        return cls(field.one if i == k else field.zero for i in range(n))

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @property
    def field(self) -> Field:
        return field_of(self.coeffs[0])

    def __add__(self, other: "LinForm") -> "LinForm":
        return LinForm([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "LinForm") -> "LinForm":
        return LinForm([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "LinForm":
        return LinForm([-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, LinForm):
            return QuadForm.product(self, other)
        return LinForm([a * other for a in self.coeffs])

    def __rmul__(self, other):
        return LinForm([other * a for a in self.coeffs])

    def __truediv__(self, c) -> "LinForm":
        return LinForm([a / c for a in self.coeffs])

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        return _format(zip(self.coeffs, VARIABLES))

    def __repr__(self) -> str:
        return f"LinForm({self})"

    def __call__(self, point: Sequence[Scalar]) -> Scalar:
        return sum((c * p for c, p in zip(self.coeffs, point)), self.coeffs[0] * 0)

    def substitute(self, m: linalg.Matrix) -> "LinForm":
        """l(M X): the row vector of coefficients times M."""
        n = self.n
        c = self.coeffs
        return LinForm([sum((c[i] * m[i][k] for i in range(n)), c[0] * 0) for k in range(n)])

    def drop(self, k: int) -> "LinForm":
        """Remove the k-th variable (projection onto the other coordinates)."""
        return LinForm(self.coeffs[:k] + self.coeffs[k + 1 :])

    def extend(self, field: Field) -> "LinForm":
        """Append a zero coefficient for a new last variable."""
        return LinForm(self.coeffs + (field.zero,))


class QuadForm:
    """Quadratic form with upper-triangular coefficient storage."""

    __slots__ = ("coeffs", "n")

    def __init__(self, coeffs: Sequence[Scalar], n: int | None = None):
        coeffs = tuple(coeffs)
        if n is None:
            n = {1: 1, 3: 2, 6: 3, 10: 4}[len(coeffs)]
        if len(coeffs) != n * (n + 1) // 2:
            raise ValueError("wrong number of quadratic coefficients")
        self.coeffs = coeffs
        self.n = n

    @classmethod
    def zero(cls, field: Field, n: int = 4) -> "QuadForm":
        return cls((field.zero,) * (n * (n + 1) // 2), n)

    @classmethod
    def product(cls, a: LinForm, b: LinForm) -> "QuadForm":
        ca, cb = a.coeffs, b.coeffs
        n = len(ca)
        out = []
        for i, j in _PAIRS[n]:
            if i == j:
                out.append(ca[i] * cb[i])
            else:
                out.append(ca[i] * cb[j] + ca[j] * cb[i])
        return cls(out, n)

    @classmethod
    def from_monomials(cls, terms: dict[str, Scalar], field: Field, n: int = 4) -> "QuadForm":
        """Build from ``{"x2": 1, "yz": -1}``; ``"zy"`` is accepted for ``"yz"``."""
        coeffs = [field.zero] * (n * (n + 1) // 2)
        v = VARIABLES[:n]
        for name, c in terms.items():
            if len(name) == 2 and name[1] == "2":
                i = j = v.index(name[0])
            elif len(name) == 2:
                i, j = sorted((v.index(name[0]), v.index(name[1])))
            else:
                raise ValueError(f"bad monomial {name!r}")
            if name[0] not in v or name[1] not in v + "2":
                raise ValueError(f"bad monomial {name!r}")
            coeffs[_INDEX[n][(i, j)]] += field(c)
        return cls(coeffs, n)

    @classmethod
    def from_hessian(cls, h: linalg.Matrix) -> "QuadForm":
        n = len(h)
        return cls([h[i][i] / 2 if i == j else h[i][j] for i, j in _PAIRS[n]], n)

    @property
    def field(self) -> Field:
        return field_of(self.coeffs[0])

    def coefficient(self, i: int, j: int) -> Scalar:
        if i > j:
            i, j = j, i
        return self.coeffs[_INDEX[self.n][(i, j)]]

    def monomials(self) -> dict[str, Scalar]:
        return dict(zip(monomial_names(self.n), self.coeffs))

    def hessian(self) -> linalg.Matrix:
        """Matrix of second partials; row i holds the coefficients of dq/dX_i."""
        n = self.n
        h = [[None] * n for _ in range(n)]
        for (i, j), c in zip(_PAIRS[n], self.coeffs):
            if i == j:
                h[i][i] = c + c
            else:
                h[i][j] = h[j][i] = c
        return h

    def gram(self) -> linalg.Matrix:
        return [[c / 2 for c in row] for row in self.hessian()]

    def partial(self, k: int) -> LinForm:
        return LinForm(self.hessian()[k])

    def __call__(self, point: Sequence[Scalar]) -> Scalar:
        return sum(
            (c * point[i] * point[j] for (i, j), c in zip(_PAIRS[self.n], self.coeffs)),
            self.coeffs[0] * 0,
        )

    def bilinear(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
        """Polar form B with B(v, v) = q(v)."""
        h = self.hessian()
        n = self.n
        return sum((u[i] * h[i][j] * v[j] for i in range(n) for j in range(n)), self.coeffs[0] * 0) / 2

    def __add__(self, other: "QuadForm") -> "QuadForm":
        return QuadForm([a + b for a, b in zip(self.coeffs, other.coeffs)], self.n)

    def __sub__(self, other: "QuadForm") -> "QuadForm":
        return QuadForm([a - b for a, b in zip(self.coeffs, other.coeffs)], self.n)

    def __neg__(self) -> "QuadForm":
        return QuadForm([-a for a in self.coeffs], self.n)

    def __mul__(self, c) -> "QuadForm":
        return QuadForm([a * c for a in self.coeffs], self.n)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "QuadForm":
        return QuadForm([a / c for a in self.coeffs], self.n)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadForm):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        return _format(zip(self.coeffs, [m.replace("2", "²") for m in monomial_names(self.n)]))

    def __repr__(self) -> str:
        return f"QuadForm({self})"

    def substitute(self, m: linalg.Matrix) -> "QuadForm":
        h = self.hessian()
        return QuadForm.from_hessian(linalg.matmul(linalg.transpose(m), linalg.matmul(h, m)))

    def drop(self, k: int) -> "QuadForm":
        """Set the k-th variable to zero and remove it."""
        n = self.n
        keep = [c for (i, j), c in zip(_PAIRS[n], self.coeffs) if i != k and j != k]
        return QuadForm(keep, n - 1)


class CoordChange:
    """Invertible n x n substitution matrix X -> M X."""

    __slots__ = ("matrix", "det")

    def __init__(self, matrix: linalg.Matrix):
        self.matrix = [list(row) for row in matrix]
        self.det = linalg.det(self.matrix)
        if not self.det:
            raise PreconditionError("coordinate change must be invertible")

    @classmethod
    def identity(cls, field: Field, n: int = 4) -> "CoordChange":
        return cls(linalg.identity(n, field))

    @property
    def n(self) -> int:
        return len(self.matrix)

    def then(self, other: "CoordChange") -> "CoordChange":
        """Change equal to applying ``self`` first and ``other`` second."""
        return CoordChange(linalg.matmul(self.matrix, other.matrix))

    def inverse(self) -> "CoordChange":
        return CoordChange(linalg.inverse(self.matrix, field_of(self.det)))

    def __eq__(self, other) -> bool:
        return isinstance(other, CoordChange) and self.matrix == other.matrix

    def __repr__(self) -> str:
        return f"CoordChange({[[str(c) for c in row] for row in self.matrix]})"


def apply_coord_change(change: CoordChange | linalg.Matrix, obj):
    """Substitute X -> M X into a LinForm, QuadForm or anything with ``substitute``."""
    if not isinstance(change, CoordChange):
        change = CoordChange(change)
    return obj.substitute(change.matrix)


def internal_product(i: int, q: QuadForm) -> LinForm:
    """Contraction with the i-th dual basis vector (1-based), i.e. dq/dX_i."""
    if not 1 <= i <= q.n:
        raise ValueError(f"variable index must be in 1..{q.n}")
    return q.partial(i - 1)


def wedge4(l1: LinForm, l2: LinForm, l3: LinForm, l4: LinForm) -> Scalar:
    """Coefficient of l1^l2^l3^l4 against x^y^z^w."""
    return linalg.det([l1.coeffs, l2.coeffs, l3.coeffs, l4.coeffs])


def gram_rank(q: QuadForm) -> int:
    return linalg.rank(q.hessian())


def _rank_one_parts(q: QuadForm) -> tuple[LinForm, Scalar]:
    """For q of Gram rank 1 return (u, k) with q = k * u^2."""
    h = q.hessian()
    i = next(t for t in range(q.n) if h[t][t])
    return LinForm(h[i]) / h[i][i], q.coefficient(i, i)


def factor_quadric(q: QuadForm) -> tuple[LinForm, LinForm]:
    """Write ``q = u * v`` over the active field.

    Raises :class:`PreconditionError` unless ``q`` is nonzero of Gram rank
    at most 2, and :class:`NeedsExtension` when the two factors are
    conjugate over a quadratic extension.
    """
    if not q:
        raise PreconditionError("cannot factor the zero form")
    r = gram_rank(q)
    if r > 2:
        raise PreconditionError(f"quadric of Gram rank {r} is irreducible")
    if r == 1:
        u, k = _rank_one_parts(q)
        return u, u * k
    field = q.field
    n = q.n
    i = next((k for k in range(n) if q.coefficient(k, k)), None)
    if i is None:
        # no square terms: shear X_j -> X_j + X_i to create one
        i, j = next((a, b) for a, b in _PAIRS[n] if a != b and q.coefficient(a, b))
        m = linalg.identity(n, field)
        m[j][i] = field.one
        shear = CoordChange(m)
        u, v = factor_quadric(apply_coord_change(shear, q))
        back = shear.inverse()
        return apply_coord_change(back, u), apply_coord_change(back, v)
    a = q.coefficient(i, i)
    # q = a X_i^2 + X_i B + C with B, C free of X_i
    b = LinForm([q.coefficient(i, k) if k != i else field.zero for k in range(n)])
    c = q - QuadForm.product(LinForm.var(VARIABLES[i], field, n), b) - QuadForm.product(
        LinForm.var(VARIABLES[i], field, n) * a, LinForm.var(VARIABLES[i], field, n)
    )
    disc = b * b - c * (4 * a)
    d_lin, k = _rank_one_parts(disc)
    s = field.sqrt(k)
    if s is None:
        raise NeedsExtension("irrational-factors", f"{q} splits only over a quadratic extension")
    d = d_lin * s
    xi = LinForm.var(VARIABLES[i], field, n)
    u = (xi * (2 * a) + b + d) / 2
    v = (xi * (2 * a) + b - d) / (2 * a)
    return u, v
