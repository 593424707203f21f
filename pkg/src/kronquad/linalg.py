"""Small dense exact linear algebra on lists of lists.

Matrices are ``list[list[Scalar]]``.  Everything is exact; there is no
pivoting strategy beyond "first nonzero".
"""

from __future__ import annotations

from typing import Sequence

from .field import Field, Scalar

Matrix = list[list[Scalar]]


def identity(n: int, field: Field) -> Matrix:
    one, zero = field.one, field.zero
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(r: int, c: int, field: Field) -> Matrix:
    return [[field.zero] * c for _ in range(r)]


def diag(entries: Sequence[Scalar], field: Field) -> Matrix:
    n = len(entries)
    return [[entries[i] if i == j else field.zero for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    out = []
    for row in a:
        out.append([sum((x * y for x, y in zip(row, col)), row[0] * 0) for col in bt])
    return out


def scale(c: Scalar, a: Matrix) -> Matrix:
    return [[c * x for x in row] for row in a]


def det2(a: Matrix) -> Scalar:
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def det(a: Matrix) -> Scalar:
    """Determinant; division-free for n <= 4."""
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return det2(a)
    if n == 3:
        return (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )
    if n == 4:
        # Laplace expansion along the first two rows
        r0, r1, r2, r3 = a
        s0 = r0[0] * r1[1] - r1[0] * r0[1]
        s1 = r0[0] * r1[2] - r1[0] * r0[2]
        s2 = r0[0] * r1[3] - r1[0] * r0[3]
        s3 = r0[1] * r1[2] - r1[1] * r0[2]
        s4 = r0[1] * r1[3] - r1[1] * r0[3]
        s5 = r0[2] * r1[3] - r1[2] * r0[3]
        c5 = r2[2] * r3[3] - r3[2] * r2[3]
        c4 = r2[1] * r3[3] - r3[1] * r2[3]
        c3 = r2[1] * r3[2] - r3[1] * r2[2]
        c2 = r2[0] * r3[3] - r3[0] * r2[3]
        c1 = r2[0] * r3[2] - r3[0] * r2[2]
        c0 = r2[0] * r3[1] - r3[0] * r2[1]
        return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0
    return _det_elim(a)


def _det_elim(a: Matrix) -> Scalar:
    m = [list(row) for row in a]
    n = len(m)
    result = m[0][0] ** 0
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return m[0][0] * 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            result = -result
        result = result * m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return result


def row_echelon(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(row_echelon(a)[1])


def nullspace(a: Matrix, field: Field) -> list[list[Scalar]]:
    """Basis of the right kernel {v : a v = 0}."""
    cols = len(a[0])
    m, pivots = row_echelon(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * cols
        v[f] = field.one
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        basis.append(v)
    return basis


def inverse(a: Matrix, field: Field) -> Matrix:
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(n, field))]
    m, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in m]


def inv2(a: Matrix) -> Matrix:
    d = det2(a)
    if not d:
        raise ZeroDivisionError("singular 2x2 matrix")
    return [[a[1][1] / d, -a[0][1] / d], [-a[1][0] / d, a[0][0] / d]]


def block_diag(a: Matrix, b: Matrix, field: Field) -> Matrix:
    n, m = len(a), len(b)
    out = zeros(n + m, n + m, field)
    for i in range(n):
        out[i][:n] = a[i]
    for i in range(m):
        out[n + i][n:] = b[i]
    return out


def convert(a: Sequence[Sequence], field: Field) -> Matrix:
    return [[field(x) for x in row] for row in a]
