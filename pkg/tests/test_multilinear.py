from __future__ import annotations

import pytest
from hypothesis import given

import oracle
from kronquad import linalg
from kronquad.errors import NeedsExtension, PreconditionError
from kronquad.field import GF, QQ
from kronquad.multilinear import (
    CoordChange,
    LinForm,
    QuadForm,
    apply_coord_change,
    factor_quadric,
    gram_rank,
    internal_product,
    wedge4,
)
from strategies import coord_changes, field_and, linforms, quadforms

x, y, z, w = (LinForm.var(v, QQ) for v in "xyzw")


def Q(terms, field=QQ, n=4):
    return QuadForm.from_monomials(terms, field, n)


def test_internal_product_examples():
    # a = 1, d = 2
    assert internal_product(1, Q({"x2": 1, "yz": -1, "xw": 3})) == 2 * x + 3 * w
    assert internal_product(2, Q({"x2": 1})) == LinForm.zero(QQ)
    assert internal_product(4, Q({"xw": 1, "yz": -1})) == x


def test_wedge4_examples():
    assert wedge4(x, w, y, z) == 1
    assert wedge4(x, x, y, z) == 0
    assert wedge4(x, y, z, w) == 1


def test_gram_rank_examples():
    assert gram_rank(Q({"x2": 1})) == 1
    assert gram_rank(Q({"xw": 1, "yz": -1})) == 4
    assert gram_rank(Q({"x2": 1, "yz": -1})) == 3
    assert gram_rank(QuadForm.zero(QQ)) == 0


def test_factor_examples():
    u, v = factor_quadric(Q({"x2": 1}))
    assert u * v == Q({"x2": 1})
    assert gram_rank(u * u) == 1 and u.coeffs[1:] == (0, 0, 0)
    u, v = factor_quadric(Q({"xy": 1}))
    assert u * v == x * y
    with pytest.raises(NeedsExtension):
        factor_quadric(Q({"x2": 1, "y2": 1}))
    F = GF(13)  # -1 = 5^2 mod 13
    u, v = factor_quadric(Q({"x2": 1, "y2": 1}, F))
    assert u * v == Q({"x2": 1, "y2": 1}, F)
    with pytest.raises(PreconditionError):
        factor_quadric(Q({"x2": 1, "yz": -1}))
    with pytest.raises(PreconditionError):
        factor_quadric(QuadForm.zero(QQ))


def test_factor_without_square_terms():
    q = (x + 2 * y) * (3 * z - w)
    u, v = factor_quadric(QuadForm.from_monomials({}, QQ) + q)
    assert u * v == q


def test_coord_change_examples():
    q = Q({"x2": 1, "yz": -1})
    assert apply_coord_change(CoordChange.identity(QQ), q) == q
    swap = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    assert apply_coord_change([[QQ(c) for c in r] for r in swap], q) == q
    neg_z = [[QQ(int(i == j) * (-1 if i == 2 else 1)) for j in range(4)] for i in range(4)]
    assert apply_coord_change(neg_z, Q({"x2": 1, "yz": 1})) == q
    with pytest.raises(PreconditionError):
        CoordChange([[QQ(0)] * 4] * 4)


def test_hessian_is_twice_gram_and_matches_sympy():
    q = Q({"x2": 3, "xy": 1, "zw": -5, "w2": 2, "yz": 7})
    h, g = q.hessian(), q.gram()
    assert all(h[i][j] == 2 * g[i][j] for i in range(4) for j in range(4))
    assert oracle.hessian_det(oracle.quad(q)) == oracle.rat(linalg.det(h))


def test_product_matches_sympy():
    a, b = x + 2 * y - w, 3 * z + y
    assert oracle.quad(a * b) == (oracle.lin(a) * oracle.lin(b)).expand()


@given(field_and(quadforms))
def test_euler_identity(data):
    field, q = data
    total = QuadForm.zero(field)
    for i in range(1, 5):
        total = total + QuadForm.product(LinForm.var("xyzw"[i - 1], field), internal_product(i, q))
    assert total == q * 2


@given(field_and(quadforms, quadforms, linforms))
def test_internal_product_linear(data):
    field, q1, q2, _ = data
    for i in range(1, 5):
        assert internal_product(i, q1 + q2) == internal_product(i, q1) + internal_product(i, q2)


@given(field_and(linforms, linforms, linforms, linforms, linforms))
def test_wedge4_alternating_multilinear(data):
    _, a, b, c, d, e = data
    assert wedge4(a, b, c, d) == -wedge4(b, a, c, d)
    assert wedge4(a, b, c, d) == -wedge4(a, b, d, c)
    assert wedge4(a, a, c, d) == 0
    assert wedge4(a + e, b, c, d) == wedge4(a, b, c, d) + wedge4(e, b, c, d)


@given(field_and(quadforms, coord_changes))
def test_gram_rank_invariant(data):
    _, q, u = data
    assert gram_rank(apply_coord_change(u, q)) == gram_rank(q)


@given(field_and(quadforms, coord_changes, coord_changes))
def test_substitution_composes(data):
    _, q, m1, m2 = data
    lhs = apply_coord_change(m2, apply_coord_change(m1, q))
    assert lhs == apply_coord_change(m1.then(m2), q)


@given(field_and(linforms, linforms))
def test_factor_round_trip(data):
    field, a, b = data
    q = a * b
    if not q:
        return
    try:
        u, v = factor_quadric(q)
    except NeedsExtension:  # pragma: no cover - a product always splits
        pytest.fail("a product of linear forms must factor over its own field")
    assert u * v == q


@given(field_and(quadforms))
def test_factor_when_returned_is_exact(data):
    _, q = data
    if not q or gram_rank(q) > 2:
        return
    try:
        u, v = factor_quadric(q)
    except NeedsExtension:
        return
    assert u * v == q


@given(field_and(quadforms, coord_changes))
def test_substitution_matches_sympy(data):
    field, q, u = data
    if field is not QQ:
        return
    assert oracle.quad(q.substitute(u.matrix)) == oracle.substitute(oracle.quad(q), u.matrix)
