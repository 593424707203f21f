from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given

import oracle
from kronquad.errors import PreconditionError
from kronquad.field import GF, QQ
from kronquad.kronecker import (
    GroupElem,
    KModule,
    act,
    class_equal,
    det_semiinvariant,
    e_semiinvariant,
    epsilon,
    is_injective_on_quadric,
    project_module,
    rho,
)
from kronquad.multilinear import QuadForm
from kronquad.normalform import normal_form_module
from strategies import coord_changes, field_and, group_elems, modules

P = lambda s, F=QQ: KModule.parse(s, F)  # noqa: E731
NU1 = P("x, y; z, w")
NU2 = P("x, z; y, w")


def Q(terms, F=QQ):
    return QuadForm.from_monomials(terms, F)


def test_det_examples():
    assert det_semiinvariant(P("x+w, y; z, x+2w")) == Q({"x2": 1, "yz": -1, "xw": 3, "w2": 2})
    assert det_semiinvariant(NU1) == Q({"xw": 1, "yz": -1})
    assert not det_semiinvariant(P("x, 0; 0, 0"))


def test_det_display_general():
    # x^2 - yz + (a+d)xw - c yw - b zw + (ad - bc)w^2
    a, b, c, d = 2, -1, 5, 7
    phi = normal_form_module(1, a, b, c, d, QQ)
    assert det_semiinvariant(phi) == Q({"x2": 1, "yz": -1, "xw": a + d, "yw": -c, "zw": -b, "w2": a * d - b * c})


def test_e_examples():
    for b, c in ((0, 0), (4, -7), (Fraction(1, 2), 3)):
        assert e_semiinvariant(normal_form_module(1, 1, b, c, 3, QQ)) == 2
    assert e_semiinvariant(NU1) == 1
    assert e_semiinvariant(NU2) == -1
    assert e_semiinvariant(P("x, y; z, x")) == 0
    with pytest.raises(PreconditionError):
        e_semiinvariant(P("x, y; z, x").drop(3))


def test_rho_examples():
    assert rho(normal_form_module(1, 1, 0, 0, 3, QQ)) == 4
    assert rho(NU1) == 1
    assert rho(P("x, 0; 0, 0")) == 0


def test_act_examples():
    F = QQ
    ident = GroupElem.identity(F)
    phi = P("x+2y, z; w-x, y")
    assert act(ident, phi) == phi
    two = GroupElem([[F(2), F(0)], [F(0), F(2)]], [[F(1), F(0)], [F(0), F(1)]])
    assert det_semiinvariant(act(two, NU1)) == det_semiinvariant(NU1) * Fraction(1, 4)


def test_project_examples():
    nf = normal_form_module(1, 1, 2, 3, 4, QQ)
    assert project_module(nf, "xyz") == P("x, y; z, x").drop(3)
    assert not project_module(P("x, 0; 0, x"), "yzw")
    dropped = project_module(NU1, "xyz")
    assert dropped == P("x, y; z, 0").drop(3)
    assert det_semiinvariant(dropped) == QuadForm.from_monomials({"yz": -1}, QQ, 3)
    with pytest.raises(ValueError):
        project_module(NU1, "xy")


def test_injective_on_quadric():
    assert not is_injective_on_quadric(NU1)
    assert is_injective_on_quadric(normal_form_module(1, 0, 0, 0, 0, QQ))
    assert not is_injective_on_quadric(KModule.zero(QQ))
    assert not is_injective_on_quadric(NU1 * 5)


def test_class_equal_examples():
    F = QQ
    gh = GroupElem([[F(1), F(2)], [F(3), F(4)]], [[F(0), F(1)], [F(-1), F(5)]])
    phi = P("x+w, y-z; z, x+3w")
    assert class_equal(phi, act(gh, phi))
    assert not class_equal(NU1, NU2)
    assert class_equal(phi, phi * 2)


def test_parse_errors():
    with pytest.raises(ValueError):
        P("x, y, z")
    with pytest.raises(ValueError):
        P("x, q; z, w")


def test_group_elem_rejects_singular():
    F = QQ
    with pytest.raises(PreconditionError):
        GroupElem([[F(1), F(2)], [F(2), F(4)]], [[F(1), F(0)], [F(0), F(1)]])


@given(field_and(modules))
def test_epsilon_squared_is_rho(data):
    _, phi = data
    assert epsilon(phi) ** 2 == rho(phi)


@given(field_and(modules, group_elems))
def test_transformation_laws(data):
    _, phi, gh = data
    moved = act(gh, phi)
    ratio = gh.det_h / gh.det_g
    assert det_semiinvariant(moved) == det_semiinvariant(phi) * ratio
    assert e_semiinvariant(moved) == e_semiinvariant(phi) * ratio**2


@given(field_and(modules, coord_changes))
def test_coordinate_laws(data):
    _, phi, u = data
    moved = phi.substitute(u.matrix)
    assert epsilon(moved) == u.det * epsilon(phi)
    assert rho(moved) == u.det**2 * rho(phi)


@given(field_and(modules, group_elems, group_elems))
def test_act_is_an_action(data):
    _, phi, a, b = data
    assert act(a, act(b, phi)) == act(a @ b, phi)
    assert act(a.inverse(), act(a, phi)) == phi


@given(field_and(modules))
def test_against_symbolic_oracle(data):
    field, phi = data
    if field is not QQ:
        return
    det = oracle.det_poly(phi)
    assert oracle.quad(det_semiinvariant(phi)) == det
    # e is the coefficient determinant of (phi11, phi22, phi12, phi21)
    a, b, c, d = (oracle.lin(e) for e in phi.entries)
    assert oracle.rat(e_semiinvariant(phi)) == oracle.coeff_det([a, d, b, c])
    assert oracle.rat(rho(phi)) == oracle.hessian_det(det)


def test_fp_examples():
    F = GF(1009)
    assert e_semiinvariant(P("x, z; y, w", F)) == F(-1)
    assert rho(P("x, z; y, w", F)) == F(1)
