from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from kronquad import linalg
from kronquad.field import GF, QQ
from kronquad.kronecker import KModule, act
from kronquad.normalform import normal_form_module
from kronquad.sampling import crafted_degenerates, random_mixed_module, trial_rng
from kronquad.stability import StabilityVerdict, is_semistable, is_stable, king_oracle
from strategies import FIELDS, coord_changes, field_and, group_elems, modules

P = lambda s, F=QQ: KModule.parse(s, F)  # noqa: E731


def test_examples():
    nu1 = P("x, y; z, w")
    assert is_semistable(nu1) and is_stable(nu1)
    assert is_semistable(P("x, y; 0, x")) and not is_stable(P("x, y; 0, x"))
    assert not is_semistable(KModule.zero(QQ))
    assert is_stable(normal_form_module(1, 0, 0, 0, 0, QQ))


def test_oracle_examples():
    v = king_oracle(P("x, y; 0, x"))
    assert (v.semistable, v.stable) == (True, False)
    assert v.witness["K"] == [[1, 0]] and v.witness["L"] == [[1, 0]]
    v = king_oracle(P("x, 0; y, 0"))
    assert not v.semistable
    assert (v.witness["dim_K"], v.witness["dim_L"]) == (1, 0)
    assert v.witness["K"] == [[0, 1]]


def test_destabilizer_only_over_closure():
    # det = x^2 + y^2 is irreducible over Q but splits over Q(i)
    v = king_oracle(P("x, y; -y, x"))
    assert (v.semistable, v.stable) == (True, False)
    assert v.witness["over_closure"]
    # over F_13, -1 is a square and the witness is explicit
    v13 = king_oracle(P("x, y; -y, x", GF(13)))
    assert not v13.stable and v13.witness["K"] is not None


def test_verdict_invariant():
    with pytest.raises(ValueError):
        StabilityVerdict(False, True)


def _check_witness(phi: KModule, v: StabilityVerdict) -> None:
    w = v.witness
    if w is None or w.get("over_closure"):
        return
    k_basis, l_basis = w["K"], w["L"]
    assert len(k_basis) == w["dim_K"] and len(l_basis) == w["dim_L"]
    for m in phi.slices():
        for k in k_basis:
            image = [m[0][0] * k[0] + m[0][1] * k[1], m[1][0] * k[0] + m[1][1] * k[1]]
            assert linalg.rank(l_basis + [image]) == len(l_basis), "M K is not inside L"
    assert w["dim_L"] <= w["dim_K"]
    if not v.semistable:
        assert w["dim_L"] < w["dim_K"]


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f.spec)
def test_crafted_degenerates_agree(field):
    for phi in crafted_degenerates(field):
        v = king_oracle(phi)
        assert (v.semistable, v.stable) == (is_semistable(phi), is_stable(phi)), str(phi)
        _check_witness(phi, v)


@given(st.sampled_from(FIELDS), st.integers(0, 2**32))
def test_oracle_matches_criterion_on_mixed_strata(field, seed):
    phi = random_mixed_module(field, trial_rng(seed, "test", 0))
    v = king_oracle(phi)
    assert (v.semistable, v.stable) == (is_semistable(phi), is_stable(phi))
    _check_witness(phi, v)


@given(field_and(modules))
def test_oracle_matches_criterion_dense(data):
    _, phi = data
    v = king_oracle(phi)
    assert (v.semistable, v.stable) == (is_semistable(phi), is_stable(phi))


@given(field_and(modules, group_elems, coord_changes))
def test_verdicts_invariant(data):
    _, phi, gh, u = data
    for other in (act(gh, phi), phi.substitute(u.matrix)):
        assert is_semistable(other) == is_semistable(phi)
        assert is_stable(other) == is_stable(phi)
