"""JSON codecs.

Scalars are written as integers when integral and as ``"n/d"`` strings
otherwise; F_p residues are written as integers in [0, p).  Readers also
accept the compact string syntax of :meth:`KModule.parse` for modules and
linear forms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .blowdown import BigPsi, Region
from .field import Field, Fp, Scalar
from .kronecker import GroupElem, KModule, parse_linform
from .modulimap import WPoint
from .multilinear import VARIABLES, LinForm, QuadForm, monomial_names
from .normalform import NormalForm
from .stability import StabilityVerdict

__all__ = [
    "scalar_to_json",
    "scalar_from_json",
    "linform_to_json",
    "linform_from_json",
    "quadform_to_json",
    "quadform_from_json",
    "module_to_json",
    "module_from_json",
    "wpoint_to_json",
    "wpoint_from_json",
    "normal_form_to_json",
    "verdict_to_json",
    "psi_to_json",
    "psi_from_json",
]

_V1_KEYS = ("u1", "v1")
_V2_KEYS = ("u2", "v2")


def scalar_to_json(s: Scalar) -> int | str:
    if isinstance(s, Fp):
        return s.v
    s = Fraction(s)
    return s.numerator if s.denominator == 1 else str(s)


def scalar_from_json(obj: Any, field: Field) -> Scalar:
    return field.parse(obj)


def _matrix_to_json(m) -> list[list]:
    return [[scalar_to_json(c) for c in row] for row in m]


def linform_to_json(l: LinForm) -> dict[str, Any]:
    return {v: scalar_to_json(c) for v, c in zip(VARIABLES, l.coeffs)}


def linform_from_json(obj: Any, field: Field) -> LinForm:
    if isinstance(obj, str):
        return parse_linform(obj, field)
    if isinstance(obj, dict):
        extra = set(obj) - set(VARIABLES)
        if extra:
            raise ValueError(f"unknown variables {sorted(extra)} in linear form")
        return LinForm([field.parse(obj.get(v, 0)) for v in VARIABLES])
    if isinstance(obj, list) and len(obj) == 4:
        return LinForm([field.parse(c) for c in obj])
    raise ValueError(f"cannot read a linear form from {obj!r}")


def quadform_to_json(q: QuadForm) -> dict[str, Any]:
    return {k: scalar_to_json(c) for k, c in q.monomials().items() if c}


def quadform_from_json(obj: Any, field: Field) -> QuadForm:
    if not isinstance(obj, dict):
        raise ValueError("a quadratic form is a map from monomials (x2, xy, ...) to coefficients")
    extra = set(obj) - set(monomial_names(4))
    if extra:
        raise ValueError(f"unknown monomials {sorted(extra)}")
    return QuadForm.from_monomials({k: field.parse(v) for k, v in obj.items()}, field)


def module_to_json(phi: KModule) -> list[list[dict[str, Any]]]:
    return [[linform_to_json(e) for e in row] for row in phi.rows]


def module_from_json(obj: Any, field: Field) -> KModule:
    if isinstance(obj, dict) and "module" in obj:
        obj = obj["module"]
    if isinstance(obj, str):
        return KModule.parse(obj, field)
    if not (isinstance(obj, list) and len(obj) == 2 and all(isinstance(r, list) and len(r) == 2 for r in obj)):
        raise ValueError("a module is a 2x2 array of linear forms")
    return KModule([[linform_from_json(e, field) for e in row] for row in obj])


def wpoint_to_json(p: WPoint) -> dict[str, Any]:
    return {"q": quadform_to_json(p.q), "p": scalar_to_json(p.p), "canonical": True}


def wpoint_from_json(obj: Any, field: Field) -> WPoint:
    if not isinstance(obj, dict) or "q" not in obj or "p" not in obj:
        raise ValueError('a point is {"q": {...}, "p": scalar}')
    return WPoint(quadform_from_json(obj["q"], field), field.parse(obj["p"]))


def group_to_json(gh: GroupElem) -> dict[str, Any]:
    return {"g": _matrix_to_json(gh.g), "h": _matrix_to_json(gh.h)}


def normal_form_to_json(nf: NormalForm) -> dict[str, Any]:
    return {
        "lambda": scalar_to_json(nf.lam),
        "a": scalar_to_json(nf.a),
        "b": scalar_to_json(nf.b),
        "c": scalar_to_json(nf.c),
        "d": scalar_to_json(nf.d),
        "upsilon": _matrix_to_json(nf.upsilon.matrix),
        **group_to_json(nf.gh),
    }


def _witness_value(v: Any) -> Any:
    if isinstance(v, (Fraction, Fp)):
        return scalar_to_json(v)
    if isinstance(v, (list, tuple)):
        return [_witness_value(x) for x in v]
    return v


def verdict_to_json(v: StabilityVerdict) -> dict[str, Any]:
    witness = None if v.witness is None else {k: _witness_value(x) for k, x in v.witness.items()}
    return {"semistable": v.semistable, "stable": v.stable, "witness": witness}


def _pair_to_json(pair, keys) -> dict[str, Any]:
    return {k: scalar_to_json(c) for k, c in zip(keys, pair)}


def _pair_from_json(obj: Any, keys: tuple[str, str], name: str, field: Field) -> tuple:
    if not isinstance(obj, dict):
        raise ValueError(f"{name} must be an object with keys {keys}")
    extra = set(obj) - set(keys)
    if extra:
        raise ValueError(f"{name} has bidegree {'(1,0)' if keys == _V1_KEYS else '(0,1)'}; unexpected keys {sorted(extra)}")
    return tuple(field.parse(obj.get(k, 0)) for k in keys)


def psi_to_json(psi: BigPsi) -> dict[str, Any]:
    out: dict[str, Any] = {"a1": scalar_to_json(psi.a1), "a2": scalar_to_json(psi.a2)}
    for name in BigPsi.V1_FIELDS:
        out[name] = _pair_to_json(getattr(psi, name), _V1_KEYS)
    for name in BigPsi.V2_FIELDS:
        out[name] = _pair_to_json(getattr(psi, name), _V2_KEYS)
    for name in BigPsi.F_FIELDS:
        out[name] = linform_to_json(getattr(psi, name))
    return out


def psi_from_json(obj: Any, field: Field) -> BigPsi:
    """Named fields; missing fields are zero, unknown ones are rejected."""
    if isinstance(obj, dict) and "psi" in obj:
        obj = obj["psi"]
    if not isinstance(obj, dict):
        raise ValueError("psi must be a JSON object with named fields")
    known = {"a1", "a2", "field", *BigPsi.V1_FIELDS, *BigPsi.V2_FIELDS, *BigPsi.F_FIELDS}
    extra = set(obj) - known
    if extra:
        raise ValueError(f"unknown psi fields {sorted(extra)}")
    kw: dict[str, Any] = {
        "a1": field.parse(obj.get("a1", 0)),
        "a2": field.parse(obj.get("a2", 0)),
    }
    for name in BigPsi.V1_FIELDS:
        kw[name] = _pair_from_json(obj.get(name, {}), _V1_KEYS, name, field)
    for name in BigPsi.V2_FIELDS:
        kw[name] = _pair_from_json(obj.get(name, {}), _V2_KEYS, name, field)
    for name in BigPsi.F_FIELDS:
        kw[name] = linform_from_json(obj.get(name, "0"), field)
    return BigPsi(**kw)


def region_to_json(r: Region) -> str:
    return r.value
