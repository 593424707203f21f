"""Exact arithmetic for 2x2 Kronecker modules with entries in a 4-dimensional space.

Semi-invariants, stability, normal forms, the weighted projective model of
the moduli space and the blow-down from the P1 x P1 matrix model, over Q
or a prime field F_p.
"""

from __future__ import annotations

from .errors import NeedsExtension, PreconditionError
from .field import GF, QQ, field_from_spec
from .kronecker import GroupElem, KModule, act, det_semiinvariant, e_semiinvariant, epsilon, rho
from .modulimap import WPoint, det_fiber, eta, eta_inverse, nu1, nu2
from .multilinear import CoordChange, LinForm, QuadForm
from .normalform import NormalForm, normal_form
from .stability import StabilityVerdict, is_semistable, is_stable, king_oracle

__version__ = "0.1.0"

__all__ = [
    "NeedsExtension",
    "PreconditionError",
    "GF",
    "QQ",
    "field_from_spec",
    "KModule",
    "GroupElem",
    "act",
    "det_semiinvariant",
    "e_semiinvariant",
    "epsilon",
    "rho",
    "WPoint",
    "det_fiber",
    "eta",
    "eta_inverse",
    "nu1",
    "nu2",
    "LinForm",
    "QuadForm",
    "CoordChange",
    "NormalForm",
    "normal_form",
    "StabilityVerdict",
    "is_semistable",
    "is_stable",
    "king_oracle",
]
