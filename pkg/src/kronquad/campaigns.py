"""Seeded property campaigns.

A suite is a function ``trial(field, rng, audit) -> list of violations``.
:func:`run_campaign` calls it once per trial index with the generator from
:func:`~kronquad.sampling.trial_rng`, optionally on several worker
processes, and merges the results by trial index so that the report is
byte-identical for a given (suite, field, seed, trials).
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Any, Callable

from . import blowdown as bd
from .errors import NeedsExtension
from .field import Field, field_from_spec
from .kronecker import (
    GroupElem,
    act,
    det_semiinvariant,
    e_semiinvariant,
    epsilon,
    rho,
)
from .modulimap import WPoint, det_fiber, eta, eta_inverse, nu1, nu2, on_hypersurface
from .multilinear import QuadForm
from .normalform import normal_form, normal_form_module
from .sampling import (
    Audit,
    crafted_degenerates,
    random_big_group_elem,
    random_coord_change,
    random_group_elem,
    random_mixed_module,
    random_module,
    random_psi_w0,
    random_psi_w1,
    random_psi_w2,
    random_reducible_quadric,
    random_semistable_module,
    random_stable_module,
    scrambled_normal_form,
    trial_rng,
)
from .stability import is_semistable, is_stable, king_oracle

__all__ = ["SUITES", "CampaignConfig", "CampaignResult", "run_campaign", "format_report"]

Violation = dict[str, Any]
Trial = Callable[[Field, Any, Audit], list[Violation]]


def _v(check: str, **detail) -> Violation:
    return {"check": check, **{k: str(v) for k, v in detail.items()}}


def _epsilon_rho(field: Field, rng, audit: Audit) -> list[Violation]:
    phi = random_module(field, rng)
    e, r = epsilon(phi), rho(phi)
    return [] if e * e == r else [_v("epsilon^2 == rho", phi=phi, epsilon=e, rho=r)]


def _transform_laws(field: Field, rng, audit: Audit) -> list[Violation]:
    out = []
    phi = random_module(field, rng)
    gh = random_group_elem(field, rng, audit)
    moved = act(gh, phi)
    ratio = gh.det_h / gh.det_g
    if det_semiinvariant(moved) != det_semiinvariant(phi) * ratio:
        out.append(_v("det law", phi=phi, g=gh.g, h=gh.h))
    if e_semiinvariant(moved) != e_semiinvariant(phi) * ratio * ratio:
        out.append(_v("e law", phi=phi, g=gh.g, h=gh.h))
    upsilon = random_coord_change(field, rng, audit)
    phi2 = random_module(field, rng)
    sub = phi2.substitute(upsilon.matrix)
    if epsilon(sub) != upsilon.det * epsilon(phi2):
        out.append(_v("epsilon' = det(upsilon) epsilon", phi=phi2, upsilon=upsilon.matrix))
    if rho(sub) != upsilon.det**2 * rho(phi2):
        out.append(_v("rho' = det(upsilon)^2 rho", phi=phi2, upsilon=upsilon.matrix))
    return out


def _king_vs_det(field: Field, rng, audit: Audit) -> list[Violation]:
    phi = random_mixed_module(field, rng)
    audit["stable" if is_stable(phi) else "semistable" if is_semistable(phi) else "unstable"] += 1
    return _compare_king(phi)


def _compare_king(phi) -> list[Violation]:
    k = king_oracle(phi)
    want = (is_semistable(phi), is_stable(phi))
    if (k.semistable, k.stable) != want:
        return [_v("king_oracle == det criterion", phi=phi, oracle=(k.semistable, k.stable), det=want)]
    return []


def _normal_form(field: Field, rng, audit: Audit) -> list[Violation]:
    params, phi = scrambled_normal_form(field, rng, audit)
    try:
        nf = normal_form(phi, seed=int(rng.integers(0, 2**31)))
    except NeedsExtension as exc:
        audit[f"needs_extension.{exc.reason}"] += 1
        return []
    out = []
    if not nf.verify(phi):
        out.append(_v("certificate replay", phi=phi, params=params))
    module = nf.module()
    if nf.epsilon != epsilon(module):
        out.append(_v("epsilon == lam (d - a)", phi=phi, params=params))
    if nf.expected_det() != det_semiinvariant(module):
        out.append(_v("det display", phi=phi, params=params))
    # with lam = 1 the pair (det, epsilon) determines (a, b, c, d)
    q, e = det_semiinvariant(module), epsilon(module)
    trace, c, b = q.coefficient(0, 3), -q.coefficient(1, 3), -q.coefficient(2, 3)
    a, d = (trace - e) / 2, (trace + e) / 2
    if nf.lam == field.one and normal_form_module(field.one, a, b, c, d, field) != module:
        out.append(_v("parameters from (det, epsilon)", phi=phi, params=params))
    # eta transforms under the recorded coordinate change
    point = eta(phi)
    moved = WPoint(point.q.substitute(nf.upsilon.matrix), point.p * nf.upsilon.det)
    if eta(module) != moved:
        out.append(_v("eta of the normal form", phi=phi, params=params))
    return out


def _hypersurface(field: Field, rng, audit: Audit) -> list[Violation]:
    out = []
    phi = random_semistable_module(field, rng, audit)
    point = eta(phi)
    if not on_hypersurface(point):
        out.append(_v("res(q) == p^2", phi=phi, point=point))
    stable = random_stable_module(field, rng, audit)
    try:
        back = eta_inverse(eta(stable), seed=int(rng.integers(0, 2**31)))
        if eta(back) != eta(stable):
            out.append(_v("eta(eta_inverse(P)) == P", phi=stable))
    except NeedsExtension as exc:
        audit[f"needs_extension.{exc.reason}"] += 1
    q = random_reducible_quadric(field, rng)
    fiber = det_fiber(q)
    if len(fiber) != 1 or not on_hypersurface(fiber[0]):
        out.append(_v("branch locus has one fiber point", q=q, fiber=fiber))
    return out


def _blowdown(field: Field, rng, audit: Audit) -> list[Violation]:
    out = []
    psi = random_psi_w0(field, rng, audit)
    a = bd.alpha(psi)
    if bd.beta(psi) != eta(a):
        out.append(_v("beta == eta o alpha on W0", psi=psi))
    if eta(bd.beta_matrix(psi, "A")) != eta(bd.beta_matrix(psi, "B")):
        out.append(_v("regional formulas agree on W0", psi=psi))
    if a != bd.alpha_explicit(psi):
        out.append(_v("alpha block formula == pure-tensor expansion", psi=psi))
    gh, reduced = bd.reduce_psi(psi)
    if gh.audit() or reduced != bd.reduced_psi(a) or bd.act_psi(gh, psi) != reduced:
        out.append(_v("reduce_psi replay", psi=psi))
    big = random_big_group_elem(field, rng, audit)
    moved = bd.act_psi(big, psi)
    if bd.alpha(moved) != act(GroupElem(big.g11, big.h22), a):
        out.append(_v("alpha equivariance", psi=psi))
    if bd.beta(moved) != bd.beta(psi):
        out.append(_v("beta constant on orbits (W0)", psi=psi))
    w1 = random_psi_w1(field, rng, audit)
    if bd.beta(w1) != nu1(field):
        out.append(_v("beta(W1) == nu1", psi=w1))
    moved1 = bd.act_psi(big, w1)
    if bd.classify(moved1) is not bd.Region.W1 or bd.beta(moved1) != nu1(field):
        out.append(_v("beta constant on orbits (W1)", psi=w1))
    w2 = random_psi_w2(field, rng, audit)
    if bd.beta(w2) != nu2(field):
        out.append(_v("beta(W2) == nu2", psi=w2))
    return out


def _snake(field: Field, rng, audit: Audit) -> list[Violation]:
    psi = random_psi_w1(field, rng, audit)
    report = bd.verify_snake(psi)
    return [_v(f"snake {name}", psi=psi, residues=res) for name, res in report.failures().items()]


SUITES: dict[str, Trial] = {
    "epsilon-rho": _epsilon_rho,
    "transform-laws": _transform_laws,
    "king-vs-det": _king_vs_det,
    "normal-form": _normal_form,
    "hypersurface": _hypersurface,
    "blowdown": _blowdown,
    "snake": _snake,
}


def _fixed_checks(suite: str, field: Field) -> list[Violation]:
    """Deterministic instances run once per campaign."""
    out = []
    if suite == "king-vs-det":
        for i, phi in enumerate(crafted_degenerates(field)):
            out += [dict(v, crafted=str(i)) for v in _compare_king(phi)]
    elif suite == "hypersurface":
        segre_q = QuadForm.from_monomials({"xw": 1, "yz": -1}, field)
        fiber = det_fiber(segre_q)
        if set(fiber) != {nu1(field), nu2(field)}:
            out.append(_v("det_fiber(xw - yz) == {nu1, nu2}", fiber=fiber))
        if nu1(field).p != field.one or nu2(field).p != -field.one:
            out.append(_v("epsilon(nu1) == 1, epsilon(nu2) == -1"))
    return out


@dataclass(frozen=True)
class CampaignConfig:
    suite: str
    field_spec: str = "rational"
    seed: int = 0
    trials: int = 100
    workers: int = 1

    def validate(self) -> Field:
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        return field_from_spec(self.field_spec)


@dataclass
class CampaignResult:
    config: CampaignConfig
    field: Field
    violations: list[Violation] = dc_field(default_factory=list)
    audit: Audit = dc_field(default_factory=Audit)

    @property
    def ok(self) -> bool:
        return not self.violations


def _run_chunk(args: tuple[str, str, int, int, int]) -> tuple[list[Violation], dict[str, int]]:
    suite, field_spec, seed, start, stop = args
    field = field_from_spec(field_spec)
    trial = SUITES[suite]
    audit = Audit()
    violations = []
    for t in range(start, stop):
        for v in trial(field, trial_rng(seed, suite, t), audit):
            violations.append({"trial": t, **v})
    return violations, dict(audit)


def run_campaign(config: CampaignConfig) -> CampaignResult:
    field = config.validate()
    result = CampaignResult(config, field)
    result.violations.extend(_fixed_checks(config.suite, field))
    n, w = config.trials, min(config.workers, config.trials)
    bounds = [(n * i // w, n * (i + 1) // w) for i in range(w)]
    jobs = [(config.suite, config.field_spec, config.seed, a, b) for a, b in bounds]
    if w == 1:
        chunks = [_run_chunk(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=w) as pool:
            chunks = list(pool.map(_run_chunk, jobs))
    for violations, counts in chunks:
        result.violations.extend(violations)
        result.audit.update(counts)
    return result


def format_report(result: CampaignResult) -> str:
    """Violation JSON lines followed by one summary line."""
    cfg = result.config
    lines = [json.dumps({"violation": v}, sort_keys=True) for v in result.violations]
    summary = {
        "suite": cfg.suite,
        "field": result.field.spec,
        "seed": cfg.seed,
        "trials": cfg.trials,
        "violations": len(result.violations),
        "ok": result.ok,
        "audit": result.audit.as_dict(),
    }
    lines.append(json.dumps({"summary": summary}, sort_keys=True))
    return "\n".join(lines) + "\n"
