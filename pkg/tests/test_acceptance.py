"""Acceptance criteria 1-8; each test prints one PASS/FAIL line."""

from __future__ import annotations

import time

import pytest

from kronquad.campaigns import CampaignConfig, format_report, run_campaign

SEED = 20240611
_START = time.perf_counter()


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")

    return emit


def _run(suite: str, field: str, trials: int, seed: int = SEED, workers: int = 1):
    return run_campaign(CampaignConfig(suite, field, seed, trials, workers))


def _describe(result) -> str:
    cfg = result.config
    extra = {k: v for k, v in result.audit.as_dict().items() if "needs_extension" in k}
    tail = f", audit {extra}" if extra else ""
    return f"{cfg.suite} {result.field.spec} x{cfg.trials}: {len(result.violations)} violations{tail}"


def test_criterion_1_epsilon_squared_is_rho(report):
    t0 = time.perf_counter()
    runs = [_run("epsilon-rho", "fp:10007", 10_000), _run("epsilon-rho", "rational", 1_000)]
    elapsed = time.perf_counter() - t0
    ok = all(r.ok for r in runs) and elapsed < 5.0
    report(1, ok, "; ".join(_describe(r) for r in runs) + f"; {elapsed:.2f}s")
    assert ok


def test_criterion_2_transformation_laws(report):
    runs = [_run("transform-laws", "rational", 1_000)]
    ok = all(r.ok for r in runs)
    report(2, ok, _describe(runs[0]) + " (det, e, epsilon, rho laws)")
    assert ok


def test_criterion_3_king_vs_determinant(report):
    r = _run("king-vs-det", "rational", 1_000)
    strata = {k: v for k, v in r.audit.as_dict().items() if "." not in k}
    report(3, r.ok, _describe(r) + f" + 50 crafted; strata {strata}")
    assert r.ok


def test_criterion_4_normal_form_round_trip(report):
    r = _run("normal-form", "fp:1009", 500)
    report(4, r.ok, _describe(r))
    assert r.ok


def test_criterion_5_hypersurface_and_fibers(report):
    r = _run("hypersurface", "fp:1009", 1_000)
    report(5, r.ok, _describe(r) + "; det_fiber(xw - yz) == {nu1, nu2}")
    assert r.ok


def test_criterion_6_blowdown(report):
    runs = [_run("blowdown", "rational", 200), _run("blowdown", "fp:1009", 200)]
    ok = all(r.ok for r in runs)
    report(6, ok, "; ".join(_describe(r) for r in runs))
    assert ok


def test_criterion_7_snake(report):
    runs = [_run("snake", "rational", 200), _run("snake", "fp:1009", 200)]
    ok = all(r.ok for r in runs)
    report(7, ok, "; ".join(_describe(r) for r in runs))
    assert ok


def test_criterion_8_determinism(report):
    pairs = []
    for suite, field in [("king-vs-det", "rational"), ("normal-form", "fp:1009"), ("blowdown", "fp:1009")]:
        first = format_report(_run(suite, field, 60))
        again = format_report(_run(suite, field, 60))
        split = format_report(_run(suite, field, 60, workers=3))
        pairs.append(first == again == split)
    elapsed = time.perf_counter() - _START
    ok = all(pairs) and elapsed < 60.0
    report(8, ok, f"byte-identical reports {sum(pairs)}/3 (1 and 3 workers); acceptance wall-clock {elapsed:.1f}s")
    assert all(pairs)
    assert elapsed < 60.0
