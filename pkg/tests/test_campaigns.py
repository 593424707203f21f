from __future__ import annotations

import pytest

from kronquad.campaigns import SUITES, CampaignConfig, format_report, run_campaign
from kronquad.sampling import trial_rng


def test_trial_rng_is_deterministic_and_separated():
    a = trial_rng(5, "s", 3).integers(0, 2**62, size=4).tolist()
    assert a == trial_rng(5, "s", 3).integers(0, 2**62, size=4).tolist()
    assert a != trial_rng(5, "s", 4).integers(0, 2**62, size=4).tolist()
    assert a != trial_rng(5, "t", 3).integers(0, 2**62, size=4).tolist()
    assert a != trial_rng(6, "s", 3).integers(0, 2**62, size=4).tolist()


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_every_suite_passes_small(suite):
    spec = "fp:1009" if suite in ("normal-form", "hypersurface") else "rational"
    result = run_campaign(CampaignConfig(suite, spec, seed=11, trials=15))
    assert result.ok, format_report(result)


def test_reports_are_byte_identical():
    cfg = CampaignConfig("king-vs-det", "rational", seed=42, trials=40)
    assert format_report(run_campaign(cfg)) == format_report(run_campaign(cfg))


def test_worker_count_does_not_change_report():
    one = CampaignConfig("blowdown", "fp:1009", seed=9, trials=12, workers=1)
    two = CampaignConfig("blowdown", "fp:1009", seed=9, trials=12, workers=2)
    assert format_report(run_campaign(one)) == format_report(run_campaign(two))


def test_config_errors():
    for cfg in (
        CampaignConfig("epsilon-rho", trials=0),
        CampaignConfig("nope"),
        CampaignConfig("epsilon-rho", field_spec="fp:1007"),
        CampaignConfig("epsilon-rho", seed=-1),
        CampaignConfig("epsilon-rho", workers=0),
    ):
        with pytest.raises(ValueError):
            run_campaign(cfg)


def test_audit_counts_rejections():
    result = run_campaign(CampaignConfig("snake", "rational", seed=1, trials=30))
    audit = result.audit.as_dict()
    assert audit["psi_w1.accepted"] == 30
    assert audit["psi_w1.pairs.accepted"] == 60
