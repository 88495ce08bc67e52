"""Acceptance grid: the instance counts the release sweep must clear."""

import pytest

from equitheta.models.group import cyclic_group
from equitheta.models.module import FinGroupRing
from equitheta.models.polynomial import Place
from equitheta.models.theta import LDataRequest
from equitheta.services.cohomcheck import divisor_fit_check, divisor_module, predict_h2
from equitheta.services.fitting import base_change_ideal
from equitheta.services.harness import PROPERTIES, FitLabService
from equitheta.services.lfun import (
    constant_field_model,
    t0_independence_check,
    theta,
    theta_special,
    twist_project,
    unit_mod_p_check,
)
from equitheta.services.verification import VerificationService, default_s0

from scripts.acceptance_sweep import FITLAB_RINGS, divisor_witnesses, lvalue_configurations, models, witnesses

pytestmark = pytest.mark.slow


def test_four_term_hundred_instances():
    ring = FinGroupRing(cyclic_group(2), 3, 2)
    report = FitLabService.run(ring, seed=0, instances=100, properties=["four_term"])
    summary = report.properties["four_term"]
    assert (summary.total, summary.passed) == (100, 100)
    assert report.passed


@pytest.mark.parametrize(("orders", "ell", "k"), FITLAB_RINGS)
def test_every_property_fifty_instances(orders, ell, k):
    ring = FinGroupRing(cyclic_group(*orders), ell, k)
    assert ring.group.order <= 4
    assert ell**k <= 27
    report = FitLabService.run(ring, seed=0, instances=50)
    assert set(report.properties) == set(PROPERTIES)
    for name, summary in report.properties.items():
        assert summary.total >= 50, name
        assert summary.passed == summary.total, name
    assert report.failures == []


def test_lvalue_configurations():
    checked = 0
    thetas = {}
    for model, S0, (T0a, T0b), n in lvalue_configurations():
        key = (str(model), T0a)
        if key not in thetas:
            thetas[key] = theta(LDataRequest.build(model, S0, T0a))
        smoothed = thetas[key]
        assert twist_project(smoothed, n) == theta_special(smoothed, n), (str(model), n)
        assert unit_mod_p_check(smoothed, n, kmax=4), (str(model), n)
        assert t0_independence_check(model, S0, T0a, T0b, n), (str(model), n)
        checked += 1
    assert checked >= 20


@pytest.mark.parametrize("model", list(models()), ids=str)
def test_verify_suite_passes(model):
    S0 = default_s0(model)
    report = VerificationService.run_suite(model, S0, witnesses(model, S0, 2), [2, 3], kmax=4)
    assert report.passed, [c.name for c in report.checks if not c.passed]


@pytest.mark.parametrize("model", list(models()), ids=str)
def test_divisor_checks_for_low_degree_witnesses(model):
    S0 = default_s0(model)
    for ell in (2, 5):
        if ell == model.characteristic:
            continue
        for T0 in divisor_witnesses(model, S0):
            assert divisor_fit_check(divisor_module(model, T0, 2, ell, 3)).holds, [str(v) for v in T0]


@pytest.mark.parametrize("model", list(models()), ids=str)
def test_predictions_stable_under_level_change(model):
    S0 = default_s0(model)
    T0s = witnesses(model, S0)
    assert len(T0s) >= 3
    for ell in (2, 5):
        if ell == model.characteristic:
            continue
        coarse = predict_h2(model, S0, 2, ell, 3, T0s)
        fine = predict_h2(model, S0, 2, ell, 4, T0s)
        assert all(coarse.checks.values())
        assert base_change_ideal(fine.fit_h2_ideal(), 3) == coarse.fit_h2_ideal()


@pytest.mark.parametrize("ell", [2, 5])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_affine_line_prediction_is_unit(n, ell):
    affine = constant_field_model(3, 1)
    S0 = (Place.infinity(3),)
    prediction = predict_h2(affine, S0, n, ell, 3, witnesses(affine, S0))
    assert prediction.fit_h2_ideal().is_unit()
