import dataclasses

import pytest

from equitheta.exceptions import PreconditionError
from equitheta.models.group import cyclic_group
from equitheta.models.group_ring import GroupRingElem
from equitheta.models.module import IdealFG
from equitheta.services.cohomcheck import (
    PredictionService,
    cs_k_theory_restate,
    divisor_fit_check,
    divisor_module,
    fit_h1,
    h1_module,
    predict_h2,
    prediction_report,
)
from equitheta.services.fitting import base_change_ideal, exact_precision

from tests.conftest import place

C2 = cyclic_group(2)

WITNESSES = ([place(3, "t+1")], [place(3, "t+2")])


@pytest.fixture
def carlitz_prediction(carlitz_t, carlitz_s0):
    return predict_h2(carlitz_t, carlitz_s0, 2, 2, 3, WITNESSES)


def test_h1_relations_constant_field(constant_q2_r2):
    M = h1_module(constant_q2_r2, 2, 3, 2)
    ring = M.ring
    g = ring.basis(1)
    # 2^-2 = 7 and 1 - 2^-4 = -3 modulo 9
    assert M.relations == ((g - ring.coerce(7),), (ring.coerce(-3),))


def test_fit_h1_constant_field(constant_q2_r2):
    ideal = fit_h1(constant_q2_r2, 2, 3, 2)
    ring = ideal.ring
    assert ideal == IdealFG.principal(ring, ring.basis(1) - ring.coerce(7))
    assert ideal.contains(-3)


def test_fit_h1_carlitz(carlitz_t):
    ideal = fit_h1(carlitz_t, 2, 2, 3)
    ring = ideal.ring
    assert ideal == IdealFG.principal(ring, ring.basis(1) - ring.one())


def test_h1_preconditions(carlitz_t):
    with pytest.raises(PreconditionError):
        h1_module(carlitz_t, 2, 3, 2)
    with pytest.raises(PreconditionError):
        h1_module(carlitz_t, 1, 2, 2)


def test_divisor_module(carlitz_t):
    data = divisor_module(carlitz_t, [place(3, "t+1")], 2, 2, 4)
    assert data.relations == (GroupRingElem.scalar(C2, -8),)
    assert exact_precision(C2, 2, 1, [data.relations]) == 3
    assert divisor_fit_check(data).holds


def test_divisor_module_second_witness(carlitz_t):
    data = divisor_module(carlitz_t, [place(3, "t+2")], 2, 2, 4)
    assert data.relations == (GroupRingElem.from_terms(C2, {"1": 1, "g": -9}),)
    result = divisor_fit_check(data)
    assert result.module_ok
    assert result.dual_ok


def test_divisor_module_needs_places(carlitz_t):
    with pytest.raises(PreconditionError):
        divisor_module(carlitz_t, [], 2, 2, 3)


def test_predict_h2_carlitz(carlitz_prediction):
    ring = carlitz_prediction.ring
    g = ring.basis(1)
    # Fit(H^1) is computed exactly at level k + v_2(8) before reducing to Z/8,
    # so the generator 2 survives next to g - 1
    assert carlitz_prediction.fit_h2_ideal() == IdealFG(ring, (g - ring.one(), ring.coerce(2)))
    assert carlitz_prediction.checks == {
        "integrality": True,
        "witness_independence": True,
        "theta_agreement": True,
        "unsmoothed_value": True,
    }


def test_predict_h2_theta_value(carlitz_prediction):
    assert carlitz_prediction.theta_value == GroupRingElem.from_terms(C2, {"1": 5, "g": -3})
    assert carlitz_prediction.theta_denominator == 8
    assert [w.denominator for w in carlitz_prediction.witnesses] == [64, -80]


def test_predict_h2_report(carlitz_prediction):
    report = prediction_report(carlitz_prediction)
    assert report.theta.denominator == 8
    assert len(report.witnesses) == 2
    assert all(report.checks.values())


def test_predict_h2_affine_line_is_unit(affine_line):
    prediction = predict_h2(affine_line, [place(3, "inf")], 2, 2, 3, [[place(3, "t")]])
    assert prediction.fit_h2_ideal().is_unit()
    assert prediction.theta_value == GroupRingElem.scalar(affine_line.group, -1)
    assert prediction.theta_denominator == 8


def test_predict_h2_rejects_characteristic(carlitz_t, carlitz_s0):
    with pytest.raises(PreconditionError):
        predict_h2(carlitz_t, carlitz_s0, 2, 3, 2, WITNESSES)


def test_predict_h2_needs_witness(carlitz_t, carlitz_s0):
    with pytest.raises(PreconditionError):
        predict_h2(carlitz_t, carlitz_s0, 2, 2, 3, [])


def test_prediction_stable_under_precision(carlitz_t, carlitz_s0, carlitz_prediction):
    finer = predict_h2(carlitz_t, carlitz_s0, 2, 2, 4, WITNESSES)
    assert base_change_ideal(finer.fit_h2_ideal(), 3) == carlitz_prediction.fit_h2_ideal()


def test_cs_restatement(carlitz_prediction):
    restated = cs_k_theory_restate([carlitz_prediction], unit_check=True)
    assert restated.n == 2
    assert restated.statement == "Fit(K_3) * Theta(q^1) = Fit(K_2)"
    l_entry, p_entry = restated.entries
    assert (l_entry.prime, l_entry.role, l_entry.status) == (2, "l", "predicted")
    assert (p_entry.prime, p_entry.role) == (3, "p")
    assert p_entry.status.startswith("unit")


def test_cs_restatement_unit_prediction(affine_line):
    prediction = predict_h2(affine_line, [place(3, "inf")], 2, 2, 3, [[place(3, "t")]])
    entry = cs_k_theory_restate([prediction], unit_check=False).entries[0]
    assert entry.status == "unit"


def test_cs_restatement_requires_shared_n(carlitz_prediction):
    with pytest.raises(PreconditionError):
        cs_k_theory_restate([], unit_check=True)
    other = dataclasses.replace(carlitz_prediction, n=3)
    with pytest.raises(PreconditionError):
        cs_k_theory_restate([carlitz_prediction, other], unit_check=True)


def test_run_grid(carlitz_t, carlitz_s0, carlitz_prediction):
    results = PredictionService.run_grid(carlitz_t, carlitz_s0, [2], [3, 2], 3, WITNESSES, workers=1)
    assert [(p.n, p.ell) for p in results] == [(2, 2)]
    assert results[0].fit_h2_ideal() == carlitz_prediction.fit_h2_ideal()


def test_run_grid_needs_two_witnesses(carlitz_t, carlitz_s0):
    with pytest.raises(PreconditionError):
        PredictionService.run_grid(carlitz_t, carlitz_s0, [2], [2], 3, WITNESSES[:1])
