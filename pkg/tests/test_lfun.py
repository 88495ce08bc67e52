from dataclasses import replace
from fractions import Fraction

import pytest

from equitheta.exceptions import PreconditionError, PropertyFailure, StabilizationFailure
from equitheta.models.character import all_characters
from equitheta.models.group import cyclic_group
from equitheta.models.group_ring import EquivPoly, GroupRingElem
from equitheta.models.polynomial import FqPoly
from equitheta.models.theta import LDataRequest
from equitheta.services.grpring import is_nonzero_divisor
from equitheta.services.lfun import (
    carlitz_model,
    character_compatibility_check,
    constant_field_model,
    delta_t,
    euler_factor_check,
    frobenius_multiplicativity_check,
    t0_independence_check,
    theta,
    theta_infinite,
    theta_special,
    twist_project,
    unit_mod_p_check,
    weil_bound_holds,
    weil_check,
)
from equitheta.services.verification import default_s0

from tests.conftest import place

C2 = cyclic_group(2)


def element(terms: dict) -> GroupRingElem:
    return GroupRingElem.from_terms(C2, terms)


def test_carlitz_model_structure(carlitz_t):
    G = carlitz_t.group
    assert G.orders == (2,)
    assert {str(v) for v in carlitz_t.ramified} == {"inf", "t"}
    assert carlitz_t.frobenius(place(3, "t+1")) == 0
    assert G.label(carlitz_t.frobenius(place(3, "t+2"))) == "g"
    with pytest.raises(PreconditionError):
        carlitz_t.frobenius(place(3, "t"))


def test_theta_worked_example(carlitz_t, carlitz_s0):
    result = theta(LDataRequest.build(carlitz_t, carlitz_s0, [place(3, "t+1")]))
    assert result.poly == EquivPoly.from_terms(C2, [{"1": 1}, {"1": -2, "g": 1}])
    assert str(result.poly) == "1 + (-2 + g)*u"
    assert result.stabilization_degree == 1


def test_theta_second_witness(carlitz_t, carlitz_s0):
    result = theta(LDataRequest.build(carlitz_t, carlitz_s0, [place(3, "t+2")]))
    assert result.poly == EquivPoly.from_terms(C2, [{"1": 1}, {"1": 1, "g": -2}])


def test_theta_constant_field_telescopes(constant_q2_r2):
    result = theta(LDataRequest.build(constant_q2_r2, [place(2, "inf")], [place(2, "t")], dmax=6))
    assert result.poly == EquivPoly.one(constant_q2_r2.group)


def test_theta_unsmoothed_affine_line(affine_line):
    result = theta(LDataRequest.build(affine_line, [place(3, "inf")]))
    assert not result.is_polynomial
    (component,) = result.components
    assert [c.rational_value() for c in component.numerator] == [1]
    assert [c.rational_value() for c in component.denominator] == [1, -3]


def test_theta_unsmoothed_character_components(carlitz_t, carlitz_s0):
    result = theta(LDataRequest.build(carlitz_t, carlitz_s0))
    trivial, sign = result.components
    assert [c.rational_value() for c in trivial.numerator] == [1, -1]
    assert [c.rational_value() for c in trivial.denominator] == [1, -3]
    assert [c.rational_value() for c in sign.numerator] == [1]


def test_request_requires_infinity(carlitz_t):
    with pytest.raises(PreconditionError, match="infinite place"):
        LDataRequest.build(carlitz_t, [place(3, "t")], [place(3, "t+1")])


def test_request_requires_ramified_places(carlitz_t):
    with pytest.raises(PreconditionError, match="ramified"):
        LDataRequest.build(carlitz_t, [place(3, "inf")], [place(3, "t+1")])


def test_request_rejects_overlap(carlitz_t, carlitz_s0):
    with pytest.raises(PreconditionError, match="disjoint"):
        LDataRequest.build(carlitz_t, carlitz_s0 + (place(3, "t+1"),), [place(3, "t+1")])


def test_small_dmax_fails_to_stabilize(carlitz_t, carlitz_s0):
    with pytest.raises(StabilizationFailure) as info:
        theta(LDataRequest.build(carlitz_t, carlitz_s0, [place(3, "t+1")], dmax=3, guard=3))
    assert info.value.degree == 1
    assert info.value.exit_code == 2


def test_delta_t(carlitz_t):
    assert delta_t(carlitz_t, [place(3, "t+1")], 2) == element({"1": -8})
    assert delta_t(carlitz_t, [place(3, "t+2")], 2) == element({"1": 1, "g": -9})
    assert delta_t(carlitz_t, [place(3, "t+2")], 0) == element({"1": 1, "g": -1})
    with pytest.raises(PreconditionError):
        delta_t(carlitz_t, [], 2)


def test_theta_special(carlitz_t, carlitz_s0):
    smoothed = theta(LDataRequest.build(carlitz_t, carlitz_s0, [place(3, "t+1")]))
    assert theta_special(smoothed, 2) == element({"1": -5, "g": 3})

    unsmoothed = theta(LDataRequest.build(carlitz_t, carlitz_s0))
    value = theta_special(unsmoothed, 2)
    assert value == GroupRingElem(C2, (Fraction(5, 8), Fraction(-3, 8)))
    assert sum(value.coeffs) == Fraction(1, 4)


def test_theta_special_needs_n_at_least_two(carlitz_t, carlitz_s0):
    smoothed = theta(LDataRequest.build(carlitz_t, carlitz_s0, [place(3, "t+1")]))
    with pytest.raises(PreconditionError):
        theta_special(smoothed, 1)


def test_twist_project_matches_special_values(carlitz_t, carlitz_s0):
    smoothed = theta(LDataRequest.build(carlitz_t, carlitz_s0, [place(3, "t+1")]))
    for n in (2, 3, 4):
        assert twist_project(smoothed, n) == theta_special(smoothed, n)
    assert twist_project(smoothed, 1) == element({"1": -1, "g": 1})


def test_theta_infinite_in_fiber_product(constant_q2_r2):
    result = theta(LDataRequest.build(constant_q2_r2, [place(2, "inf")], [place(2, "t^2+t+1")]))
    # Theta = 1 + 2*gbar*u
    monomials = theta_infinite(result)
    assert monomials == {(0, 0): 1, (1, 1): 2}
    for g, k in monomials:
        assert (constant_q2_r2.constant_degree(g) + k) % 2 == 0


def test_euler_factor_carlitz(carlitz_t, carlitz_s0):
    assert euler_factor_check(carlitz_t, carlitz_s0, place(3, "t+2"), [place(3, "t+1")])


def test_euler_factor_constant_field(constant_q2_r2):
    assert euler_factor_check(constant_q2_r2, [place(2, "inf")], place(2, "t"), [place(2, "t^2+t+1")])


def test_euler_factor_unsmoothed(carlitz_t, carlitz_s0):
    assert euler_factor_check(carlitz_t, carlitz_s0, place(3, "t+1"))


def test_euler_factor_detects_corrupted_frobenius(carlitz_t, carlitz_s0):
    corrupted = carlitz_t.with_corrupted_frobenius()
    assert not euler_factor_check(corrupted, carlitz_s0, place(3, "t^2+1"), [place(3, "t+1")])


def test_weil_vacuous_for_conductor_t(carlitz_t, carlitz_s0):
    sign = all_characters(carlitz_t.group)[1]
    assert weil_check(carlitz_t, carlitz_s0, sign) == []


def test_weil_bound_conductor_t_squared():
    model = carlitz_model(3, FqPoly.parse(3, "t^2"))
    S0 = [place(3, "inf"), place(3, "t")]
    checked = 0
    for chi in all_characters(model.group):
        if chi.is_trivial:
            continue
        moduli = weil_check(model, S0, chi)
        assert weil_bound_holds(moduli, 3)
        checked += 1
    assert checked == 5


def test_weil_rejects_trivial_character(carlitz_t, carlitz_s0):
    with pytest.raises(PreconditionError):
        weil_check(carlitz_t, carlitz_s0, all_characters(carlitz_t.group)[0])


def test_weil_bound_holds():
    assert weil_bound_holds([1.0, 3**0.5], 3)
    assert not weil_bound_holds([1.2], 3)


def test_unit_mod_p(carlitz_t, carlitz_s0):
    smoothed = theta(LDataRequest.build(carlitz_t, carlitz_s0, [place(3, "t+1")]))
    for n in (2, 3, 4):
        assert unit_mod_p_check(smoothed, n, kmax=4)


def test_unit_mod_p_constant_q4():
    model = constant_field_model(4, 2)
    result = theta(LDataRequest.build(model, [place(4, "inf")], [place(4, "t")]))
    assert unit_mod_p_check(result, 2, kmax=3)
    assert unit_mod_p_check(result, 3, kmax=3)


def test_t0_independence(carlitz_t, carlitz_s0):
    T0a, T0b = [place(3, "t+1")], [place(3, "t+2")]
    assert t0_independence_check(carlitz_t, carlitz_s0, T0a, T0b, 2)
    assert t0_independence_check(carlitz_t, carlitz_s0, T0a, T0a, 3)


def test_t0_independence_constant_r3():
    model = constant_field_model(2, 3)
    assert t0_independence_check(model, [place(2, "inf")], [place(2, "t")], [place(2, "t^2+t+1")], 2)


def test_character_compatibility(carlitz_t, carlitz_s0):
    smoothed = theta(LDataRequest.build(carlitz_t, carlitz_s0, [place(3, "t+2")]))
    assert character_compatibility_check(smoothed)


def test_frobenius_multiplicativity(carlitz_t):
    assert frobenius_multiplicativity_check(carlitz_t)
    assert not frobenius_multiplicativity_check(carlitz_t.with_corrupted_frobenius())


@pytest.mark.parametrize("dmax", [6, 7, 8])
def test_theta_stable_as_dmax_grows(carlitz_t, carlitz_s0, dmax):
    result = theta(LDataRequest.build(carlitz_t, carlitz_s0, [place(3, "t+1")], dmax=dmax))
    assert result.poly == EquivPoly.from_terms(C2, [{"1": 1}, {"1": -2, "g": 1}])
    assert result.stabilization_degree == 1


@pytest.mark.parametrize("dmax", [8, 9])
def test_theta_stable_as_dmax_grows_conductor_t_squared(dmax):
    model = carlitz_model(3, FqPoly.parse(3, "t^2"))
    S0 = [place(3, "inf"), place(3, "t")]
    baseline = theta(LDataRequest.build(model, S0, [place(3, "t+1")]))
    result = theta(LDataRequest.build(model, S0, [place(3, "t+1")], dmax=dmax))
    assert result.poly == baseline.poly
    assert result.stabilization_degree == baseline.stabilization_degree


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize(
    ("q", "modulus", "witness"),
    [(3, "t", "t+1"), (3, "t", "t+2"), (3, "t^2", "t+1"), (2, "t^2", "t+1"), (2, "t^2+t", "t^2+t+1")],
)
def test_delta_t_is_nonzero_divisor(q, modulus, witness, n):
    model = carlitz_model(q, FqPoly.parse(q, modulus))
    assert is_nonzero_divisor(delta_t(model, [place(q, witness)], n))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_delta_t_is_nonzero_divisor_constant_field(constant_q2_r2, n):
    assert is_nonzero_divisor(delta_t(constant_q2_r2, [place(2, "t")], n))
    assert is_nonzero_divisor(delta_t(constant_q2_r2, [place(2, "t^2+t+1")], n))


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("modulus", ["t", "t^2", "t^2+t"])
def test_weil_bound_grid(q, modulus):
    model = carlitz_model(q, FqPoly.parse(q, modulus))
    S0 = default_s0(model)
    nontrivial = [chi for chi in all_characters(model.group) if not chi.is_trivial]
    assert len(nontrivial) == model.group.order - 1
    for chi in nontrivial:
        assert weil_bound_holds(weil_check(model, S0, chi), q)


def test_twist_project_rejects_monomial_outside_fiber_product(constant_q2_r2):
    result = theta(LDataRequest.build(constant_q2_r2, [place(2, "inf")], [place(2, "t^2+t+1")]))
    # 1 + u: the identity paired with gamma_q^-1 restricts to different Frobenius powers
    broken = replace(result, poly=EquivPoly.from_terms(constant_q2_r2.group, [{0: 1}, {0: 1}]))
    with pytest.raises(PropertyFailure) as info:
        twist_project(broken, 2)
    assert info.value.check == "fiber_product"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_smoothed_value_matches_unsmoothed_times_delta(carlitz_t, carlitz_s0, n):
    unsmoothed = theta(LDataRequest.build(carlitz_t, carlitz_s0))
    for witness in ("t+1", "t+2"):
        T0 = [place(3, witness)]
        smoothed = theta(LDataRequest.build(carlitz_t, carlitz_s0, T0))
        expected = delta_t(carlitz_t, T0, n) * theta_special(unsmoothed, n)
        assert twist_project(smoothed, n) == expected
        assert theta_special(smoothed, n) == expected


def test_gamma_exponent(carlitz_t, constant_q2_r2):
    assert carlitz_t.alpha == carlitz_t.r_tilde == 1
    assert constant_q2_r2.alpha == constant_q2_r2.r_tilde == 2
