import pytest

from equitheta.exceptions import IllDefinedMapError, PreconditionError, SizeCapExceeded
from equitheta.models.group import cyclic_group
from equitheta.models.group_ring import GroupRingElem
from equitheta.models.module import FinGroupRing, IdealFG, PresentedModule
from equitheta.services.fitting import (
    ann,
    augment_ideal,
    augment_module,
    base_change_ideal,
    base_change_module,
    check_twist_character,
    dual_vee,
    dual_wedge,
    exact_precision,
    fit,
    four_term_check,
    ideal_contains,
    ideal_eq,
    ideal_iota,
    ideal_mul,
    ideal_sum,
    is_unit,
    minor_ideal,
    module_order,
    quotient_module,
    twist_ideal,
    twist_module,
    unit_inverse,
)

C2 = cyclic_group(2)
C3 = cyclic_group(3)
TRIVIAL = cyclic_group()


def scalar_matrix(group, *rows):
    return [[GroupRingElem.scalar(group, x) for x in row] for row in rows]


def test_fit_of_cyclic_quotient(z9_c2):
    x = z9_c2.elem({"1": 3, "g": 3})
    assert fit(PresentedModule.cyclic(z9_c2, [x])) == IdealFG.principal(z9_c2, x)


def test_fit_of_free_module_is_zero(z9_c2):
    assert fit(PresentedModule.free(z9_c2, 1)).is_zero()


def test_fit_of_zero_module_is_unit(z9_c2):
    assert fit(PresentedModule(z9_c2, 0)).is_unit()


def test_fit_of_diagonal(z9_c2):
    x = z9_c2.elem({"1": 3})
    y = z9_c2.elem({"1": 1, "g": 2})
    M = PresentedModule.from_matrix(z9_c2, [[x, 0], [0, y]])
    assert fit(M) == IdealFG.principal(z9_c2, x * y)


def test_fit_matches_minor_oracle():
    ring = FinGroupRing(C2, 2, 2)
    g, one = ring.basis(1), ring.one()
    rows = [[one * 2, g - one], [g + one, one * 2], [ring.zero(), g * 2]]
    M = PresentedModule.from_matrix(ring, rows)
    assert fit(M) == minor_ideal(M)


def test_fit_with_units_splits_off_generators():
    ring = FinGroupRing(C3, 2, 3)
    g = ring.basis(1)
    x = ring.elem({"1": 2, "g": 2})
    # The unit entry eliminates the first generator, leaving R / <x>
    M = PresentedModule.from_matrix(ring, [[ring.one(), g], [ring.zero(), x]])
    assert fit(M) == IdealFG.principal(ring, x)


def test_minor_caps(monkeypatch, z9_c2):
    from equitheta.config import settings

    monkeypatch.setattr(settings, "fit_max_generators", 1)
    M = PresentedModule.from_matrix(z9_c2, [[3, 0], [0, 3]])
    with pytest.raises(SizeCapExceeded):
        minor_ideal(M)


def test_ann_of_cyclic(z9_c2):
    x = z9_c2.elem({"1": 3, "g": 3})
    assert ann(PresentedModule.cyclic(z9_c2, [x])) == IdealFG.principal(z9_c2, x)


def test_ann_with_free_summand(z9_c2):
    x = z9_c2.elem({"1": 3})
    M = PresentedModule.free(z9_c2, 1).direct_sum(PresentedModule.cyclic(z9_c2, [x]))
    assert ann(M).is_zero()


def test_fit_inside_ann():
    ring = FinGroupRing(C2, 2, 2)
    g = ring.basis(1)
    M = PresentedModule.from_matrix(ring, [[g - ring.one(), ring.one() * 2], [ring.zero(), g + ring.one()]])
    assert ideal_contains(ann(M), fit(M))


def test_ideal_equality_in_z8(z8):
    assert ideal_eq(IdealFG.principal(z8, 2), IdealFG(z8, (z8.coerce(2), z8.coerce(4))))
    assert ideal_mul(IdealFG.principal(z8, 2), IdealFG.principal(z8, 2)) == IdealFG.principal(z8, 4)
    assert IdealFG.principal(z8, 2) != IdealFG.principal(z8, 4)


def test_ideal_equality_up_to_units(z8_c2):
    g = z8_c2.basis(1)
    assert IdealFG.principal(z8_c2, g - z8_c2.one()) == IdealFG.principal(z8_c2, z8_c2.one() - g)


def test_ideal_sum_and_containment(z8_c2):
    g = z8_c2.basis(1)
    I = ideal_sum(IdealFG.principal(z8_c2, g - z8_c2.one()), IdealFG.principal(z8_c2, 2))
    assert I.contains(z8_c2.elem({"1": 5, "g": 3}))
    assert not I.contains(z8_c2.one())
    assert ideal_contains(I, IdealFG.principal(z8_c2, 4))
    with pytest.raises(PreconditionError):
        ideal_eq(I, IdealFG.unit(FinGroupRing(C2, 2, 2)))


def test_fit_of_quotient_module(z8_c2):
    I = IdealFG(z8_c2, (z8_c2.elem({"1": 2, "g": 2}), z8_c2.elem({"1": 4})))
    assert fit(quotient_module(I)) == I


def test_module_order(z9_c2):
    x = z9_c2.elem({"1": 3, "g": 3})
    assert module_order(PresentedModule.cyclic(z9_c2, [x])) == 27
    assert module_order(PresentedModule.free(z9_c2, 1)) == 81


def test_units(z9_c2):
    x = z9_c2.elem({"1": 1, "g": 3})
    assert is_unit(z9_c2, x)
    assert x * unit_inverse(z9_c2, x) == z9_c2.one()
    assert not is_unit(z9_c2, z9_c2.elem({"1": 1, "g": 1}))
    with pytest.raises(PreconditionError):
        unit_inverse(z9_c2, z9_c2.elem({"1": 3}))


def test_exact_precision():
    assert exact_precision(C2, 2, 1, [(GroupRingElem.scalar(C2, -8),)]) == 3


def test_exact_precision_infinite_module():
    with pytest.raises(SizeCapExceeded):
        exact_precision(C2, 2, 1, [(GroupRingElem.from_terms(C2, {"1": 1, "g": 1}),)])


def test_duals_of_cyclic_pd1_module():
    # 9 lies in (2 + g)Z_3[C3], so the module is seen faithfully at level 3
    ring = FinGroupRing(C3, 3, 3)
    x = ring.elem({"1": 2, "g": 1})
    M = PresentedModule.cyclic(ring, [x])
    assert fit(dual_wedge(M)) == fit(M)
    assert fit(dual_vee(M)) == ideal_iota(fit(M))
    assert ideal_iota(fit(M)) == IdealFG.principal(ring, ring.elem({"1": 2, "g^2": 1}))


def test_dual_of_character_module(z9_c2):
    # Z/9 with g acting by -1
    M = PresentedModule.cyclic(z9_c2, [z9_c2.basis(1) + z9_c2.one()])
    dual = dual_wedge(M)
    assert module_order(dual) == module_order(M) == 9
    assert fit(dual) == fit(M) == ann(dual)


def test_twist_identities(z9_c2):
    c = check_twist_character(z9_c2, [1, 8])
    x = z9_c2.elem({"1": 3, "g": 1})
    M = PresentedModule.cyclic(z9_c2, [x])
    I = fit(M)
    assert twist_ideal(I, 0, c) == I
    assert twist_ideal(I, 5, [1, 1]) == I
    for m in (-2, 1, 3):
        assert fit(twist_module(M, m, c)) == twist_ideal(I, m, c)
    assert twist_ideal(I, 1, c) == IdealFG.principal(z9_c2, z9_c2.elem({"1": 3, "g": -1}))


def test_twist_character_validation(z9_c2):
    with pytest.raises(PreconditionError):
        check_twist_character(z9_c2, [1, 2])
    with pytest.raises(PreconditionError):
        check_twist_character(z9_c2, [1, 3])
    with pytest.raises(PreconditionError):
        check_twist_character(z9_c2, [1])


def test_base_change(z9_c2):
    g = z9_c2.basis(1)
    M = PresentedModule.from_matrix(z9_c2, [[g * 3 + z9_c2.one() * 3, g - z9_c2.one()], [z9_c2.zero(), g * 3]])
    assert base_change_ideal(fit(M), 1) == fit(base_change_module(M, 1))
    assert augment_ideal(fit(M)) == fit(augment_module(M))
    with pytest.raises(PreconditionError):
        base_change_module(M, 3)


def test_four_term_multiplication_by_three(z9):
    B = scalar_matrix(TRIVIAL, [9])
    C = scalar_matrix(TRIVIAL, [9])
    outcome = four_term_check(z9, B, C, [[z9.coerce(3)]])
    assert outcome.holds
    assert outcome.orders == (3, 9, 9, 3)
    assert fit(outcome.kernel) == IdealFG.principal(z9, 3)
    assert fit(outcome.cokernel) == IdealFG.principal(z9, 3)
    assert outcome.lhs.is_zero()


def test_four_term_isomorphism():
    ring = FinGroupRing(TRIVIAL, 3, 3)
    matrix = scalar_matrix(TRIVIAL, [9])
    outcome = four_term_check(ring, matrix, matrix, [[ring.coerce(2)]])
    assert outcome.holds
    assert module_order(outcome.kernel) == 1
    assert module_order(outcome.cokernel) == 1
    assert outcome.lhs == IdealFG.principal(ring, 9)


def test_four_term_with_group(z9_c2):
    d = GroupRingElem.from_terms(C2, {"1": 3, "g": 0})
    B = [[d]]
    C = [[GroupRingElem.scalar(C2, 9)]]
    outcome = four_term_check(z9_c2, B, C, [[z9_c2.elem({"1": 3, "g": 3})]])
    assert outcome.orders_match
    assert outcome.lhs == outcome.rhs


def test_four_term_rejects_ill_defined_map(z9):
    with pytest.raises(IllDefinedMapError):
        four_term_check(z9, scalar_matrix(TRIVIAL, [3]), scalar_matrix(TRIVIAL, [9]), [[z9.coerce(1)]])


def test_four_term_rejects_zero_divisor_determinant(z9_c2):
    B = [[GroupRingElem.from_terms(C2, {"1": 1, "g": 1})]]
    C = [[GroupRingElem.scalar(C2, 9)]]
    with pytest.raises(PreconditionError):
        four_term_check(z9_c2, B, C, [[z9_c2.one()]])
