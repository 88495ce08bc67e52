import random
from fractions import Fraction

import pytest

from equitheta.models.character import Character, all_characters
from equitheta.models.group import cyclic_group
from equitheta.models.group_ring import EquivPoly, GroupRingElem
from equitheta.models.module import FinGroupRing
from equitheta.services.fitting import primitive_idempotents
from equitheta.services.grpring import augmentation, char_eval, decomposition_census, eval_poly, iota, is_nonzero_divisor

C2 = cyclic_group(2)
C3 = cyclic_group(3)


def theta_example() -> EquivPoly:
    """1 - (2 - g)u over Z[C2]."""
    return EquivPoly.from_terms(C2, [{"1": 1}, {"1": -2, "g": 1}])


def test_group_labels_and_law():
    G = cyclic_group(2, 3)
    assert G.order == 6
    assert G.label(0) == "1"
    g1, g2 = G.generator(0), G.generator(1)
    assert G.label(G.mul(g1, g2)) == "g1*g2"
    assert G.element_order(G.mul(g1, g2)) == 6
    assert G.mul(G.power(g2, 3), 0) == 0


def test_iota():
    x = GroupRingElem.from_terms(C2, {"g": 2, "1": -3})
    assert iota(x) == x
    assert iota(GroupRingElem.from_terms(C3, {"1": 1, "g": 2})) == GroupRingElem.from_terms(C3, {"1": 1, "g^2": 2})


def test_augmentation():
    assert augmentation(GroupRingElem.from_terms(C3, {"1": 4, "g": -1, "g^2": 2})) == 5


def test_eval_poly():
    assert eval_poly(theta_example(), 3) == GroupRingElem.from_terms(C2, {"1": -5, "g": 3})
    assert eval_poly(EquivPoly.one(C2), 7) == GroupRingElem.one(C2)
    assert eval_poly(EquivPoly.monomial(GroupRingElem.basis(C2, 1), 1), 0).is_zero()


def test_eval_poly_rational_point():
    value = eval_poly(theta_example(), Fraction(1, 2))
    assert value == GroupRingElem(C2, (Fraction(0), Fraction(1, 2)))


def test_char_eval():
    trivial, sign = all_characters(C2)
    assert [c.rational_value() for c in char_eval(theta_example(), trivial)] == [1, -1]
    assert [c.rational_value() for c in char_eval(theta_example(), sign)] == [1, -3]
    assert [c.rational_value() for c in char_eval(EquivPoly.one(C2), sign)] == [1]


def test_character_values_are_roots_of_unity():
    chi = Character(C3, (1,))
    g = C3.generator(0)
    assert chi.value(g) * chi.value(g) * chi.value(g) == 1
    assert chi.value(g) != 1
    assert abs(chi.numeric_value(g) - chi.value(g).to_complex()) < 1e-12


def test_is_nonzero_divisor():
    assert is_nonzero_divisor(GroupRingElem.from_terms(C2, {"1": 3, "g": 1}))
    assert not is_nonzero_divisor(GroupRingElem.from_terms(C2, {"1": 1, "g": 1}))
    assert not is_nonzero_divisor(GroupRingElem.from_terms(C2, {"1": 1, "g": -1}))


@pytest.mark.parametrize(
    "group,ell,delta,sylow,degrees",
    [
        (C2, 3, (2,), (1,), (1, 1)),
        (C3, 2, (3,), (1,), (1, 2)),
        (C2, 2, (1,), (2,), (1,)),
    ],
)
def test_decomposition_census(group, ell, delta, sylow, degrees):
    census = decomposition_census(group, ell)
    assert census.delta_orders == delta
    assert census.sylow_orders == sylow
    assert census.degrees == degrees
    assert census.consistent


@pytest.mark.parametrize("orders,ell,k", [((2,), 3, 2), ((3,), 2, 3), ((2,), 2, 3), ((2, 2), 3, 1), ((6,), 5, 2)])
def test_primitive_idempotents(orders, ell, k):
    ring = FinGroupRing(cyclic_group(*orders), ell, k)
    idempotents = primitive_idempotents(ring)
    assert len(idempotents) == len(decomposition_census(ring.group, ell).classes)
    total = ring.zero()
    for i, e in enumerate(idempotents):
        assert e * e == e
        assert not e.is_zero()
        for f in idempotents[i + 1 :]:
            assert (e * f).is_zero()
        total = total + e
    assert total == ring.one()


GROUPS = [(2,), (3,), (4,), (2, 2), (2, 3), (5,)]


def random_elements(orders: tuple[int, ...], seed: int, count: int = 3, modulus: int | None = None):
    G = cyclic_group(*orders)
    rng = random.Random(f"{orders}:{seed}")
    bound = (0, modulus - 1) if modulus else (-5, 5)
    return G, [GroupRingElem(G, tuple(rng.randint(*bound) for _ in range(G.order)), modulus) for _ in range(count)]


@pytest.mark.parametrize("modulus", [None, 9, 8])
@pytest.mark.parametrize("orders", GROUPS)
@pytest.mark.parametrize("seed", range(4))
def test_ring_axioms(orders, seed, modulus):
    G, (x, y, z) = random_elements(orders, seed, modulus=modulus)
    one = GroupRingElem.one(G, modulus)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x * one == x
    assert x - x == GroupRingElem.zero(G, modulus)


@pytest.mark.parametrize("orders", GROUPS)
@pytest.mark.parametrize("seed", range(4))
def test_iota_and_augmentation_are_homomorphisms(orders, seed):
    _, (x, y) = random_elements(orders, seed, count=2)
    assert iota(x * y) == iota(x) * iota(y)
    assert iota(x + y) == iota(x) + iota(y)
    assert iota(iota(x)) == x
    assert augmentation(x * y) == augmentation(x) * augmentation(y)
    assert augmentation(x + y) == augmentation(x) + augmentation(y)
    assert augmentation(iota(x)) == augmentation(x)


@pytest.mark.parametrize("orders", GROUPS)
@pytest.mark.parametrize("seed", range(4))
def test_char_eval_of_iota_is_conjugate(orders, seed):
    G, (x, y) = random_elements(orders, seed, count=2)
    f = EquivPoly(G, (x, y))
    for chi in all_characters(G):
        conjugated = [c.conjugate() for c in char_eval(f, chi)]
        assert char_eval(f.map_coefficients(iota), chi) == conjugated
        assert chi.evaluate(iota(x)) == chi.evaluate(x).conjugate()


@pytest.mark.parametrize("orders", GROUPS)
@pytest.mark.parametrize("seed", range(4))
def test_char_eval_is_multiplicative(orders, seed):
    G, (x, y) = random_elements(orders, seed, count=2)
    for chi in all_characters(G):
        assert chi.evaluate(x * y) == chi.evaluate(x) * chi.evaluate(y)
        assert chi.evaluate(x + y) == chi.evaluate(x) + chi.evaluate(y)


@pytest.mark.parametrize("orders", GROUPS)
@pytest.mark.parametrize("seed", range(4))
def test_characters_jointly_injective(orders, seed):
    G, (x, y) = random_elements(orders, seed, count=2)
    if x == y:
        y = y + GroupRingElem.one(G)
    assert any(chi.evaluate(x) != chi.evaluate(y) for chi in all_characters(G))
    for g in range(1, G.order):
        assert any(chi.value(g) != 1 for chi in all_characters(G))


@pytest.mark.parametrize("orders", GROUPS + [(2, 4), (3, 3)])
def test_characters_are_multiplicative(orders):
    G = cyclic_group(*orders)
    characters = all_characters(G)
    assert len(characters) == G.order
    assert len({chi.label() for chi in characters}) == G.order
    for chi in characters:
        for g in range(G.order):
            for h in range(G.order):
                assert chi.value(G.mul(g, h)) == chi.value(g) * chi.value(h)
