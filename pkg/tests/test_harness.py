import pytest

from equitheta.exceptions import ConfigError
from equitheta.models.group import cyclic_group
from equitheta.models.module import FinGroupRing, IdealFG, PresentedModule
from equitheta.services.fitting import check_twist_character, fit, four_term_check, module_order
from equitheta.services.harness import (
    PROPERTIES,
    FitLabService,
    character_module,
    instance_rng,
    random_divisor,
    random_hom,
    random_module,
    random_pd1_matrix,
    random_twist_character,
)


@pytest.fixture
def ring():
    return FinGroupRing(cyclic_group(2), 3, 2)


def test_instance_rng_is_reproducible():
    a = instance_rng(7, "twist", 3)
    b = instance_rng(7, "twist", 3)
    assert [a.random() for _ in range(5)] == [b.random() for _ in range(5)]
    assert instance_rng(7, "twist", 4).random() != instance_rng(7, "twist", 3).random()


def test_random_module_shape(ring):
    M = random_module(instance_rng(0, "shape", 0), ring)
    assert 1 <= M.generators <= 2
    assert len(M.relations) <= 3


def test_random_divisor_kills_module(ring):
    for index in range(5):
        d = random_divisor(instance_rng(1, "divisor", index), ring)
        assert IdealFG.principal(ring, d).contains(ring.ell ** (ring.k - 1))


def test_random_twist_character_is_valid(ring):
    for index in range(5):
        c = random_twist_character(instance_rng(2, "character", index), ring)
        assert check_twist_character(ring, c) == c


def test_character_module_order(ring):
    c = random_twist_character(instance_rng(3, "character", 0), ring)
    M = character_module(ring, c, 1)
    assert module_order(M) == 3
    assert fit(M) != IdealFG.unit(ring)


def test_random_hom_is_well_defined(ring):
    rng = instance_rng(4, "hom", 0)
    b_matrix, c_matrix = random_pd1_matrix(rng, ring), random_pd1_matrix(rng, ring)
    B = PresentedModule.from_matrix(ring, b_matrix)
    C = PresentedModule.from_matrix(ring, c_matrix)
    phi = random_hom(rng, B, C)
    assert len(phi) == B.generators
    assert four_term_check(ring, b_matrix, c_matrix, phi).orders_match


def test_fitlab_small_run_passes(ring):
    report = FitLabService.run(ring, seed=11, instances=2)
    assert report.passed
    assert set(report.properties) == set(PROPERTIES)
    assert all(s.total == 2 and s.passed == 2 for s in report.properties.values())
    assert report.failures == []


def test_fitlab_zero_instances_is_vacuous(ring):
    report = FitLabService.run(ring, seed=0, instances=0)
    assert report.passed
    assert all(s.total == 0 for s in report.properties.values())


def test_fitlab_is_deterministic():
    ring = FinGroupRing(cyclic_group(2), 2, 2)
    first = FitLabService.run(ring, seed=5, instances=1, config={"seed": 5})
    second = FitLabService.run(ring, seed=5, instances=1, config={"seed": 5})
    assert first.model_dump() == second.model_dump()
    assert first.config == {"seed": 5}


def test_fitlab_property_subset(ring):
    report = FitLabService.run(ring, seed=3, instances=3, properties=["four_term", "twist"])
    assert set(report.properties) == {"four_term", "twist"}
    assert report.properties["four_term"].total == 3


def test_fitlab_unknown_property(ring):
    with pytest.raises(ConfigError, match="no_such_property"):
        FitLabService.run(ring, seed=0, instances=1, properties=["no_such_property"])
