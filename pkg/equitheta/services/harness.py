"""
Seeded random instances for the Fitting-ideal property suite.

Every instance draws from its own `random.Random` seeded by (seed, property,
index), so reports do not depend on evaluation order.
"""

import logging
import math
import random
from typing import Callable, Sequence

from equitheta.config import settings
from equitheta.exceptions import ConfigError, EquithetaError, PreconditionError
from equitheta.linalg import kernel
from equitheta.models.group_ring import GroupRingElem
from equitheta.models.module import FinGroupRing, IdealFG, PresentedModule
from equitheta.schemas.reports import FitLabFailure, FitLabReport, IdealReport, PropertySummary
from equitheta.services.fitting import (
    ann,
    augment_ideal,
    augment_module,
    base_change_ideal,
    base_change_module,
    determinant,
    dual_vee,
    dual_wedge,
    fit,
    four_term_check,
    ideal_contains,
    ideal_iota,
    ideal_mul,
    minor_ideal,
    module_order,
    quotient_module,
    twist_ideal,
    twist_module,
)
from equitheta.services.grpring import is_nonzero_divisor

logger = logging.getLogger(__name__)

IntMatrix = list[list[GroupRingElem]]


# Generators


def random_element(rng: random.Random, ring: FinGroupRing) -> GroupRingElem:
    return ring.from_vector([rng.randrange(ring.modulus) for _ in range(ring.group.order)])


def random_nonunit(rng: random.Random, ring: FinGroupRing) -> GroupRingElem:
    """Random element pushed into a proper ideal by l or by g - 1 half of the time."""
    x = random_element(rng, ring)
    roll = rng.random()
    if roll < 0.25:
        return x * ring.ell
    if roll < 0.5 and ring.group.order > 1:
        g = rng.randrange(1, ring.group.order)
        return x * (ring.basis(g) - ring.one())
    return x


def random_module(
    rng: random.Random, ring: FinGroupRing, max_generators: int = 2, max_relations: int = 3
) -> PresentedModule:
    g = rng.randint(1, max_generators)
    count = rng.randint(0, max_relations)
    rows = [tuple(random_nonunit(rng, ring) for _ in range(g)) for _ in range(count)]
    return PresentedModule(ring, g, tuple(rows))


def random_ideal(rng: random.Random, ring: FinGroupRing, max_generators: int = 2) -> IdealFG:
    return IdealFG(ring, tuple(random_nonunit(rng, ring) for _ in range(rng.randint(1, max_generators))))


def _small_integral(rng: random.Random, ring: FinGroupRing, bound: int = 3) -> GroupRingElem:
    return GroupRingElem(ring.group, tuple(rng.randint(-bound, bound) for _ in range(ring.group.order)))


def random_divisor(rng: random.Random, ring: FinGroupRing) -> GroupRingElem:
    """
    Integral d with l^(k-1) in d (Z/l^k)[G], so Z_l[G]/d is killed by l^(k-1).

    Raises:
        PreconditionError: If no candidate is accepted within harness_retries draws
    """
    ell, k = ring.ell, ring.k
    target = ell ** (k - 1)
    for _ in range(settings.harness_retries):
        d = _small_integral(rng, ring, bound=ell)
        if rng.random() < 0.5 and k > 1:
            d = d * ell ** rng.randint(1, k - 1)
        if d.is_zero() or not is_nonzero_divisor(d):
            continue
        if IdealFG.principal(ring, d).contains(target):
            return d
    raise PreconditionError(f"no divisor accepted over {ring} in {settings.harness_retries} draws")


def random_pd1_matrix(rng: random.Random, ring: FinGroupRing) -> IntMatrix:
    """P * diag(d1, d2) * Q with P, Q elementary over Z[G]."""
    G = ring.group
    one, zero = GroupRingElem.one(G), GroupRingElem.zero(G)
    d1, d2 = random_divisor(rng, ring), random_divisor(rng, ring)
    a, b = _small_integral(rng, ring), _small_integral(rng, ring)
    P = [[one, a], [zero, one]]
    Q = [[one, zero], [b, one]]
    D = [[d1, zero], [zero, d2]]
    return _matmul(_matmul(P, D), Q)


def _matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    G = A[0][0].group
    out = []
    for row in A:
        new_row = []
        for j in range(len(B[0])):
            total = GroupRingElem.zero(G)
            for x, brow in zip(row, B):
                total = total + x * brow[j]
            new_row.append(total)
        out.append(new_row)
    return out


def random_hom(rng: random.Random, B: PresentedModule, C: PresentedModule) -> list[list[GroupRingElem]]:
    """A uniformly drawn combination of a spanning set of Hom_R(B, C), as images of generators."""
    ring = B.ring
    n, gB, gC = ring.group.order, B.generators, C.generators
    block = gC * n
    relations_C = []
    for row in C.relations:
        for h in range(n):
            relations_C.append([c for x in row for c in x.translate(h).coeffs])
    target_relations = []
    for s in range(len(B.relations)):
        for rel in relations_C:
            vec = [0] * (len(B.relations) * block)
            vec[s * block : (s + 1) * block] = rel
            target_relations.append(vec)

    images = []
    for j in range(gB):
        for c in range(gC):
            for h in range(n):
                vec = [0] * (len(B.relations) * block)
                for s, relation in enumerate(B.relations):
                    coeffs = relation[j].translate(h).coeffs
                    vec[s * block + c * n : s * block + (c + 1) * n] = coeffs
                images.append(vec)
    spanning = kernel(images, target_relations, ring.ell, ring.k, len(B.relations) * block)
    combo = [0] * (gB * gC * n)
    for vec in spanning:
        a = rng.randrange(ring.modulus)
        combo = [(x + a * y) % ring.modulus for x, y in zip(combo, vec)]
    return [[ring.from_vector(combo[(j * gC + c) * n : (j * gC + c + 1) * n]) for c in range(gC)] for j in range(gB)]


def random_twist_character(rng: random.Random, ring: FinGroupRing) -> tuple[int, ...]:
    """Values of a random c: G -> (Z/l^k)^x on the elements of G."""
    G, N, ell = ring.group, ring.modulus, ring.ell
    phi = N - N // ell
    while True:
        w = rng.randrange(1, N)
        if w % ell:
            break
    generator_values = []
    for order in G.orders:
        base = pow(w, phi // math.gcd(phi, order), N)
        generator_values.append(pow(base, rng.randrange(order), N))
    values = []
    for exponents in G.elements:
        value = 1
        for u, e in zip(generator_values, exponents):
            value = value * pow(u, e, N) % N
        values.append(value)
    return tuple(values)


def character_module(ring: FinGroupRing, c: tuple[int, ...], a: int) -> PresentedModule:
    """Z/l^a with G acting through c: R / <g_i - c(g_i), l^a>, cyclic as an abelian group."""
    G = ring.group
    relations = [ring.basis(G.generator(i)) - ring.coerce(c[G.generator(i)]) for i in range(G.rank)]
    relations.append(ring.coerce(ring.ell**a))
    return PresentedModule.cyclic(ring, relations)


# Properties: each returns (lhs, rhs) ideals that must be equal, or a bool


Outcome = tuple[IdealFG, IdealFG] | bool


def _four_term(rng: random.Random, ring: FinGroupRing) -> Outcome:
    b_matrix, c_matrix = random_pd1_matrix(rng, ring), random_pd1_matrix(rng, ring)
    B = PresentedModule.from_matrix(ring, b_matrix)
    C = PresentedModule.from_matrix(ring, c_matrix)
    outcome = four_term_check(ring, b_matrix, c_matrix, random_hom(rng, B, C))
    if not outcome.orders_match:
        return False
    return outcome.lhs, outcome.rhs


def _fit_in_ann(rng: random.Random, ring: FinGroupRing) -> Outcome:
    M = random_module(rng, ring)
    return ideal_contains(ann(M), fit(M))


def _fit_of_quotient(rng: random.Random, ring: FinGroupRing) -> Outcome:
    I = random_ideal(rng, ring)
    return fit(quotient_module(I)), I


def _direct_sum(rng: random.Random, ring: FinGroupRing) -> Outcome:
    M, N = random_module(rng, ring, 2, 2), random_module(rng, ring, 2, 2)
    return fit(M.direct_sum(N)), ideal_mul(fit(M), fit(N))


def _base_change(rng: random.Random, ring: FinGroupRing) -> Outcome:
    M = random_module(rng, ring)
    if ring.k > 1:
        k = rng.randint(1, ring.k - 1)
        if base_change_ideal(fit(M), k) != fit(base_change_module(M, k)):
            return False
    return augment_ideal(fit(M)), fit(augment_module(M))


def _cyclic_duals(rng: random.Random, ring: FinGroupRing) -> Outcome:
    M = character_module(ring, random_twist_character(rng, ring), rng.randint(1, ring.k))
    F, A = fit(M), ann(M)
    dual = dual_wedge(M)
    if not (F == A == ann(dual)):
        return False
    return F, fit(dual)


def _iota_duality(rng: random.Random, ring: FinGroupRing) -> Outcome:
    matrix = random_pd1_matrix(rng, ring)
    M = PresentedModule.from_matrix(ring, matrix)
    F = fit(M)
    if F != IdealFG.principal(ring, determinant(matrix)):
        return False
    return fit(dual_vee(M)), ideal_iota(F)


def _twist(rng: random.Random, ring: FinGroupRing) -> Outcome:
    M = random_module(rng, ring)
    c = random_twist_character(rng, ring)
    m = rng.randint(-3, 3)
    return fit(twist_module(M, m, c)), twist_ideal(fit(M), m, c)


def _minor_oracle(rng: random.Random, ring: FinGroupRing) -> Outcome:
    M = random_module(rng, ring)
    return fit(M), minor_ideal(M)


def _double_dual(rng: random.Random, ring: FinGroupRing) -> Outcome:
    M = random_module(rng, ring)
    MM = dual_wedge(dual_wedge(M))
    if module_order(MM) != module_order(M):
        return False
    return fit(MM), fit(M)


PROPERTIES: dict[str, Callable[[random.Random, FinGroupRing], Outcome]] = {
    "four_term": _four_term,
    "fit_in_ann": _fit_in_ann,
    "fit_of_quotient": _fit_of_quotient,
    "fit_direct_sum": _direct_sum,
    "base_change": _base_change,
    "cyclic_fit_ann_duals": _cyclic_duals,
    "iota_duality": _iota_duality,
    "twist": _twist,
    "minor_oracle": _minor_oracle,
    "double_dual": _double_dual,
}


def instance_rng(seed: int, name: str, index: int) -> random.Random:
    return random.Random(f"{seed}:{name}:{index}")


class FitLabService:
    """Runs the Fitting-ideal property suite."""

    @staticmethod
    def run(
        ring: FinGroupRing,
        seed: int,
        instances: int,
        config: dict | None = None,
        properties: Sequence[str] | None = None,
    ) -> FitLabReport:
        """
        Run the properties on `instances` seeded random instances each.

        Args:
            ring: Working ring (Z/l^k)[G]
            seed: Base seed
            instances: Instances per property (0 is a vacuous pass)
            config: Run configuration embedded in the report
            properties: Names from PROPERTIES to run (all when None)

        Returns:
            FitLabReport: Per-property counts and canonical forms of failures

        Raises:
            ConfigError: If a property name is unknown
        """
        selected = list(PROPERTIES) if properties is None else list(properties)
        unknown = [name for name in selected if name not in PROPERTIES]
        if unknown:
            raise ConfigError(f"unknown fitlab properties: {unknown}")
        if instances == 0:
            logger.warning("fitlab with 0 instances: vacuous pass")
        summaries: dict[str, PropertySummary] = {}
        failures: list[FitLabFailure] = []
        for name in selected:
            check = PROPERTIES[name]
            passed = 0
            for index in range(instances):
                failure = FitLabService._run_instance(name, check, ring, seed, index)
                if failure is None:
                    passed += 1
                else:
                    failures.append(failure)
            summaries[name] = PropertySummary(total=instances, passed=passed)
            logger.info(f"fitlab {name}: {passed}/{instances} over {ring}")
        return FitLabReport(
            config=config or {},
            seed=seed,
            instances=instances,
            ring=str(ring),
            properties=summaries,
            failures=failures,
            passed=not failures,
        )

    @staticmethod
    def _run_instance(
        name: str,
        check: Callable[[random.Random, FinGroupRing], Outcome],
        ring: FinGroupRing,
        seed: int,
        index: int,
    ) -> FitLabFailure | None:
        try:
            outcome = check(instance_rng(seed, name, index), ring)
        except EquithetaError as e:
            logger.error(f"fitlab {name} #{index}: {e}")
            return FitLabFailure(property=name, seed=seed, instance=index, detail=str(e))
        if isinstance(outcome, bool):
            if outcome:
                return None
            return FitLabFailure(property=name, seed=seed, instance=index, detail="property does not hold")
        lhs, rhs = outcome
        if lhs == rhs:
            return None
        logger.error(f"fitlab {name} #{index}: {lhs} != {rhs}")
        return FitLabFailure(
            property=name,
            seed=seed,
            instance=index,
            lhs=IdealReport.from_ideal(lhs),
            rhs=IdealReport.from_ideal(rhs),
        )
