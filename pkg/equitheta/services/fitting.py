"""
Fitting ideals, annihilators, duals and twists over (Z/l^k)[G].

Fitting ideals are computed one local factor at a time: (Z/l^k)[G] splits along
its primitive idempotents into local rings, where entries that are units can be
eliminated before the maximal minors are taken.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import galois
from sympy.combinatorics import Permutation

from equitheta.config import settings
from equitheta.exceptions import IllDefinedMapError, PreconditionError, SizeCapExceeded
from equitheta.linalg import HowellBasis, howell_form, kernel, matrix_unit_mod_prime, solve_unit
from equitheta.models.group import FinAbGroup, cyclic_group
from equitheta.models.group_ring import GroupRingElem
from equitheta.models.module import FinGroupRing, IdealFG, PresentedModule, Row
from equitheta.services.grpring import decomposition_census, is_nonzero_divisor

logger = logging.getLogger(__name__)


# Vectors over R as integer vectors over Z/l^k


def _flatten(row: Sequence[GroupRingElem]) -> list[int]:
    out: list[int] = []
    for x in row:
        out.extend(x.coeffs)
    return out


def _unflatten(ring: FinGroupRing, vector: Sequence[int], width: int) -> Row:
    n = ring.group.order
    return tuple(ring.from_vector(vector[j * n : (j + 1) * n]) for j in range(width))


def _translates(row: Sequence[GroupRingElem], n: int) -> list[list[int]]:
    return [_flatten([x.translate(h) for x in row]) for h in range(n)]


def span_basis(ring: FinGroupRing, rows: Sequence[Sequence[GroupRingElem]], width: int) -> HowellBasis:
    """Howell basis of the R-span of rows inside R^width."""
    n = ring.group.order
    flat = []
    for row in rows:
        flat.extend(_translates(row, n))
    return howell_form(flat, ring.ell, ring.k, width * n)


def prune_rows(
    ring: FinGroupRing,
    rows: Sequence[Row],
    width: int,
    extra: Sequence[Row] = (),
) -> list[Row]:
    """Greedy subset of rows with the same R-span modulo span(extra)."""
    n = ring.group.order
    current = span_basis(ring, extra, width)
    kept = []
    for row in rows:
        if current.contains(_flatten(row)):
            continue
        kept.append(row)
        current = howell_form(
            [list(r) for r in current.rows] + _translates(row, n),
            ring.ell,
            ring.k,
            width * n,
        )
    return kept


# Units and idempotents


def multiplication_matrix(x: GroupRingElem) -> list[list[int]]:
    """Matrix of y -> x*y in the group basis (column h is x*h)."""
    G = x.group
    columns = [x.translate(h).coeffs for h in range(G.order)]
    return [[int(columns[h][g]) for h in range(G.order)] for g in range(G.order)]


def is_unit(ring: FinGroupRing, x: GroupRingElem) -> bool:
    """x is a unit of (Z/l^k)[G] iff multiplication by x is invertible modulo l."""
    return matrix_unit_mod_prime(multiplication_matrix(ring.coerce(x)), ring.ell)


def unit_inverse(ring: FinGroupRing, x: GroupRingElem) -> GroupRingElem:
    """
    Inverse of a unit of (Z/l^k)[G].

    Raises:
        PreconditionError: If x is not a unit
    """
    x = ring.coerce(x)
    identity = [1] + [0] * (ring.group.order - 1)
    return ring.from_vector(solve_unit(multiplication_matrix(x), identity, ring.ell, ring.k))


@lru_cache(maxsize=None)
def primitive_idempotents(ring: FinGroupRing) -> tuple[GroupRingElem, ...]:
    """
    Primitive idempotents of (Z/l^k)[G], one per l-adic class of characters of Delta.

    Each is first written down modulo l from character values in GF(l^f),
    e = (1/|Delta|) sum_{delta} sum_{chi in class} chi(delta^-1) delta, then lifted
    to Z/l^k by e <- 3e^2 - 2e^3.
    """
    G, ell = ring.group, ring.ell
    census = decomposition_census(G, ell)
    if not census.consistent:
        raise PreconditionError(f"decomposition census of {G.orders} at l={ell} is inconsistent")
    exponent = math.lcm(1, *census.delta_orders)
    GF = galois.GF(ell**census.residue_degree)
    zeta = GF.primitive_element ** ((GF.order - 1) // exponent)
    inv_delta = pow(census.delta_order, -1, ell)
    embedding = census.delta_embedding()

    idempotents = []
    for orbit in census.classes:
        coeffs = [0] * G.order
        for y, index in embedding:
            total = GF(0)
            for b in orbit:
                e = -sum(bi * yi * (exponent // m) for bi, yi, m in zip(b, y, census.delta_orders))
                total = total + zeta ** (e % exponent)
            value = int(total)
            if value >= ell:
                raise PreconditionError(f"idempotent coefficient {total} is not in GF({ell})")
            coeffs[index] = value * inv_delta % ell
        e = ring.from_vector(coeffs)
        for _ in range(ring.k + 2):
            if e * e == e:
                break
            e = e * e * 3 - e * e * e * 2
        idempotents.append(e)
    logger.debug(f"{ring}: {len(idempotents)} primitive idempotents")
    return tuple(idempotents)


# Determinants and minors


def determinant(rows: Sequence[Sequence[GroupRingElem]]) -> GroupRingElem:
    """Leibniz determinant over a commutative group ring."""
    n = len(rows)
    first = rows[0][0]
    total = GroupRingElem.zero(first.group, first.modulus)
    for perm in itertools.permutations(range(n)):
        term = GroupRingElem.one(first.group, first.modulus)
        for i, j in enumerate(perm):
            term = term * rows[i][j]
            if term.is_zero():
                break
        if term.is_zero():
            continue
        total = total + term if Permutation(list(perm)).signature() == 1 else total - term
    return total


def _check_minor_caps(rows: int, cols: int) -> None:
    if cols > settings.fit_max_generators:
        raise SizeCapExceeded(f"{cols} generators exceed fit_max_generators={settings.fit_max_generators}")
    count = math.comb(rows, cols)
    if count > settings.max_minors:
        raise SizeCapExceeded(f"{count} minors exceed max_minors={settings.max_minors}")


def _maximal_minors(rows: Sequence[Row], cols: int) -> list[GroupRingElem]:
    _check_minor_caps(len(rows), cols)
    minors = []
    for subset in itertools.combinations(range(len(rows)), cols):
        d = determinant([rows[i] for i in subset])
        if not d.is_zero():
            minors.append(d)
    return minors


def minor_ideal(M: PresentedModule) -> IdealFG:
    """Ideal of all g x g minors of the full relation matrix (no reduction; test oracle)."""
    ring = M.ring
    if M.generators == 0:
        return IdealFG.unit(ring)
    if len(M.relations) < M.generators:
        return IdealFG.zero(ring)
    return IdealFG(ring, tuple(_maximal_minors(M.relations, M.generators)))


def _component_fit(ring: FinGroupRing, e: GroupRingElem, M: PresentedModule) -> list[GroupRingElem]:
    """Generators of e * Fit(M) computed in the local ring eR."""
    complement = ring.one() - e
    rows = [[x * e for x in row] for row in M.relations]
    cols = M.generators

    while cols:
        pivot = None
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                if not x.is_zero() and is_unit(ring, x + complement):
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        inverse = unit_inverse(ring, rows[i][j] + complement) * e
        pivot_row = rows[i]
        reduced = []
        for r, row in enumerate(rows):
            if r == i:
                continue
            factor = row[j] * inverse
            new_row = [x - factor * y for x, y in zip(row, pivot_row)]
            del new_row[j]
            if any(not x.is_zero() for x in new_row):
                reduced.append(new_row)
        rows = reduced
        cols -= 1

    if cols == 0:
        return [e]
    rows = [tuple(row) for row in rows]
    if len(rows) >= cols:
        rows = prune_rows(ring, rows, cols)
    if len(rows) < cols:
        return []
    return _maximal_minors(rows, cols)


def fit(M: PresentedModule) -> IdealFG:
    """
    The (zeroth) Fitting ideal of M in canonical form.

    Args:
        M: Presented module over (Z/l^k)[G]

    Returns:
        IdealFG: Generated by the maximal minors of a presentation

    Raises:
        SizeCapExceeded: If the reduced presentation needs too many minors

    Example:
        >>> ring = FinGroupRing(cyclic_group(2), 3, 2)
        >>> fit(PresentedModule.cyclic(ring, [ring.elem({"1": 3, "g": 3})])) == IdealFG.principal(ring, ring.elem({"1": 3, "g": 3}))
        True
    """
    ring = M.ring
    if M.generators == 0:
        return IdealFG.unit(ring)
    if not M.relations:
        return IdealFG.zero(ring)
    generators: list[GroupRingElem] = []
    for e in primitive_idempotents(ring):
        generators.extend(_component_fit(ring, e, M))
    return IdealFG(ring, tuple(generators))


# Submodules, kernels, orders


def submodule_presentation(
    ring: FinGroupRing,
    width: int,
    generators: Sequence[Row],
    relations: Sequence[Row] = (),
) -> PresentedModule:
    """
    Presentation of (span_R(generators) + L) / L inside R^width / L, L = span_R(relations).

    Generators are pruned modulo L; relations are the kernel of a -> sum a_j x_j mod L.
    """
    n = ring.group.order
    kept = prune_rows(ring, generators, width, extra=relations)
    if not kept:
        return PresentedModule(ring, 0, ())
    images = []
    for x in kept:
        images.extend(_translates(x, n))
    # kernel coordinates are ordered (j, h); c_{j,.} is the group-basis vector of a_j
    L_rows = []
    for row in relations:
        L_rows.extend(_translates(row, n))
    vectors = kernel(images, L_rows, ring.ell, ring.k, width * n)
    rel_rows = [_unflatten(ring, v, len(kept)) for v in vectors]
    rel_rows = prune_rows(ring, rel_rows, len(kept))
    return PresentedModule(ring, len(kept), tuple(rel_rows))


def module_order(M: PresentedModule) -> int:
    """|R^g / L|."""
    ring = M.ring
    total = ring.modulus ** (M.generators * ring.group.order)
    return total // span_basis(ring, M.relations, M.generators).size


def quotient_module(I: IdealFG) -> PresentedModule:
    """R / I."""
    return PresentedModule.cyclic(I.ring, I.generators)


def ann(M: PresentedModule) -> IdealFG:
    """
    Annihilator {r : r e_i in L for every generator e_i}.

    Computed as an iterated intersection of kernels of r -> r e_i modulo L.
    """
    ring = M.ring
    n, g = ring.group.order, M.generators
    if g == 0:
        return IdealFG.unit(ring)
    L_rows = []
    for row in M.relations:
        L_rows.extend(_translates(row, n))
    spanning = [[1 if i == h else 0 for i in range(n)] for h in range(n)]
    for i in range(g):
        images = []
        for s in spanning:
            image = [0] * (g * n)
            image[i * n : (i + 1) * n] = s
            images.append(image)
        coefficients = kernel(images, L_rows, ring.ell, ring.k, g * n)
        spanning = [
            [sum(c * s[t] for c, s in zip(vec, spanning)) % ring.modulus for t in range(n)] for vec in coefficients
        ]
    return IdealFG(ring, tuple(ring.from_vector(s) for s in spanning))


def exact_precision(group: FinAbGroup, ell: int, generators: int, relations: Sequence[Row]) -> int:
    """
    Smallest e with l^e killing the Z_l[G]-module presented by integral relations.

    l^e M = 0 iff l^e M lies in l^(e+1) M (Nakayama), which is decided at level e + 1.

    Raises:
        SizeCapExceeded: If no e below max_precision works (M not finite)
    """
    n = group.order
    for e in range(settings.max_precision):
        ring = FinGroupRing(group, ell, e + 1)
        rows = [tuple(ring.coerce(x) for x in row) for row in relations]
        basis = span_basis(ring, rows, generators)
        scaled = ell**e
        if all(
            basis.contains([scaled if t == i * n else 0 for t in range(generators * n)]) for i in range(generators)
        ):
            return e
    raise SizeCapExceeded(f"module is not killed by l^e for e < {settings.max_precision}")


# Ideals


def _same_ring(I: IdealFG, J: IdealFG) -> None:
    if I.ring != J.ring:
        raise PreconditionError(f"ideals over different rings: {I.ring} vs {J.ring}")


def ideal_eq(I: IdealFG, J: IdealFG) -> bool:
    _same_ring(I, J)
    return I == J


def ideal_contains(I: IdealFG, J: IdealFG) -> bool:
    """J inside I."""
    _same_ring(I, J)
    return I.contains_ideal(J)


def ideal_mul(I: IdealFG, J: IdealFG) -> IdealFG:
    _same_ring(I, J)
    return IdealFG(I.ring, tuple(x * y for x in I.generators for y in J.generators))


def ideal_sum(I: IdealFG, J: IdealFG) -> IdealFG:
    _same_ring(I, J)
    return IdealFG(I.ring, I.generators + J.generators)


def ideal_iota(I: IdealFG) -> IdealFG:
    return IdealFG(I.ring, tuple(x.iota() for x in I.generators))


# Duals


def dual_wedge(M: PresentedModule) -> PresentedModule:
    """
    M^ = Hom_R(M, R) with (g phi)(m) = phi(g m).

    Hom_R(M, R) is the submodule of phi in R^g with sum_j l_j phi_j = 0 for every
    relation l; (Z/l^k)[G] is a symmetric Frobenius ring, so this is the Pontryagin
    dual with the straight action.
    """
    ring = M.ring
    n, g = ring.group.order, M.generators
    width = len(M.relations) * n
    images = []
    for j in range(g):
        for h in range(n):
            vec: list[int] = []
            for row in M.relations:
                vec.extend(row[j].translate(h).coeffs)
            images.append(vec)
    vectors = kernel(images, [], ring.ell, ring.k, width)
    generators = [_unflatten(ring, v, g) for v in vectors]
    return submodule_presentation(ring, g, generators)


def dual_vee(M: PresentedModule) -> PresentedModule:
    """M^v = Hom(M, Q_l/Z_l) with (g phi)(m) = phi(g^-1 m): M^ with iota applied."""
    return dual_wedge(M).map_entries(lambda x: x.iota())


# Twists


def check_twist_character(ring: FinGroupRing, values: Sequence[int]) -> tuple[int, ...]:
    """
    Validate c: G -> (Z/l^k)^x given by its values on the elements.

    Raises:
        PreconditionError: If c is not a homomorphism into the units
    """
    G, N = ring.group, ring.modulus
    values = tuple(v % N for v in values)
    if len(values) != G.order:
        raise PreconditionError(f"twist character needs {G.order} values, got {len(values)}")
    if any(v % ring.ell == 0 for v in values):
        raise PreconditionError("twist character takes a non-unit value")
    for i in range(G.order):
        for j in range(G.order):
            if values[G.mul(i, j)] != values[i] * values[j] % N:
                raise PreconditionError(
                    f"c is not multiplicative: c({G.label(i)}*{G.label(j)}) != c({G.label(i)}) c({G.label(j)})"
                )
    return values


def twist_element(ring: FinGroupRing, x: GroupRingElem, n: int, c: Sequence[int]) -> GroupRingElem:
    """t_n(x): g -> c(g)^n g extended linearly."""
    x = ring.coerce(x)
    return ring.from_vector([a * pow(c[g], n, ring.modulus) for g, a in enumerate(x.coeffs)])


def twist_ideal(I: IdealFG, m: int, c: Sequence[int]) -> IdealFG:
    """t_{-m}(I), the Fitting ideal of M(m) when I = Fit(M)."""
    c = check_twist_character(I.ring, c)
    return IdealFG(I.ring, tuple(twist_element(I.ring, x, -m, c) for x in I.generators))


def twist_module(M: PresentedModule, m: int, c: Sequence[int]) -> PresentedModule:
    """Presentation of M(m): t_{-m} applied entrywise."""
    c = check_twist_character(M.ring, c)
    return M.map_entries(lambda x: twist_element(M.ring, x, -m, c))


# Base change


def base_change_module(M: PresentedModule, k: int) -> PresentedModule:
    """M tensored down to (Z/l^k)[G], k at most the current level."""
    if k > M.ring.k:
        raise PreconditionError(f"cannot base change from level {M.ring.k} up to {k}")
    ring = M.ring.at_level(k)
    return PresentedModule(ring, M.generators, tuple(tuple(x.lift() for x in row) for row in M.relations))


def base_change_ideal(I: IdealFG, k: int) -> IdealFG:
    """Image of I in (Z/l^k)[G]."""
    if k > I.ring.k:
        raise PreconditionError(f"cannot base change from level {I.ring.k} up to {k}")
    ring = I.ring.at_level(k)
    return IdealFG(ring, tuple(x.lift() for x in I.generators))


def augmentation_ring(ring: FinGroupRing) -> FinGroupRing:
    return FinGroupRing(cyclic_group(), ring.ell, ring.k)


def _augment(ring: FinGroupRing, x: GroupRingElem) -> GroupRingElem:
    return GroupRingElem.scalar(ring.group, x.augmentation(), ring.modulus)


def augment_module(M: PresentedModule) -> PresentedModule:
    """M tensored along the augmentation (Z/l^k)[G] -> Z/l^k."""
    target = augmentation_ring(M.ring)
    return PresentedModule(
        target, M.generators, tuple(tuple(_augment(target, x) for x in row) for row in M.relations)
    )


def augment_ideal(I: IdealFG) -> IdealFG:
    target = augmentation_ring(I.ring)
    return IdealFG(target, tuple(_augment(target, x) for x in I.generators))


# Four-term lemma


@dataclass(frozen=True, slots=True)
class FourTermOutcome:
    """Both sides of Fit(A^) Fit(C) = Fit(B) Fit(D) and the module orders."""

    kernel: PresentedModule
    cokernel: PresentedModule
    lhs: IdealFG
    rhs: IdealFG
    orders: tuple[int, int, int, int]  # |A|, |B|, |C|, |D|

    @property
    def orders_match(self) -> bool:
        a, b, c, d = self.orders
        return a * c == b * d

    @property
    def holds(self) -> bool:
        return self.orders_match and self.lhs == self.rhs


def _check_square_nzd(name: str, matrix: Sequence[Sequence[GroupRingElem]]) -> None:
    if not matrix or any(len(row) != len(matrix) for row in matrix):
        raise PreconditionError(f"{name} must be presented by a nonempty square matrix")
    integral = [[x.lift() for x in row] for row in matrix]
    if not is_nonzero_divisor(determinant(integral)):
        raise PreconditionError(f"det of the {name} presentation is a zero-divisor in Z_l[G]")


def four_term_check(
    ring: FinGroupRing,
    b_matrix: Sequence[Sequence[GroupRingElem]],
    c_matrix: Sequence[Sequence[GroupRingElem]],
    phi: Sequence[Sequence[GroupRingElem]],
) -> FourTermOutcome:
    """
    Verify Fit(A^) Fit(C) = Fit(B) Fit(D) for 0 -> A -> B -> C -> D -> 0.

    Args:
        ring: Working ring (Z/l^k)[G]
        b_matrix: Square integral matrix with non-zero-divisor determinant presenting B
        c_matrix: Same for C
        phi: Image in R^{g_C} of each generator of B

    Returns:
        FourTermOutcome: Kernel and cokernel presentations and both sides

    Raises:
        PreconditionError: If a presentation is not square with nzd determinant
        IllDefinedMapError: If phi does not send the relations of B into those of C
    """
    _check_square_nzd("B", b_matrix)
    _check_square_nzd("C", c_matrix)
    B = PresentedModule.from_matrix(ring, b_matrix)
    C = PresentedModule.from_matrix(ring, c_matrix)
    n = ring.group.order
    if len(phi) != B.generators or any(len(row) != C.generators for row in phi):
        raise PreconditionError(f"phi must be a {B.generators} x {C.generators} matrix")
    phi = [tuple(ring.coerce(x) for x in row) for row in phi]

    L_C = span_basis(ring, C.relations, C.generators)
    for relation in B.relations:
        image = [ring.zero() for _ in range(C.generators)]
        for coeff, target in zip(relation, phi):
            image = [a + coeff * b for a, b in zip(image, target)]
        if not L_C.contains(_flatten(image)):
            raise IllDefinedMapError("phi does not send the relations of B into those of C")

    # A = {b : phi(b) in L_C} / L_B
    images = []
    for j in range(B.generators):
        images.extend(_translates(phi[j], n))
    C_rows = []
    for row in C.relations:
        C_rows.extend(_translates(row, n))
    vectors = kernel(images, C_rows, ring.ell, ring.k, C.generators * n)
    A = submodule_presentation(ring, B.generators, [_unflatten(ring, v, B.generators) for v in vectors], B.relations)
    D = PresentedModule(ring, C.generators, C.relations + tuple(phi))

    lhs = ideal_mul(fit(dual_wedge(A)), fit(C))
    rhs = ideal_mul(fit(B), fit(D))
    outcome = FourTermOutcome(
        kernel=A,
        cokernel=D,
        lhs=lhs,
        rhs=rhs,
        orders=(module_order(A), module_order(B), module_order(C), module_order(D)),
    )
    logger.debug(f"four-term over {ring}: |A|,|B|,|C|,|D| = {outcome.orders}, holds={outcome.holds}")
    return outcome
