"""Structural maps on group rings: involution, evaluation, characters, decomposition."""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime, n_order

from equitheta.exceptions import PreconditionError
from equitheta.models.character import Character, all_characters
from equitheta.models.cyclotomic import CyclotomicElem
from equitheta.models.group import FinAbGroup
from equitheta.models.group_ring import EquivPoly, GroupRingElem

logger = logging.getLogger(__name__)


def iota(x: GroupRingElem) -> GroupRingElem:
    """The ring involution induced by g -> g^-1."""
    return x.iota()


def augmentation(x: GroupRingElem) -> int | Fraction:
    """Sum of the coefficients, the image under G -> 1."""
    return x.augmentation()


def eval_poly(f: EquivPoly, u0: int | Fraction) -> GroupRingElem:
    """
    Evaluate a polynomial over the group ring at a rational point.

    Args:
        f: Polynomial in u with group-ring coefficients
        u0: Rational value substituted for u

    Returns:
        GroupRingElem: Exact element of Q[G]
    """
    if f.modulus is not None:
        raise PreconditionError("eval_poly expects integer or rational coefficients")
    return f.evaluate(Fraction(u0))


def char_eval(f: EquivPoly, chi: Character) -> list[CyclotomicElem]:
    """
    Apply chi coefficientwise: the chi-component of f as a polynomial over Q(zeta_N).

    Returns:
        list[CyclotomicElem]: Coefficients low-to-high, trailing zeros removed
    """
    if f.group != chi.group:
        raise PreconditionError("polynomial and character live on different groups")
    values = [chi.evaluate(c) for c in f.coeffs]
    while values and values[-1].is_zero():
        values.pop()
    return values


def is_nonzero_divisor(x: GroupRingElem) -> bool:
    """
    Whether an integral x is a non-zero-divisor in Z_l[G] (any l).

    x is a non-zero-divisor exactly when no character of G kills it; the values
    chi(x) lie in Z[zeta_N], so vanishing does not depend on the embedding.
    """
    lifted = x.lift()
    return all(not chi.evaluate(lifted).is_zero() for chi in all_characters(x.group))


@dataclass(frozen=True, slots=True)
class DecompositionCensus:
    """
    Splitting G = Delta x G' (G' the l-Sylow) and the l-adic classes of characters of Delta.

    `classes` holds orbits of Delta-character exponent vectors under chi -> chi^l;
    each orbit is one local factor Z_l[chi][G'] of Z_l[G] of rank len(orbit) * |G'|.
    """

    group: FinAbGroup
    ell: int
    delta_orders: tuple[int, ...]
    sylow_orders: tuple[int, ...]
    classes: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def delta_order(self) -> int:
        return math.prod(self.delta_orders)

    @property
    def sylow_order(self) -> int:
        return math.prod(self.sylow_orders)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(orbit) for orbit in self.classes)

    @property
    def rank_total(self) -> int:
        return sum(self.degrees) * self.sylow_order

    @property
    def consistent(self) -> bool:
        return self.rank_total == self.group.order

    @property
    def residue_degree(self) -> int:
        """f with all character values of Delta in GF(l^f)."""
        exponent = math.lcm(1, *self.delta_orders)
        return 1 if exponent == 1 else int(n_order(self.ell, exponent))

    def delta_embedding(self) -> list[tuple[tuple[int, ...], int]]:
        """(Delta coordinates y, index in G) for every element of Delta."""
        pairs = []
        for y in itertools.product(*(range(m) for m in self.delta_orders)):
            exponents = tuple(
                yi * (n // m) for yi, n, m in zip(y, self.group.orders, self.delta_orders)
            )
            pairs.append((y, self.group.index(exponents)))
        return pairs


def decomposition_census(G: FinAbGroup, ell: int) -> DecompositionCensus:
    """
    Census of the decomposition Z_l[G] = sum over classes of Z_l[chi][G'].

    Args:
        G: Finite abelian group
        ell: Prime

    Returns:
        DecompositionCensus: Delta and G' orders, character classes, rank check
    """
    if not isprime(ell):
        raise PreconditionError(f"l={ell} is not prime")
    delta_orders = []
    sylow_orders = []
    for n in G.orders:
        s = 1
        while n % (s * ell) == 0:
            s *= ell
        sylow_orders.append(s)
        delta_orders.append(n // s)

    seen: set[tuple[int, ...]] = set()
    classes = []
    for b in itertools.product(*(range(m) for m in delta_orders)):
        if b in seen:
            continue
        orbit = []
        current = b
        while current not in orbit:
            orbit.append(current)
            current = tuple((ell * c) % m for c, m in zip(current, delta_orders))
        seen.update(orbit)
        classes.append(tuple(orbit))

    census = DecompositionCensus(
        group=G,
        ell=ell,
        delta_orders=tuple(delta_orders),
        sylow_orders=tuple(sylow_orders),
        classes=tuple(classes),
    )
    logger.debug(
        f"census G={G.orders} l={ell}: Delta={census.delta_orders} G'={census.sylow_orders} "
        f"degrees={census.degrees}"
    )
    return census
