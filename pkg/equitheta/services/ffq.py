"""Enumeration and structure services over F_q[t]."""

import itertools
import logging
from typing import Iterator, Sequence

from sympy import primefactors

from equitheta.config import settings
from equitheta.exceptions import EnumerationCapExceeded, PreconditionError
from equitheta.models.field import PrimePower, get_field
from equitheta.models.polynomial import FqPoly, Place, ResidueUnitGroup, poly_gcd

logger = logging.getLogger(__name__)


def _check_cap(q: int, d: int, what: str) -> None:
    if d < 0:
        raise PreconditionError(f"{what}: degree {d} is negative")
    if q**d > settings.enum_cap:
        raise EnumerationCapExceeded(
            f"{what}: q^d = {q}^{d} exceeds enum_cap={settings.enum_cap}"
        )


def iter_residues(q: int, d: int) -> Iterator[FqPoly]:
    """
    Yield every polynomial of degree < d, constant coefficient varying fastest.

    Args:
        q: Field order
        d: Bound on the degree (q^d items)
    """
    _check_cap(q, d, "residue enumeration")
    for combo in itertools.product(range(q), repeat=d):
        yield FqPoly(q, tuple(reversed(combo)))


def iter_monic_polys(q: int, d: int) -> Iterator[FqPoly]:
    """Yield the q^d monic polynomials of degree d in a fixed order."""
    _check_cap(q, d, "monic enumeration")
    for combo in itertools.product(range(q), repeat=d):
        yield FqPoly(q, tuple(reversed(combo)) + (1,))


def monic_polys(q: PrimePower | int, d: int) -> list[FqPoly]:
    """
    All monic polynomials of degree d over F_q.

    Args:
        q: Field order
        d: Degree, d >= 0

    Returns:
        list[FqPoly]: Exactly q^d polynomials, deterministic order

    Raises:
        PreconditionError: If d < 0
        EnumerationCapExceeded: If q^d exceeds settings.enum_cap
    """
    order = q.q if isinstance(q, PrimePower) else q
    get_field(order)
    return list(iter_monic_polys(order, d))


def is_irreducible(f: FqPoly) -> bool:
    """
    Rabin's test: f of degree d is irreducible iff t^(q^d) = t mod f and
    gcd(t^(q^(d/r)) - t, f) = 1 for every prime r dividing d.

    Raises:
        PreconditionError: If f is not monic or is constant
    """
    if not f.is_monic() or f.degree < 1:
        raise PreconditionError(f"is_irreducible expects a monic non-constant polynomial, got {f}")
    d = f.degree
    if d == 1:
        return True
    q = f.q
    t = FqPoly.t(q)
    one = FqPoly.one(q)

    # frobenius_powers[j] = t^(q^j) mod f
    frobenius_powers = [t % f]
    for _ in range(d):
        frobenius_powers.append(frobenius_powers[-1].pow_mod(q, f))

    if frobenius_powers[d] != t % f:
        return False
    for r in primefactors(d):
        if poly_gcd(frobenius_powers[d // r] - t, f) != one:
            return False
    return True


def finite_place(poly: FqPoly) -> Place:
    """
    Wrap a monic irreducible polynomial as a finite place.

    Raises:
        PreconditionError: If poly is not monic irreducible
    """
    if poly.degree < 1 or not poly.is_monic():
        raise PreconditionError(f"place {poly} must be monic of degree >= 1")
    if not is_irreducible(poly):
        raise PreconditionError(f"place {poly} is not irreducible over F_{poly.q}")
    return Place(poly.q, poly)


def parse_place(q: int, spec: str | Sequence[int]) -> Place:
    """
    Parse a place from "inf", a coefficient array, or polynomial notation.

    Args:
        q: Field order
        spec: "inf" / "oo", [c0, c1, ...] low-to-high, or text like "t^2+t+1"

    Returns:
        Place: Validated place
    """
    if isinstance(spec, str):
        text = spec.strip().lower()
        if text in {"inf", "oo", "infinity", "∞"}:
            return Place.infinity(q)
        return finite_place(FqPoly.parse(q, text))
    return finite_place(FqPoly.from_json(q, spec))


def places_up_to(q: PrimePower | int, D: int) -> list[Place]:
    """
    Infinity followed by every finite place of degree <= D.

    Args:
        q: Field order
        D: Maximal degree, D >= 1

    Returns:
        list[Place]: Sorted by degree, then by enumeration order
    """
    order = q.q if isinstance(q, PrimePower) else q
    if D < 1:
        raise PreconditionError(f"places_up_to expects D >= 1, got {D}")
    places = [Place.infinity(order)]
    for d in range(1, D + 1):
        found = [Place(order, f) for f in iter_monic_polys(order, d) if is_irreducible(f)]
        logger.debug(f"q={order}: {len(found)} places of degree {d}")
        places.extend(found)
    return places


def iter_places(q: PrimePower | int) -> Iterator[Place]:
    """
    Yield the finite places by increasing degree, in enumeration order within a degree.

    The sequence is unbounded; it stops with EnumerationCapExceeded once the
    monic polynomials of the next degree exceed `enum_cap`.
    """
    order = q.q if isinstance(q, PrimePower) else q
    for d in itertools.count(1):
        for f in iter_monic_polys(order, d):
            if is_irreducible(f):
                yield Place(order, f)


def unit_group(q: PrimePower | int, m: FqPoly) -> ResidueUnitGroup:
    """
    Structure of (F_q[t]/m)^x by brute force.

    Cyclic factors are found greedily: at each step the element of largest order
    modulo the subgroup built so far, among those meeting that subgroup trivially,
    is added as a new generator.

    Args:
        q: Field order
        m: Monic modulus of degree >= 1

    Returns:
        ResidueUnitGroup: Units, generators with orders, and exponent coordinates

    Raises:
        PreconditionError: If m is not monic or is constant
    """
    order = q.q if isinstance(q, PrimePower) else q
    if m.q != order:
        raise PreconditionError(f"modulus {m} is not over F_{order}")
    if m.degree < 1 or not m.is_monic():
        raise PreconditionError(f"unit_group expects a monic non-constant modulus, got {m}")

    one = FqPoly.one(order)
    units = [r for r in iter_residues(order, m.degree) if poly_gcd(r, m) == one]

    def mul(a: FqPoly, b: FqPoly) -> FqPoly:
        return (a * b) % m

    members: dict[tuple[int, ...], FqPoly] = {one.coeffs: one}
    exponents: dict[tuple[int, ...], tuple[int, ...]] = {one.coeffs: ()}
    structure: list[tuple[FqPoly, int]] = []

    while len(members) < len(units):
        best: tuple[FqPoly, int] | None = None
        for x in units:
            if x.coeffs in members:
                continue
            j, power = 1, x
            while power.coeffs not in members:
                power = mul(power, x)
                j += 1
            if power != one:
                continue
            if best is None or j > best[1]:
                best = (x, j)
        if best is None:
            raise PreconditionError(f"no cyclic complement found in (F_{order}[t]/{m})^x")
        generator, gen_order = best

        grown_members: dict[tuple[int, ...], FqPoly] = {}
        grown_exponents: dict[tuple[int, ...], tuple[int, ...]] = {}
        power = one
        for i in range(gen_order):
            for key, h in members.items():
                product = mul(h, power)
                grown_members[product.coeffs] = product
                grown_exponents[product.coeffs] = exponents[key] + (i,)
            power = mul(power, generator)
        members, exponents = grown_members, grown_exponents
        structure.append((generator, gen_order))

    # Closure check: the generated subgroup is exactly the unit set
    if set(members) != {u.coeffs for u in units}:
        raise PreconditionError(f"generators of (F_{order}[t]/{m})^x do not close up")

    logger.debug(
        f"unit_group q={order} m={m}: order {len(units)}, "
        f"cyclic orders {[o for _, o in structure]}"
    )
    return ResidueUnitGroup(
        modulus=m,
        elements=tuple(units),
        structure=tuple(structure),
        exponent_of=exponents,
    )
