"""
Equivariant L-functions of abelian extensions of F_q(t).

Theta_{S0,T0}(u) = prod_{v in T0} (1 - sigma_v^-1 (qu)^{d_v}) * prod_{v not in S0} (1 - sigma_v^-1 u^{d_v})^-1
is computed as a truncated Dirichlet series over monic polynomials prime to the
finite places of S0, multiplied by the T0 factor, and checked to stabilize.
"""

import logging
import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from equitheta.config import settings
from equitheta.exceptions import (
    ConsistencyFailure,
    PreconditionError,
    PropertyFailure,
    RootFindingError,
    StabilizationFailure,
)
from equitheta.models.character import Character, all_characters
from equitheta.models.cyclotomic import CyclotomicElem
from equitheta.models.extension import ExtensionKind, ExtensionModel
from equitheta.models.field import PrimePower
from equitheta.models.group import cyclic_group
from equitheta.models.group_ring import EquivPoly, GroupRingElem
from equitheta.models.polynomial import FqPoly, Place, poly_gcd
from equitheta.models.theta import CharacterComponent, LDataRequest, ThetaPoly
from equitheta.services.ffq import is_irreducible, iter_monic_polys, iter_residues, unit_group
from equitheta.services.grpring import char_eval, eval_poly

logger = logging.getLogger(__name__)


# Models


def carlitz_model(q: int, m: FqPoly) -> ExtensionModel:
    """
    The Carlitz cyclotomic extension F_q(t)(Lambda_m) with G = (F_q[t]/m)^x.

    Args:
        q: Field order
        m: Monic modulus of degree >= 1

    Returns:
        ExtensionModel: Ramified at infinity and at the prime divisors of m
    """
    PrimePower.from_order(q)
    units = unit_group(q, m)
    group = cyclic_group(*units.cyclic_orders)
    ramified = {Place.infinity(q)}
    for d in range(1, m.degree + 1):
        for f in iter_monic_polys(q, d):
            if (m % f).is_zero() and is_irreducible(f):
                ramified.add(Place(q, f))
    logger.debug(f"carlitz q={q} m={m}: G={group.orders}, {len(ramified)} ramified places")
    return ExtensionModel(
        kind=ExtensionKind.CARLITZ,
        q=q,
        group=group,
        ramified=frozenset(ramified),
        m=m,
        units=units,
    )


def constant_field_model(q: int, r: int) -> ExtensionModel:
    """The constant field extension F_{q^r}(t), cyclic of order r and unramified."""
    PrimePower.from_order(q)
    if r < 1:
        raise PreconditionError(f"constant field degree r must be >= 1, got {r}")
    return ExtensionModel(
        kind=ExtensionKind.CONSTANT,
        q=q,
        group=cyclic_group(r),
        ramified=frozenset(),
        r=r,
    )


def build_model(kind: ExtensionKind | str, q: int, m: FqPoly | None = None, r: int | None = None) -> ExtensionModel:
    """Dispatch on the model kind."""
    kind = ExtensionKind(kind)
    if kind is ExtensionKind.CARLITZ:
        if m is None:
            raise PreconditionError("a Carlitz model needs the modulus m")
        return carlitz_model(q, m)
    if r is None:
        raise PreconditionError("a constant field model needs the degree r")
    return constant_field_model(q, r)


# Euler product


def _series_modulus(request: LDataRequest) -> FqPoly:
    """lcm of m and the finite places of S0."""
    q = request.model.q
    M = request.model.m if request.model.m is not None else FqPoly.one(q)
    for v in request.finite_s0:
        if not (M % v.poly).is_zero():
            M = M * v.poly
    return M


def dirichlet_series(request: LDataRequest) -> list[GroupRingElem]:
    """
    Coefficients c_0..c_Dmax of sum over monic a prime to S0 of sigma_a^-1 u^deg(a).

    Degrees below deg M (M the lcm of m and the finite S0 places) are enumerated
    directly. From deg M on, every residue class mod M holds exactly
    q^(d - deg M) monic polynomials of degree d, so c_d is a scaled sum over
    the unit residues.

    Returns:
        list[GroupRingElem]: Integer group-ring coefficients, one per degree
    """
    model = request.model
    q, G = model.q, model.group
    finite = [v.poly for v in request.finite_s0]
    M = _series_modulus(request)

    def coprime(a: FqPoly) -> bool:
        return all(not (a % v).is_zero() for v in finite)

    coeffs: list[GroupRingElem] = []
    for d in range(min(request.dmax, M.degree - 1) + 1):
        counts = [0] * G.order
        for a in iter_monic_polys(q, d):
            if coprime(a):
                counts[G.inv(model.artin_class(a, d))] += 1
        coeffs.append(GroupRingElem(G, tuple(counts)))
        logger.debug(f"{model}: enumerated degree {d}, {sum(counts)} monics prime to S0")

    if request.dmax >= M.degree:
        residues = [a for a in iter_residues(q, M.degree) if coprime(a)]
        for d in range(M.degree, request.dmax + 1):
            counts = [0] * G.order
            for a in residues:
                counts[G.inv(model.artin_class(a, d))] += 1
            scale = q ** (d - M.degree)
            coeffs.append(GroupRingElem(G, tuple(c * scale for c in counts)))
    return coeffs


def t_factor(model: ExtensionModel, T0: Iterable[Place]) -> EquivPoly:
    """prod_{v in T0} (1 - sigma_v^-1 (qu)^{d_v}) in Z[G][u]."""
    G = model.group
    result = EquivPoly.one(G)
    for v in T0:
        sigma_inv = G.inv(model.frobenius(v))
        term = EquivPoly.monomial(GroupRingElem.basis(G, sigma_inv, coeff=-(model.q**v.degree)), v.degree)
        result = result * (EquivPoly.one(G) + term)
    return result


def _stabilization_degree(nonzero: Sequence[bool], dmax: int, guard: int, what: str) -> int:
    window = [d for d in range(dmax - guard + 1, dmax + 1) if nonzero[d]]
    if window:
        raise StabilizationFailure(
            f"{what}: coefficient of u^{window[0]} is nonzero inside the guard window "
            f"({dmax - guard}, {dmax}]; raise Dmax",
            degree=window[0],
        )
    return max((d for d, flag in enumerate(nonzero) if flag), default=0)


def _pole_factor(model: ExtensionModel, chi: Character) -> tuple[CyclotomicElem, ...]:
    """Denominator of the chi-component of the unsmoothed series."""
    field_ = chi.field
    if model.kind is ExtensionKind.CARLITZ:
        if chi.is_trivial:
            return (field_.one(), field_.scalar(-model.q))
        return (field_.one(),)
    gbar_inv = model.group.inv(model.group.generator(0)) if model.group.rank else 0
    return (field_.one(), chi.value(gbar_inv) * (-model.q))


def _truncated_product(a: Sequence[CyclotomicElem], b: Sequence[CyclotomicElem], top: int) -> list[CyclotomicElem]:
    field_ = a[0].field
    out = [field_.zero() for _ in range(top + 1)]
    for i, x in enumerate(a[: top + 1]):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if i + j > top:
                break
            out[i + j] = out[i + j] + x * y
    return out


def _trim(values: list[CyclotomicElem]) -> tuple[CyclotomicElem, ...]:
    while values and values[-1].is_zero():
        values.pop()
    return tuple(values)


def theta(request: LDataRequest) -> ThetaPoly:
    """
    Theta_{S0,T0}(u) for the request.

    With T0 nonempty the result is a polynomial in Z[G][u]; with T0 empty it is
    one numerator/denominator pair per character.

    Args:
        request: Validated request

    Returns:
        ThetaPoly: Polynomial or character components, with the stabilization degree

    Raises:
        StabilizationFailure: If a coefficient in (Dmax - guard, Dmax] is nonzero

    Example:
        >>> t = FqPoly.t(3)
        >>> S0 = [Place.infinity(3), Place(3, t)]
        >>> T0 = [Place(3, FqPoly.parse(3, "t+1"))]
        >>> str(theta(LDataRequest.build(carlitz_model(3, t), S0, T0)).poly)
        '1 + (-2 + g)*u'
    """
    model = request.model
    G = model.group
    series = dirichlet_series(request)

    if request.T0:
        product = EquivPoly(G, tuple(series)).multiply(t_factor(model, request.T0), truncate=request.dmax)
        nonzero = [not product.coefficient(d).is_zero() for d in range(request.dmax + 1)]
        degree = _stabilization_degree(nonzero, request.dmax, request.guard, str(model))
        logger.info(f"theta {model} S0={len(request.S0)} T0={len(request.T0)}: degree {degree}")
        return ThetaPoly(request=request, stabilization_degree=degree, poly=product)

    components = []
    degree = 0
    for chi in all_characters(G):
        scalar_series = [chi.evaluate(c) for c in series]
        denominator = _pole_factor(model, chi)
        numerator = _truncated_product(scalar_series, denominator, request.dmax)
        nonzero = [not c.is_zero() for c in numerator]
        degree = max(
            degree,
            _stabilization_degree(nonzero, request.dmax, request.guard, f"{model} {chi.label()}"),
        )
        components.append(
            CharacterComponent(character=chi, numerator=_trim(numerator), denominator=denominator)
        )
    logger.info(f"theta {model} S0={len(request.S0)} T0=empty: {len(components)} components")
    return ThetaPoly(request=request, stabilization_degree=degree, components=tuple(components))


# Special values


def delta_t(model: ExtensionModel, T0: Iterable[Place], n: int) -> GroupRingElem:
    """
    delta_{T0} at s = 1 - n: prod_{v in T0} (1 - sigma_v^-1 q^{n d_v}) in Z[G].

    Raises:
        PreconditionError: If T0 is empty or meets the ramified places
    """
    T0 = tuple(T0)
    if not T0:
        raise PreconditionError("delta_t needs a nonempty T0")
    G = model.group
    result = GroupRingElem.one(G)
    for v in T0:
        sigma_inv = G.inv(model.frobenius(v))
        result = result * (GroupRingElem.one(G) - GroupRingElem.basis(G, sigma_inv, coeff=model.q ** (n * v.degree)))
    return result


def from_character_values(model: ExtensionModel, values: Sequence[CyclotomicElem]) -> GroupRingElem:
    """
    Element x of Q[G] with chi(x) = values[chi], characters indexed like all_characters.

    x_g = (1/|G|) sum_chi values[chi] chi(g^-1).

    Raises:
        ConsistencyFailure: If a coordinate is not rational
    """
    G = model.group
    characters = all_characters(G)
    coeffs = []
    for g in range(G.order):
        total = characters[0].field.zero()
        for chi, value in zip(characters, values):
            total = total + value * chi.value(G.inv(g))
        total = total * Fraction(1, G.order)
        if not total.is_rational():
            raise ConsistencyFailure(f"inverse character transform is irrational at {G.label(g)}: {total}")
        coeffs.append(total.rational_value())
    return GroupRingElem(G, tuple(coeffs))


def _integral_if_possible(x: GroupRingElem) -> GroupRingElem:
    return x.to_integral() if x.is_integral() else x


def theta_special(theta_poly: ThetaPoly, n: int) -> GroupRingElem:
    """
    Theta_{S0,T0}(q^{n-1}) in Q[G] (integral when T0 is nonempty).

    Raises:
        PreconditionError: If n < 2
    """
    if n < 2:
        raise PreconditionError(f"special values need n >= 2, got {n}")
    u0 = theta_poly.model.q ** (n - 1)
    if theta_poly.poly is not None:
        return _integral_if_possible(eval_poly(theta_poly.poly, u0))
    values = [component.evaluate(u0) for component in theta_poly.components]
    return _integral_if_possible(from_character_values(theta_poly.model, values))


def theta_infinite(theta_poly: ThetaPoly) -> dict[tuple[int, int], int]:
    """
    vartheta^(infinity) as a finitely supported element of Z[G x Z].

    The monomial (g, k) stands for g * gamma_q^-k; it must lie in the fiber
    product of G and Gamma over the constant field, i.e. constant_degree(g) = -k mod r~.

    Raises:
        PropertyFailure: If a monomial lies outside the fiber product
    """
    poly = theta_poly.require_poly()
    model = theta_poly.model
    r_tilde = model.r_tilde
    element: dict[tuple[int, int], int] = {}
    for k, coeff in enumerate(poly.coeffs):
        for g, c in enumerate(coeff.coeffs):
            if not c:
                continue
            if (model.constant_degree(g) + k) % r_tilde:
                raise PropertyFailure(
                    f"monomial {model.group.label(g)}*u^{k} restricts inconsistently to the constant field",
                    check="fiber_product",
                )
            element[(g, k)] = c
    return element


def twist_project(theta_poly: ThetaPoly, n: int) -> GroupRingElem:
    """
    pi(t_{1-n}(vartheta^(infinity))).

    t_{1-n} scales the monomial g * gamma_q^-k by c(gamma_q^-k)^(1-n) = q^(k(n-1));
    pi then sends gamma_q to 1.

    Args:
        theta_poly: Polynomial Theta (T0 nonempty)
        n: Twist index; n = 1 is the plain projection

    Returns:
        GroupRingElem: Element of Q[G]
    """
    G = theta_poly.model.group
    q = theta_poly.model.q
    coeffs: list[int | Fraction] = [0] * G.order
    for (g, k), c in theta_infinite(theta_poly).items():
        coeffs[g] += c * Fraction(q) ** (k * (n - 1))
    return _integral_if_possible(GroupRingElem(G, tuple(coeffs)))


# Checks


def euler_factor_check(
    model: ExtensionModel,
    S0: Iterable[Place],
    v: Place,
    T0: Iterable[Place] = (),
    dmax: int | None = None,
) -> bool:
    """
    Theta_{S0 + v, T0}(u) = (1 - sigma_v^-1 u^{d_v}) * Theta_{S0,T0}(u).

    Enlarging S0 by v drops the factor (1 - sigma_v^-1 u^{d_v})^-1 from the Euler
    product. Both sides are computed by independent summations; for T0 empty the
    comparison is made on the character numerators.

    Raises:
        PreconditionError: If v is infinite, ramified, or already in S0 or T0
    """
    S0, T0 = tuple(S0), tuple(T0)
    if v.is_infinite or v in S0 or v in T0:
        raise PreconditionError(f"euler_factor_check needs a finite place outside S0 and T0, got {v}")
    small = LDataRequest.build(model, S0, T0, dmax)
    large = LDataRequest.build(model, S0 + (v,), T0, None if dmax is None else dmax + v.degree)
    G = model.group
    factor = EquivPoly.one(G) - EquivPoly.monomial(GroupRingElem.basis(G, G.inv(model.frobenius(v))), v.degree)

    theta_small, theta_large = theta(small), theta(large)
    if T0:
        holds = theta_large.poly == factor * theta_small.poly
    else:
        holds = True
        for c_small, c_large in zip(theta_small.components, theta_large.components):
            chi = c_small.character
            local = [chi.evaluate(c) for c in factor.coeffs]
            top = len(local) + len(c_small.numerator)
            expected = _trim(_truncated_product(list(c_small.numerator) or [chi.field.zero()], local, top))
            if expected != c_large.numerator:
                holds = False
                break
    logger.debug(f"euler factor at {v} for {model}: {'ok' if holds else 'MISMATCH'}")
    return holds


def weil_bound_holds(moduli: Sequence[float], q: int, tolerance: float | None = None) -> bool:
    """Every modulus is within tolerance of 1 or sqrt(q)."""
    tolerance = settings.weil_tolerance if tolerance is None else tolerance
    targets = (1.0, math.sqrt(q))
    return all(any(abs(x - t) <= tolerance for t in targets) for x in moduli)


def weil_check(
    model: ExtensionModel,
    S0: Iterable[Place],
    chi: Character,
    dmax: int | None = None,
) -> list[float]:
    """
    Moduli of the inverse roots of the L-polynomial L_{S0}(chi, u).

    Args:
        model: Extension model
        S0: Places removed from the Euler product
        chi: Nontrivial character of G
        dmax: Truncation degree (default bound when None)

    Returns:
        list[float]: Sorted moduli (empty for a constant L-polynomial)

    Raises:
        PreconditionError: If chi is trivial
        RootFindingError: If the numeric roots are not finite
    """
    if chi.is_trivial:
        raise PreconditionError("weil_check needs a nontrivial character (the trivial one has a pole)")
    result = theta(LDataRequest.build(model, S0, (), dmax))
    component = next(c for c in result.components if c.character == chi)
    coeffs = [c.to_complex() for c in component.numerator]
    if len(coeffs) <= 1:
        return []
    # Inverse roots of sum a_k u^k are the roots of the reversed polynomial
    roots = np.roots(np.array(coeffs, dtype=complex))
    if not np.all(np.isfinite(roots)) or len(roots) != len(coeffs) - 1:
        raise RootFindingError(f"root finding failed for {chi.label()} on {model}: {roots}")
    moduli = sorted(float(abs(z)) for z in roots)
    logger.debug(f"weil {model} {chi.label()}: moduli {moduli}")
    return moduli


def unit_mod_p_report(theta_poly: ThetaPoly, n: int, kmax: int) -> dict[str, bool]:
    """
    Parts of the p-adic unit check for Theta_{S0,T0}(q^{n-1}).

    Returns:
        dict[str, bool]: "integral_form" (constant term 1, integer coefficients),
        "congruent_to_one" (x - 1 in p(Z/p^k)[G] for k <= kmax), "inverse_exists"
        (sum_{i<k} (1-x)^i inverts x modulo p^k)
    """
    poly = theta_poly.require_poly()
    if n < 2:
        raise PreconditionError(f"unit_mod_p_check needs n >= 2, got {n}")
    model = theta_poly.model
    G = model.group
    p = model.characteristic

    integral_form = poly.coefficient(0) == GroupRingElem.one(G) and all(c.is_integral() for c in poly.coeffs)
    x = theta_special(theta_poly, n)
    congruent = x.is_integral()
    invertible = x.is_integral()
    if x.is_integral():
        for k in range(1, kmax + 1):
            modulus = p**k
            xk = x.reduce(modulus)
            one = GroupRingElem.one(G, modulus)
            defect = one - xk
            if any(c % p for c in defect.coeffs):
                congruent = False
            inverse = GroupRingElem.zero(G, modulus)
            power = one
            for _ in range(k):
                inverse = inverse + power
                power = power * defect
            if xk * inverse != one:
                invertible = False
    report = {
        "integral_form": integral_form,
        "congruent_to_one": congruent,
        "inverse_exists": invertible,
    }
    failed = [name for name, ok in report.items() if not ok]
    if failed:
        logger.error(f"unit_mod_p_check n={n} on {model}: failed {failed}")
    return report


def unit_mod_p_check(theta_poly: ThetaPoly, n: int, kmax: int) -> bool:
    """Theta_{S0,T0}(q^{n-1}) lies in 1 + p Z_p[G] with an explicit inverse mod p^kmax."""
    return all(unit_mod_p_report(theta_poly, n, kmax).values())


def t0_independence_check(
    model: ExtensionModel,
    S0: Iterable[Place],
    T0a: Iterable[Place],
    T0b: Iterable[Place],
    n: int,
    dmax: int | None = None,
) -> bool:
    """delta_{T0b}(n) * Theta_{S0,T0a}(q^{n-1}) = delta_{T0a}(n) * Theta_{S0,T0b}(q^{n-1})."""
    S0, T0a, T0b = tuple(S0), tuple(T0a), tuple(T0b)
    if not T0a or not T0b:
        raise PreconditionError("t0_independence_check needs two nonempty T0 sets")
    value_a = theta_special(theta(LDataRequest.build(model, S0, T0a, dmax)), n)
    value_b = theta_special(theta(LDataRequest.build(model, S0, T0b, dmax)), n)
    holds = delta_t(model, T0b, n) * value_a == delta_t(model, T0a, n) * value_b
    logger.debug(f"T0 independence n={n} on {model}: {holds}")
    return holds


def summed_character_series(request: LDataRequest, chi: Character, degree: int) -> list[CyclotomicElem]:
    """
    chi-image of Theta_{S0,T0}(u) up to u^degree by direct scalar summation.

    Every monic polynomial of each degree is enumerated (no residue shortcut) and
    chi(sigma_a)^-1 accumulated, then the chi-image of the T0 factor is applied.
    """
    model = request.model
    finite = [v.poly for v in request.finite_s0]
    field_ = chi.field
    series = []
    for d in range(degree + 1):
        counts: dict[int, int] = {}
        for a in iter_monic_polys(model.q, d):
            if all(not (a % v).is_zero() for v in finite):
                e = chi.value_exponent(model.group.inv(model.artin_class(a, d)))
                counts[e] = counts.get(e, 0) + 1
        series.append(field_.from_exponent_counts(counts))
    t_coeffs = [chi.evaluate(c) for c in t_factor(model, request.T0).coeffs]
    return _truncated_product(series, t_coeffs, degree)


def character_compatibility_check(theta_poly: ThetaPoly, degree: int | None = None) -> bool:
    """
    char_eval(Theta, chi) agrees with the directly summed series for every chi.

    Args:
        theta_poly: Polynomial Theta
        degree: Highest degree compared (Dmax by default)
    """
    poly = theta_poly.require_poly()
    request = theta_poly.request
    degree = request.dmax if degree is None else degree
    for chi in all_characters(theta_poly.model.group):
        transformed = char_eval(poly, chi)
        summed = summed_character_series(request, chi, degree)
        for d in range(degree + 1):
            ours = transformed[d] if d < len(transformed) else chi.field.zero()
            if ours != summed[d]:
                logger.error(f"character {chi.label()} disagrees at u^{d} on {theta_poly.model}")
                return False
    return True


def frobenius_multiplicativity_check(model: ExtensionModel, max_degree: int = 3) -> bool:
    """
    sigma_{ab} = sigma_a sigma_b for coprime monic pairs, and sigma_v agrees with
    the class-group law at every place of degree <= max_degree.
    """
    q, G = model.q, model.group
    while max_degree > 1 and sum(q**d for d in range(max_degree + 1)) > 400:
        max_degree -= 1
    modulus = model.m if model.m is not None else FqPoly.one(q)
    one = FqPoly.one(q)

    monics = []
    for d in range(max_degree + 1):
        for a in iter_monic_polys(q, d):
            if model.kind is ExtensionKind.CONSTANT or _gcd_is_one(a, modulus, one):
                monics.append(a)

    for a in monics:
        for b in monics:
            if not _gcd_is_one(a, b, one):
                continue
            product = model.artin_class(a * b, a.degree + b.degree)
            if product != G.mul(model.artin_class(a, a.degree), model.artin_class(b, b.degree)):
                logger.error(f"sigma({a}*{b}) != sigma({a})*sigma({b}) on {model}")
                return False

    for a in monics:
        if a.degree == 0 or not is_irreducible(a):
            continue
        place = Place(q, a)
        if place in model.ramified:
            continue
        if model.frobenius(place) != model.artin_class(a, a.degree):
            logger.error(f"Frobenius at {place} disagrees with the class-group law on {model}")
            return False
    return True


def _gcd_is_one(a: FqPoly, b: FqPoly, one: FqPoly) -> bool:
    return poly_gcd(a, b) == one
