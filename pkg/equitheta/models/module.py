"""Finite group rings (Z/l^k)[G], presented modules, ideals and fractional ideals."""

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from sympy import isprime

from equitheta.config import settings
from equitheta.exceptions import ConsistencyFailure, PreconditionError
from equitheta.linalg import HowellBasis, howell_form, valuation
from equitheta.models.group import FinAbGroup
from equitheta.models.group_ring import GroupRingElem, Scalar


@dataclass(frozen=True, slots=True)
class FinGroupRing:
    """(Z/l^k)[G] for a prime l."""

    group: FinAbGroup
    ell: int
    k: int

    def __post_init__(self) -> None:
        if not isprime(self.ell):
            raise PreconditionError(f"l={self.ell} is not prime")
        if not 1 <= self.k <= settings.max_precision:
            raise PreconditionError(f"k={self.k} outside [1, {settings.max_precision}]")

    @property
    def modulus(self) -> int:
        return self.ell**self.k

    @property
    def size(self) -> int:
        return self.modulus**self.group.order

    def at_level(self, k: int) -> "FinGroupRing":
        return FinGroupRing(self.group, self.ell, k)

    def coerce(self, x: GroupRingElem | Scalar) -> GroupRingElem:
        """Image of an integral (or l-integral rational) element or scalar."""
        if not isinstance(x, GroupRingElem):
            return GroupRingElem.scalar(self.group, x, self.modulus)
        if x.group != self.group:
            raise PreconditionError(f"element of Z[{x.group.orders}] used in a ring over {self.group.orders}")
        if x.modulus is not None and x.modulus % self.modulus:
            raise PreconditionError(f"cannot reduce modulo {self.modulus} from modulo {x.modulus}")
        return GroupRingElem(self.group, x.coeffs, self.modulus)

    def elem(self, terms: Mapping[int | str, Scalar]) -> GroupRingElem:
        return GroupRingElem.from_terms(self.group, terms, self.modulus)

    def zero(self) -> GroupRingElem:
        return GroupRingElem.zero(self.group, self.modulus)

    def one(self) -> GroupRingElem:
        return GroupRingElem.one(self.group, self.modulus)

    def basis(self, g: int, coeff: Scalar = 1) -> GroupRingElem:
        return GroupRingElem.basis(self.group, g, self.modulus, coeff)

    def from_vector(self, vector: Sequence[int]) -> GroupRingElem:
        return GroupRingElem(self.group, tuple(vector), self.modulus)

    def __str__(self) -> str:
        return f"(Z/{self.ell}^{self.k})[{'x'.join(f'C{n}' for n in self.group.orders) or '1'}]"


Row = tuple[GroupRingElem, ...]


@dataclass(frozen=True, slots=True)
class PresentedModule:
    """
    Cokernel of the relation rows: R^g / span_R(relations).

    Entries are reduced into the ring and zero rows are pruned.
    """

    ring: FinGroupRing
    generators: int
    relations: tuple[Row, ...] = ()

    def __post_init__(self) -> None:
        if self.generators < 0:
            raise PreconditionError(f"generator count must be >= 0, got {self.generators}")
        rows = []
        for row in self.relations:
            if len(row) != self.generators:
                raise PreconditionError(f"relation of length {len(row)} for {self.generators} generators")
            reduced = tuple(self.ring.coerce(x) for x in row)
            if any(not x.is_zero() for x in reduced):
                rows.append(reduced)
        object.__setattr__(self, "relations", tuple(rows))

    @classmethod
    def cyclic(cls, ring: FinGroupRing, relations: Iterable[GroupRingElem | Scalar]) -> "PresentedModule":
        """R / <relations>."""
        return cls(ring, 1, tuple((ring.coerce(x),) for x in relations))

    @classmethod
    def free(cls, ring: FinGroupRing, rank: int) -> "PresentedModule":
        return cls(ring, rank, ())

    @classmethod
    def from_matrix(cls, ring: FinGroupRing, rows: Sequence[Sequence[GroupRingElem | Scalar]]) -> "PresentedModule":
        if not rows:
            raise PreconditionError("from_matrix needs at least one row; use free() for no relations")
        return cls(ring, len(rows[0]), tuple(tuple(ring.coerce(x) for x in row) for row in rows))

    @property
    def group(self) -> FinAbGroup:
        return self.ring.group

    def direct_sum(self, other: "PresentedModule") -> "PresentedModule":
        """Block-diagonal presentation of self + other."""
        if other.ring != self.ring:
            raise PreconditionError("direct sum of modules over different rings")
        zero = self.ring.zero()
        rows = [row + (zero,) * other.generators for row in self.relations]
        rows += [(zero,) * self.generators + row for row in other.relations]
        return PresentedModule(self.ring, self.generators + other.generators, tuple(rows))

    def map_entries(self, func) -> "PresentedModule":
        return PresentedModule(self.ring, self.generators, tuple(tuple(func(x) for x in row) for row in self.relations))

    def to_json(self) -> dict:
        return {
            "ring": str(self.ring),
            "generators": self.generators,
            "relations": [[x.to_terms() for x in row] for row in self.relations],
        }


def _ideal_rows(ring: FinGroupRing, generators: Iterable[GroupRingElem]) -> list[tuple[int, ...]]:
    rows = []
    for x in generators:
        for h in range(ring.group.order):
            rows.append(x.translate(h).coeffs)
    return rows


@dataclass(frozen=True, slots=True, eq=False)
class IdealFG:
    """
    Finitely generated ideal of (Z/l^k)[G] with its canonical Howell basis.

    The basis is taken over all G-translates of the generators, so equal ideals
    have identical `basis.rows` whatever generators they were given by.
    """

    ring: FinGroupRing
    generators: tuple[GroupRingElem, ...]
    basis: HowellBasis = field(init=False, repr=False)

    def __post_init__(self) -> None:
        gens = tuple(self.ring.coerce(x) for x in self.generators)
        object.__setattr__(self, "generators", gens)
        basis = howell_form(_ideal_rows(self.ring, gens), self.ring.ell, self.ring.k, self.ring.group.order)
        object.__setattr__(self, "basis", basis)

    @classmethod
    def zero(cls, ring: FinGroupRing) -> "IdealFG":
        return cls(ring, ())

    @classmethod
    def unit(cls, ring: FinGroupRing) -> "IdealFG":
        return cls(ring, (ring.one(),))

    @classmethod
    def principal(cls, ring: FinGroupRing, x: GroupRingElem | Scalar) -> "IdealFG":
        return cls(ring, (ring.coerce(x),))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IdealFG):
            return NotImplemented
        return self.ring == other.ring and self.basis.rows == other.basis.rows

    def __hash__(self) -> int:
        return hash((self.ring, self.basis.rows))

    def contains(self, x: GroupRingElem | Scalar) -> bool:
        return self.basis.contains(self.ring.coerce(x).coeffs)

    def contains_ideal(self, other: "IdealFG") -> bool:
        if other.ring != self.ring:
            raise PreconditionError("ideals over different rings")
        return self.basis.contains_all(other.basis)

    def is_zero(self) -> bool:
        return not self.basis.rows

    def is_unit(self) -> bool:
        return self.contains(1)

    @property
    def size(self) -> int:
        """Number of elements of the ideal."""
        return self.basis.size

    def to_json(self) -> dict:
        return {
            "ring": str(self.ring),
            "basis": [self.ring.from_vector(row).to_terms() for row in self.basis.rows],
        }

    def __str__(self) -> str:
        if self.is_zero():
            return "<0>"
        if self.is_unit():
            return "<1>"
        return "<" + ", ".join(str(x) for x in self.generators) + ">"


def _split_denominator(D: int, ell: int) -> tuple[int, int]:
    if D == 0:
        raise PreconditionError("fractional ideal with zero denominator")
    e = 0
    while D % ell == 0:
        D //= ell
        e += 1
    return e, D


@dataclass(frozen=True, slots=True, eq=False)
class FracIdeal:
    """
    The fractional ideal J / D of Z_l[G], known modulo l^k.

    `numerator` is J reduced at level k + v_l(D): enough to decide integrality
    (J inside l^v_l(D)) and to recover J / D modulo l^k.
    """

    numerator: IdealFG
    denominator: int
    k: int

    def __post_init__(self) -> None:
        e, _ = _split_denominator(self.denominator, self.numerator.ring.ell)
        if self.numerator.ring.k != self.k + e:
            raise PreconditionError(
                f"numerator must live at level k + v_l(D) = {self.k + e}, got {self.numerator.ring.k}"
            )

    @property
    def ell(self) -> int:
        return self.numerator.ring.ell

    @property
    def ell_exponent(self) -> int:
        return _split_denominator(self.denominator, self.ell)[0]

    @property
    def unit_part(self) -> int:
        return _split_denominator(self.denominator, self.ell)[1]

    @property
    def target_ring(self) -> FinGroupRing:
        return self.numerator.ring.at_level(self.k)

    def is_integral(self) -> bool:
        """J lies in l^e Z_l[G], e = v_l(D)."""
        e = self.ell_exponent
        return all(valuation(c, self.ell, self.numerator.ring.k) >= e for row in self.numerator.basis.rows for c in row)

    def integral_form(self) -> IdealFG:
        """
        J / D as an ideal of (Z/l^k)[G].

        Raises:
            ConsistencyFailure: If J / D is not integral
        """
        if not self.is_integral():
            raise ConsistencyFailure(f"fractional ideal with denominator {self.denominator} is not integral")
        e = self.ell_exponent
        ring = self.target_ring
        unit_inverse = pow(self.unit_part, -1, ring.modulus)
        generators = [
            ring.from_vector([(c // self.ell**e) * unit_inverse for c in row]) for row in self.numerator.basis.rows
        ]
        return IdealFG(ring, tuple(generators))

    def _scaled_numerator(self, exponent: int, factor: int) -> IdealFG:
        """l^(exponent - e) * factor * J at level k + exponent."""
        ring = self.numerator.ring.at_level(self.k + exponent)
        shift = self.ell ** (exponent - self.ell_exponent) * factor
        generators = [ring.from_vector([c * shift for c in row]) for row in self.numerator.basis.rows]
        return IdealFG(ring, tuple(generators))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FracIdeal):
            return NotImplemented
        if self.k != other.k or self.ell != other.ell or self.numerator.ring.group != other.numerator.ring.group:
            return False
        E = max(self.ell_exponent, other.ell_exponent)
        return self._scaled_numerator(E, other.unit_part) == other._scaled_numerator(E, self.unit_part)

    def __hash__(self) -> int:
        return hash((self.k, self.ell, self.numerator.ring.group))

    def to_json(self) -> dict:
        body = {"denominator": self.denominator, "k": self.k, "integral": self.is_integral()}
        if body["integral"]:
            body["ideal"] = self.integral_form().to_json()
        else:
            body["numerator"] = self.numerator.to_json()
        return body
