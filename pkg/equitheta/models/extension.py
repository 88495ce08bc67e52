"""Abelian extensions of F_q(t) with explicit Frobenius data."""

from dataclasses import dataclass, replace
from enum import Enum

from equitheta.exceptions import PreconditionError
from equitheta.models.field import PrimePower
from equitheta.models.group import FinAbGroup
from equitheta.models.polynomial import FqPoly, Place, ResidueUnitGroup


class ExtensionKind(str, Enum):
    """Supported extension families."""

    CARLITZ = "carlitz"
    CONSTANT = "constant"


@dataclass(frozen=True, slots=True)
class ExtensionModel:
    """
    A concrete abelian extension K/F_q(t) with Galois group `group`.

    Carlitz cyclotomic models have G = (F_q[t]/m)^x, sigma_v = v mod m, and are
    ramified at the divisors of m and at infinity. Constant field models have
    G = Gal(F_{q^r}/F_q) = <gbar> of order r, sigma_v = gbar^(d_v), and are
    unramified everywhere.

    Built by `services.lfun.carlitz_model` / `services.lfun.constant_field_model`.
    """

    kind: ExtensionKind
    q: int
    group: FinAbGroup
    ramified: frozenset[Place]
    m: FqPoly | None = None
    r: int = 1
    units: ResidueUnitGroup | None = None
    corrupted: bool = False

    @property
    def r_tilde(self) -> int:
        """Degree of the constant field of K over F_q."""
        return self.r if self.kind is ExtensionKind.CONSTANT else 1

    @property
    def alpha(self) -> int:
        """gamma = gamma_q^alpha topologically generates Gamma, and c_l(gamma) = q^alpha."""
        return self.r_tilde

    @property
    def characteristic(self) -> int:
        return PrimePower.from_order(self.q).p

    @property
    def conductor_degree(self) -> int:
        return self.m.degree if self.m is not None else 0

    def _gbar_power(self, d: int) -> int:
        if self.group.rank == 0:
            return 0
        return self.group.index((d,))

    def artin_class(self, residue: FqPoly, degree: int) -> int:
        """
        Index in G of sigma_a for a monic a of the given degree with a = residue mod m.

        For Carlitz models only the residue matters; for constant field models only
        the degree does.
        """
        if self.kind is ExtensionKind.CARLITZ:
            reduced = residue % self.m
            try:
                return self.group.index(self.units.exponents(reduced))
            except KeyError:
                raise PreconditionError(f"{residue} is not a unit modulo {self.m}") from None
        return self._gbar_power(degree)

    def frobenius(self, place: Place) -> int:
        """
        Index in G of the Frobenius sigma_v at an unramified place.

        Raises:
            PreconditionError: If v is ramified or lives over another field
        """
        if place.q != self.q:
            raise PreconditionError(f"place {place} is not a place of F_{self.q}(t)")
        if place in self.ramified:
            raise PreconditionError(f"Frobenius is undefined at the ramified place {place}")
        if place.is_infinite:
            sigma = self._gbar_power(1)
        else:
            sigma = self.artin_class(place.poly, place.degree)
        if self.corrupted and place.degree == 2 and self.group.order > 1:
            sigma = self.group.mul(sigma, self.group.generator(0))
        return sigma

    def constant_degree(self, g: int) -> int:
        """Image of g in Gal(constant field / F_q) = Z/r~."""
        if self.kind is ExtensionKind.CONSTANT and self.group.rank:
            return self.group.elements[g][0] % self.r
        return 0

    def with_corrupted_frobenius(self) -> "ExtensionModel":
        """Copy whose Frobenius at degree-2 places is shifted by a fixed nontrivial element."""
        return replace(self, corrupted=True)

    def to_json(self) -> dict:
        if self.kind is ExtensionKind.CARLITZ:
            return {"kind": self.kind.value, "q": self.q, "m": self.m.to_json()}
        return {"kind": self.kind.value, "q": self.q, "r": self.r}

    def __str__(self) -> str:
        if self.kind is ExtensionKind.CARLITZ:
            return f"carlitz(q={self.q}, m={self.m})"
        return f"constant(q={self.q}, r={self.r})"
