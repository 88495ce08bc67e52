"""Requests for and results of equivariant L-function computations."""

from dataclasses import dataclass
from typing import Iterable

from equitheta.config import settings
from equitheta.exceptions import PreconditionError
from equitheta.models.character import Character
from equitheta.models.cyclotomic import CyclotomicElem
from equitheta.models.extension import ExtensionModel
from equitheta.models.group_ring import EquivPoly
from equitheta.models.polynomial import Place


def _sorted_places(places: Iterable[Place]) -> tuple[Place, ...]:
    return tuple(sorted(set(places), key=Place.sort_key))


def default_dmax(model: ExtensionModel, S0: Iterable[Place], T0: Iterable[Place], guard: int) -> int:
    """deg m + sum of T0 degrees + sum of finite S0 degrees + guard."""
    finite_s0 = sum(v.degree for v in S0 if not v.is_infinite)
    return model.conductor_degree + sum(v.degree for v in T0) + finite_s0 + guard


@dataclass(frozen=True, slots=True)
class LDataRequest:
    """
    Input of `theta`: model, S0 (with infinity and the ramified places), T0, truncation.

    T0 may be empty; the result is then a family of per-character rational functions.
    """

    model: ExtensionModel
    S0: tuple[Place, ...]
    T0: tuple[Place, ...]
    dmax: int
    guard: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "S0", _sorted_places(self.S0))
        object.__setattr__(self, "T0", _sorted_places(self.T0))
        for v in self.S0 + self.T0:
            if v.q != self.model.q:
                raise PreconditionError(f"place {v} is not a place of F_{self.model.q}(t)")
        if not any(v.is_infinite for v in self.S0):
            raise PreconditionError("S0 must contain the infinite place")
        missing = self.model.ramified - set(self.S0)
        if missing:
            names = ", ".join(str(v) for v in sorted(missing, key=Place.sort_key))
            raise PreconditionError(f"S0 must contain the ramified places (missing {names})")
        overlap = set(self.S0) & set(self.T0)
        if overlap:
            names = ", ".join(str(v) for v in sorted(overlap, key=Place.sort_key))
            raise PreconditionError(f"S0 and T0 must be disjoint (both contain {names})")
        if self.guard < 1:
            raise PreconditionError(f"guard must be >= 1, got {self.guard}")
        if self.dmax < self.guard:
            raise PreconditionError(f"Dmax={self.dmax} is smaller than the guard {self.guard}")

    @classmethod
    def build(
        cls,
        model: ExtensionModel,
        S0: Iterable[Place],
        T0: Iterable[Place] = (),
        dmax: int | None = None,
        guard: int | None = None,
    ) -> "LDataRequest":
        """Request with the default guard and degree bound filled in."""
        S0, T0 = tuple(S0), tuple(T0)
        guard = settings.default_guard if guard is None else guard
        if dmax is None:
            dmax = default_dmax(model, S0, T0, guard)
        return cls(model=model, S0=S0, T0=T0, dmax=dmax, guard=guard)

    @property
    def finite_s0(self) -> tuple[Place, ...]:
        return tuple(v for v in self.S0 if not v.is_infinite)

    def to_json(self) -> dict:
        return {
            **self.model.to_json(),
            "S0": [v.to_json() for v in self.S0],
            "T0": [v.to_json() for v in self.T0],
            "Dmax": self.dmax,
            "guard": self.guard,
        }


@dataclass(frozen=True, slots=True)
class CharacterComponent:
    """chi-component numerator/denominator of the unsmoothed L-function, coefficients low-to-high."""

    character: Character
    numerator: tuple[CyclotomicElem, ...]
    denominator: tuple[CyclotomicElem, ...]

    def evaluate(self, u0: int) -> CyclotomicElem:
        field_ = self.character.field

        def horner(coeffs: tuple[CyclotomicElem, ...]) -> CyclotomicElem:
            total = field_.zero()
            for c in reversed(coeffs):
                total = total * u0 + c
            return total

        return horner(self.numerator) / horner(self.denominator)

    def to_json(self) -> dict:
        return {
            "character": self.character.label(),
            "numerator": [str(c) for c in self.numerator],
            "denominator": [str(c) for c in self.denominator],
        }


@dataclass(frozen=True, slots=True)
class ThetaPoly:
    """
    Theta_{S0,T0}(u) with provenance.

    `poly` is set when T0 is nonempty; otherwise `components` holds one rational
    function per character.
    """

    request: LDataRequest
    stabilization_degree: int
    poly: EquivPoly | None = None
    components: tuple[CharacterComponent, ...] = ()

    @property
    def is_polynomial(self) -> bool:
        return self.poly is not None

    @property
    def model(self) -> ExtensionModel:
        return self.request.model

    def require_poly(self) -> EquivPoly:
        if self.poly is None:
            raise PreconditionError("operation needs T0 nonempty (a polynomial Theta)")
        return self.poly

    def to_json(self) -> dict:
        body: dict = {
            "request": self.request.to_json(),
            "stabilization_degree": self.stabilization_degree,
            "group": list(self.model.group.orders),
        }
        if self.poly is not None:
            body["coefficients"] = self.poly.to_terms()
        else:
            body["components"] = [c.to_json() for c in self.components]
        return body
