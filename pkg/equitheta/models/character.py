"""Characters of finite abelian groups with exact and numeric values."""

import cmath
import math
from dataclasses import dataclass

from equitheta.exceptions import PreconditionError
from equitheta.models.cyclotomic import CyclotomicElem, CyclotomicField, cyclotomic_field
from equitheta.models.group import FinAbGroup
from equitheta.models.group_ring import GroupRingElem


@dataclass(frozen=True, slots=True)
class Character:
    """
    chi_a(g) = zeta_N^(sum_j a_j x_j N / n_j), N the exponent of G.

    `exponents` is the vector a, one entry per cyclic factor.
    """

    group: FinAbGroup
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.exponents) != self.group.rank:
            raise PreconditionError(
                f"character needs {self.group.rank} exponents, got {self.exponents}"
            )
        reduced = tuple(a % n for a, n in zip(self.exponents, self.group.orders))
        object.__setattr__(self, "exponents", reduced)

    @property
    def field(self) -> CyclotomicField:
        return cyclotomic_field(self.group.exponent)

    @property
    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def value_exponent(self, i: int) -> int:
        """e with chi(g_i) = zeta_N^e."""
        N = self.group.exponent
        return sum(
            a * x * (N // n)
            for a, x, n in zip(self.exponents, self.group.elements[i], self.group.orders)
        ) % N

    def value(self, i: int) -> CyclotomicElem:
        return self.field.power(self.value_exponent(i))

    def numeric_value(self, i: int) -> complex:
        return cmath.exp(2j * math.pi * self.value_exponent(i) / self.group.exponent)

    def evaluate(self, x: GroupRingElem) -> CyclotomicElem:
        """chi extended linearly to Q[G]."""
        if x.group != self.group:
            raise PreconditionError("character and element live on different groups")
        counts: dict[int, int] = {}
        for i, c in enumerate(x.coeffs):
            if c:
                e = self.value_exponent(i)
                counts[e] = counts.get(e, 0) + c
        return self.field.from_exponent_counts(counts)

    def label(self) -> str:
        return "chi(" + ",".join(str(a) for a in self.exponents) + ")"


def all_characters(group: FinAbGroup) -> list[Character]:
    """The |G| characters, indexed like the group elements."""
    return [Character(group, e) for e in group.elements]
