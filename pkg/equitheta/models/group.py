"""Finite abelian groups given by cyclic factor orders."""

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from equitheta.config import settings
from equitheta.exceptions import PreconditionError


@dataclass(frozen=True, slots=True)
class FinAbGroup:
    """
    G = Z/n_1 x ... x Z/n_k, elements indexed by exponent tuples in lexicographic order.

    Index 0 is the identity; factors of order 1 are dropped.
    """

    orders: tuple[int, ...]
    elements: tuple[tuple[int, ...], ...] = field(init=False, compare=False, repr=False)
    index_of: Mapping[tuple[int, ...], int] = field(init=False, compare=False, repr=False)
    mul_table: tuple[tuple[int, ...], ...] = field(init=False, compare=False, repr=False)
    inv_table: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        orders = tuple(int(n) for n in self.orders if int(n) != 1)
        if any(n < 1 for n in orders):
            raise PreconditionError(f"cyclic orders must be positive, got {self.orders}")
        size = math.prod(orders)
        if size > settings.max_group_order:
            raise PreconditionError(
                f"|G| = {size} exceeds max_group_order={settings.max_group_order}"
            )
        elements = tuple(itertools.product(*(range(n) for n in orders)))
        index_of = {e: i for i, e in enumerate(elements)}
        mul_table = tuple(
            tuple(
                index_of[tuple((x + y) % n for x, y, n in zip(a, b, orders))]
                for b in elements
            )
            for a in elements
        )
        inv_table = tuple(index_of[tuple((-x) % n for x, n in zip(a, orders))] for a in elements)
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "index_of", index_of)
        object.__setattr__(self, "mul_table", mul_table)
        object.__setattr__(self, "inv_table", inv_table)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.orders) if self.orders else 1

    def mul(self, i: int, j: int) -> int:
        return self.mul_table[i][j]

    def inv(self, i: int) -> int:
        return self.inv_table[i]

    def power(self, i: int, k: int) -> int:
        return self.index(tuple(x * k for x in self.elements[i]))

    def index(self, exponents: tuple[int, ...]) -> int:
        """Index of the element with the given exponents (reduced mod the orders)."""
        if len(exponents) != self.rank:
            raise PreconditionError(f"expected {self.rank} exponents, got {exponents}")
        return self.index_of[tuple(x % n for x, n in zip(exponents, self.orders))]

    def generator(self, j: int) -> int:
        """Index of the j-th cyclic generator."""
        return self.index(tuple(1 if i == j else 0 for i in range(self.rank)))

    def element_order(self, i: int) -> int:
        return math.lcm(
            1, *(n // math.gcd(x, n) for x, n in zip(self.elements[i], self.orders))
        )

    def label(self, i: int) -> str:
        """Readable name: "1", "g", "g^2", or "g1*g2^3" for several factors."""
        exponents = self.elements[i]
        if not any(exponents):
            return "1"
        parts = []
        for j, x in enumerate(exponents):
            if x == 0:
                continue
            name = "g" if self.rank == 1 else f"g{j + 1}"
            parts.append(name if x == 1 else f"{name}^{x}")
        return "*".join(parts)

    def labels(self) -> list[str]:
        return [self.label(i) for i in range(self.order)]

    def index_of_label(self, label: str) -> int:
        for i in range(self.order):
            if self.label(i) == label:
                return i
        raise PreconditionError(f"no element labelled {label!r} in group {self.orders}")


@lru_cache(maxsize=None)
def cyclic_group(*orders: int) -> FinAbGroup:
    """Cached group with the given cyclic factor orders (trivial group for none)."""
    return FinAbGroup(tuple(orders))
