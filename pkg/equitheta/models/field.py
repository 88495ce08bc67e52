"""Finite fields F_q with table-driven arithmetic."""

from dataclasses import dataclass
from functools import lru_cache

import galois
import numpy as np
from sympy import factorint

from equitheta.config import settings
from equitheta.exceptions import PreconditionError


@dataclass(frozen=True, slots=True)
class PrimePower:
    """A prime power q = p^e, the order of the constant field."""

    p: int
    e: int

    @property
    def q(self) -> int:
        return self.p**self.e

    @classmethod
    def from_order(cls, q: int) -> "PrimePower":
        """
        Validate q and split it into p^e.

        Args:
            q: Candidate field order

        Returns:
            PrimePower: The factorization of q

        Raises:
            PreconditionError: If q is not a prime power or exceeds max_field_order
        """
        if q < 2:
            raise PreconditionError(f"q={q} is not a prime power")
        factors = factorint(q)
        if len(factors) != 1:
            raise PreconditionError(f"q={q} is not a prime power (factors {dict(factors)})")
        if q > settings.max_field_order:
            raise PreconditionError(
                f"q={q} exceeds max_field_order={settings.max_field_order}"
            )
        (p, e), = factors.items()
        return cls(p=int(p), e=int(e))

    def __str__(self) -> str:
        return str(self.q)


@dataclass(frozen=True, slots=True, eq=False)
class FiniteField:
    """
    F_q realized through lookup tables.

    Elements are the integers 0..q-1 in the polynomial-basis encoding used by
    galois: for q = p^e the integer sum c_i p^i stands for sum c_i x^i modulo the
    stored irreducible `modulus` (a Conway polynomial). For e = 1 this is plain
    arithmetic mod p.
    """

    order: PrimePower
    modulus: tuple[int, ...]
    add_table: tuple[tuple[int, ...], ...]
    mul_table: tuple[tuple[int, ...], ...]
    neg_table: tuple[int, ...]
    inv_table: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.order.q

    @property
    def p(self) -> int:
        return self.order.p

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.q}")
        return self.inv_table[a]

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_q."""
        return n % self.p

    def __repr__(self) -> str:
        return f"FiniteField(q={self.q}, modulus={list(self.modulus)})"


def _as_table(array: "galois.FieldArray") -> list:
    return array.view(np.ndarray).astype(int).tolist()


@lru_cache(maxsize=None)
def get_field(q: int) -> FiniteField:
    """
    Build (once per q) the arithmetic tables of F_q.

    Args:
        q: Field order, a prime power up to settings.max_field_order

    Returns:
        FiniteField: Cached table-backed field
    """
    order = PrimePower.from_order(q)
    gf = galois.GF(q)
    x = gf.elements

    add = _as_table(x[:, np.newaxis] + x[np.newaxis, :])
    mul = _as_table(x[:, np.newaxis] * x[np.newaxis, :])
    neg = _as_table(-x)
    inv = [0] + _as_table(x[1:] ** -1)
    modulus = tuple(int(c) for c in gf.irreducible_poly.coeffs[::-1])

    return FiniteField(
        order=order,
        modulus=modulus,
        add_table=tuple(tuple(row) for row in add),
        mul_table=tuple(tuple(row) for row in mul),
        neg_table=tuple(neg),
        inv_table=tuple(inv),
    )
