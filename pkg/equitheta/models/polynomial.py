"""Polynomials over F_q and places of F_q(t)."""

import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from equitheta.exceptions import PreconditionError
from equitheta.models.field import FiniteField, get_field

ZERO_DEGREE = -1  # degree of the zero polynomial

_TERM = re.compile(r"^(\d*)(t(?:\^(\d+))?)?$")


def _strip(coeffs: Sequence[int]) -> tuple[int, ...]:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True, slots=True)
class FqPoly:
    """
    Element of F_q[t], coefficients low-to-high with no trailing zeros.

    Coefficients use the integer encoding of `FiniteField`.
    """

    q: int
    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        coeffs = _strip(tuple(int(c) for c in self.coeffs))
        for c in coeffs:
            if not 0 <= c < self.q:
                raise PreconditionError(f"coefficient {c} is not an element of F_{self.q}")
        object.__setattr__(self, "coeffs", coeffs)

    # Constructors

    @classmethod
    def zero(cls, q: int) -> "FqPoly":
        return cls(q, ())

    @classmethod
    def one(cls, q: int) -> "FqPoly":
        return cls(q, (1,))

    @classmethod
    def t(cls, q: int) -> "FqPoly":
        return cls(q, (0, 1))

    @classmethod
    def from_json(cls, q: int, coeffs: Sequence[int]) -> "FqPoly":
        """Build from a low-to-high coefficient array such as [1, 0, 1]."""
        return cls(q, tuple(coeffs))

    @classmethod
    def parse(cls, q: int, text: str) -> "FqPoly":
        """
        Parse polynomial notation like "t^2+2t+1", "t", "2".

        Args:
            q: Field order
            text: Sum of terms c, t, ct, t^e or ct^e; '-' negates a term

        Returns:
            FqPoly: Parsed polynomial

        Raises:
            PreconditionError: If a term cannot be parsed
        """
        fq = get_field(q)
        cleaned = text.replace(" ", "").replace("*", "").replace("-", "+-")
        if not cleaned:
            raise PreconditionError("empty polynomial")
        result: dict[int, int] = {}
        for raw in cleaned.split("+"):
            if raw == "":
                continue
            negative = raw.startswith("-")
            term = raw[1:] if negative else raw
            match = _TERM.match(term)
            if match is None or term == "":
                raise PreconditionError(f"cannot parse term {raw!r} in {text!r}")
            digits, var, power = match.groups()
            coeff = int(digits) if digits else 1
            if digits and var is None:
                exponent = 0
            elif var is None:
                raise PreconditionError(f"cannot parse term {raw!r} in {text!r}")
            else:
                exponent = int(power) if power else 1
            if coeff >= q:
                # Integers outside the encoding are read through Z -> F_p
                coeff = fq.from_int(coeff)
            if negative:
                coeff = fq.neg(coeff)
            result[exponent] = fq.add(result.get(exponent, 0), coeff)
        width = max(result) + 1
        return cls(q, tuple(result.get(i, 0) for i in range(width)))

    # Basic properties

    @property
    def base_field(self) -> FiniteField:
        return get_field(self.q)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    # Arithmetic

    def __add__(self, other: "FqPoly") -> "FqPoly":
        fq = self.base_field
        a, b = self.coeffs, other.coeffs
        width = max(len(a), len(b))
        return FqPoly(
            self.q,
            tuple(
                fq.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0)
                for i in range(width)
            ),
        )

    def __neg__(self) -> "FqPoly":
        fq = self.base_field
        return FqPoly(self.q, tuple(fq.neg(c) for c in self.coeffs))

    def __sub__(self, other: "FqPoly") -> "FqPoly":
        return self + (-other)

    def __mul__(self, other: "FqPoly") -> "FqPoly":
        if not self.coeffs or not other.coeffs:
            return FqPoly.zero(self.q)
        fq = self.base_field
        add, mul = fq.add_table, fq.mul_table
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            row = mul[a]
            for j, b in enumerate(other.coeffs):
                out[i + j] = add[out[i + j]][row[b]]
        return FqPoly(self.q, tuple(out))

    def scale(self, c: int) -> "FqPoly":
        fq = self.base_field
        return FqPoly(self.q, tuple(fq.mul(c, a) for a in self.coeffs))

    def shift(self, k: int) -> "FqPoly":
        """Multiply by t^k."""
        if not self.coeffs:
            return self
        return FqPoly(self.q, (0,) * k + self.coeffs)

    def divmod(self, divisor: "FqPoly") -> tuple["FqPoly", "FqPoly"]:
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        fq = self.base_field
        add, mul, neg = fq.add_table, fq.mul_table, fq.neg_table
        rem = list(self.coeffs)
        dcoeffs = divisor.coeffs
        ddeg = len(dcoeffs) - 1
        lead_inv = fq.inv(dcoeffs[-1])
        if len(rem) - 1 < ddeg:
            return FqPoly.zero(self.q), self
        quot = [0] * (len(rem) - ddeg)
        for shift in range(len(rem) - 1 - ddeg, -1, -1):
            top = rem[shift + ddeg]
            if top == 0:
                continue
            factor = mul[top][lead_inv]
            quot[shift] = factor
            negf = neg[factor]
            for j, d in enumerate(dcoeffs):
                rem[shift + j] = add[rem[shift + j]][mul[negf][d]]
        return FqPoly(self.q, tuple(quot)), FqPoly(self.q, tuple(rem[:ddeg]))

    def __mod__(self, divisor: "FqPoly") -> "FqPoly":
        return self.divmod(divisor)[1]

    def __floordiv__(self, divisor: "FqPoly") -> "FqPoly":
        return self.divmod(divisor)[0]

    def monic(self) -> "FqPoly":
        if self.is_zero():
            return self
        return self.scale(self.base_field.inv(self.leading))

    def pow_mod(self, exponent: int, modulus: "FqPoly") -> "FqPoly":
        result = FqPoly.one(self.q) % modulus
        base = self % modulus
        while exponent:
            if exponent & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            exponent >>= 1
        return result

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            prefix = "" if c == 1 else str(c)
            terms.append(f"{prefix}t" if i == 1 else f"{prefix}t^{i}")
        return "+".join(terms)


def poly_gcd(a: FqPoly, b: FqPoly) -> FqPoly:
    """Monic gcd of two polynomials (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


@dataclass(frozen=True, slots=True)
class Place:
    """
    A place of F_q(t): a monic irreducible polynomial, or infinity when poly is None.

    Validation of irreducibility lives in services.ffq.finite_place.
    """

    q: int
    poly: FqPoly | None = None

    @classmethod
    def infinity(cls, q: int) -> "Place":
        return cls(q, None)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def sort_key(self) -> tuple:
        if self.poly is None:
            return (0, ())
        return (self.poly.degree, tuple(reversed(self.poly.coeffs)))

    def to_json(self) -> str | list[int]:
        return "inf" if self.poly is None else self.poly.to_json()

    def __str__(self) -> str:
        return "inf" if self.poly is None else str(self.poly)


@dataclass(frozen=True, slots=True)
class ResidueUnitGroup:
    """
    (F_q[t]/m)^x with an explicit decomposition into cyclic factors.

    `structure` lists (generator residue, order) pairs; `exponent_of` maps the
    coefficient tuple of each unit residue to its exponent vector.
    """

    modulus: FqPoly
    elements: tuple[FqPoly, ...]
    structure: tuple[tuple[FqPoly, int], ...]
    exponent_of: Mapping[tuple[int, ...], tuple[int, ...]] = field(compare=False, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def cyclic_orders(self) -> tuple[int, ...]:
        return tuple(order for _, order in self.structure)

    def exponents(self, residue: FqPoly) -> tuple[int, ...]:
        return self.exponent_of[residue.coeffs]
