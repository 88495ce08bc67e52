"""Group rings R[G] for R in {Z, Q, Z/N} and polynomials over them."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from equitheta.exceptions import PreconditionError
from equitheta.models.group import FinAbGroup

Scalar = int | Fraction


@dataclass(frozen=True, slots=True)
class GroupRingElem:
    """
    Dense element of R[G]: coeffs[i] is the coefficient of group element i.

    modulus None means integer or rational coefficients; otherwise the
    coefficients are reduced into range(modulus).
    """

    group: FinAbGroup
    coeffs: tuple[Scalar, ...]
    modulus: int | None = None

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.group.order:
            raise PreconditionError(
                f"expected {self.group.order} coefficients, got {len(self.coeffs)}"
            )
        if self.modulus is not None:
            reduced = []
            for c in self.coeffs:
                if isinstance(c, Fraction):
                    if c.denominator != 1:
                        c = c.numerator * pow(c.denominator, -1, self.modulus)
                    else:
                        c = c.numerator
                reduced.append(int(c) % self.modulus)
            object.__setattr__(self, "coeffs", tuple(reduced))

    # Constructors

    @classmethod
    def zero(cls, group: FinAbGroup, modulus: int | None = None) -> "GroupRingElem":
        return cls(group, (0,) * group.order, modulus)

    @classmethod
    def one(cls, group: FinAbGroup, modulus: int | None = None) -> "GroupRingElem":
        return cls.basis(group, 0, modulus)

    @classmethod
    def basis(cls, group: FinAbGroup, i: int, modulus: int | None = None, coeff: Scalar = 1) -> "GroupRingElem":
        coeffs = [0] * group.order
        coeffs[i] = coeff
        return cls(group, tuple(coeffs), modulus)

    @classmethod
    def scalar(cls, group: FinAbGroup, value: Scalar, modulus: int | None = None) -> "GroupRingElem":
        return cls.basis(group, 0, modulus, value)

    @classmethod
    def from_terms(
        cls,
        group: FinAbGroup,
        terms: Mapping[int | str, Scalar],
        modulus: int | None = None,
    ) -> "GroupRingElem":
        """Build from {element index or label: coefficient}."""
        coeffs: list[Scalar] = [0] * group.order
        for key, value in terms.items():
            i = group.index_of_label(key) if isinstance(key, str) else key
            coeffs[i] += value
        return cls(group, tuple(coeffs), modulus)

    # Ring structure

    def _check(self, other: "GroupRingElem") -> None:
        if self.group != other.group or self.modulus != other.modulus:
            raise PreconditionError(
                f"ring mismatch: {self.group.orders}/{self.modulus} vs {other.group.orders}/{other.modulus}"
            )

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        self._check(other)
        return GroupRingElem(
            self.group, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.modulus
        )

    def __neg__(self) -> "GroupRingElem":
        return GroupRingElem(self.group, tuple(-a for a in self.coeffs), self.modulus)

    def __sub__(self, other: "GroupRingElem") -> "GroupRingElem":
        return self + (-other)

    def __mul__(self, other: "GroupRingElem | Scalar") -> "GroupRingElem":
        if not isinstance(other, GroupRingElem):
            return GroupRingElem(self.group, tuple(a * other for a in self.coeffs), self.modulus)
        self._check(other)
        table = self.group.mul_table
        out: list[Scalar] = [0] * self.group.order
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            row = table[i]
            for j, b in enumerate(other.coeffs):
                if b:
                    out[row[j]] += a * b
        return GroupRingElem(self.group, tuple(out), self.modulus)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GroupRingElem":
        result = GroupRingElem.one(self.group, self.modulus)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def translate(self, g: int) -> "GroupRingElem":
        """Multiply by the group element with index g."""
        out: list[Scalar] = [0] * self.group.order
        for i, a in enumerate(self.coeffs):
            out[self.group.mul(g, i)] = a
        return GroupRingElem(self.group, tuple(out), self.modulus)

    def iota(self) -> "GroupRingElem":
        """Involution g -> g^-1 extended linearly."""
        out: list[Scalar] = [0] * self.group.order
        for i, a in enumerate(self.coeffs):
            out[self.group.inv(i)] = a
        return GroupRingElem(self.group, tuple(out), self.modulus)

    def augmentation(self) -> Scalar:
        total = sum(self.coeffs)
        return total % self.modulus if self.modulus is not None else total

    # Coefficient-ring changes

    def reduce(self, modulus: int) -> "GroupRingElem":
        """Image in (Z/modulus)[G]; rational coefficients need denominators prime to modulus."""
        return GroupRingElem(self.group, self.coeffs, modulus)

    def lift(self) -> "GroupRingElem":
        """Integer representatives in range(modulus), forgetting the modulus."""
        return GroupRingElem(self.group, self.coeffs, None)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        return all(not isinstance(c, Fraction) or c.denominator == 1 for c in self.coeffs)

    def to_integral(self) -> "GroupRingElem":
        if not self.is_integral():
            raise PreconditionError(f"{self} has non-integral coefficients")
        return GroupRingElem(self.group, tuple(int(c) for c in self.coeffs), self.modulus)

    def to_terms(self) -> dict[str, Scalar]:
        """{label: coefficient} for the nonzero coefficients."""
        return {self.group.label(i): c for i, c in enumerate(self.coeffs) if c}

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            label = self.group.label(i)
            if label == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(label)
            else:
                parts.append(f"{c}*{label}")
        return " + ".join(parts)


def _trim(coeffs: Sequence[GroupRingElem]) -> tuple[GroupRingElem, ...]:
    end = len(coeffs)
    while end and coeffs[end - 1].is_zero():
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True, slots=True)
class EquivPoly:
    """Polynomial in u over R[G], coefficients low-to-high with no trailing zeros."""

    group: FinAbGroup
    coeffs: tuple[GroupRingElem, ...] = ()
    modulus: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(tuple(self.coeffs)))

    @classmethod
    def constant(cls, value: GroupRingElem) -> "EquivPoly":
        return cls(value.group, (value,), value.modulus)

    @classmethod
    def one(cls, group: FinAbGroup, modulus: int | None = None) -> "EquivPoly":
        return cls.constant(GroupRingElem.one(group, modulus))

    @classmethod
    def monomial(cls, value: GroupRingElem, degree: int) -> "EquivPoly":
        zero = GroupRingElem.zero(value.group, value.modulus)
        return cls(value.group, (zero,) * degree + (value,), value.modulus)

    @classmethod
    def from_terms(
        cls,
        group: FinAbGroup,
        terms: Iterable[Mapping[int | str, Scalar]],
        modulus: int | None = None,
    ) -> "EquivPoly":
        return cls(group, tuple(GroupRingElem.from_terms(group, t, modulus) for t in terms), modulus)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> GroupRingElem:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return GroupRingElem.zero(self.group, self.modulus)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "EquivPoly") -> "EquivPoly":
        width = max(len(self.coeffs), len(other.coeffs))
        return EquivPoly(
            self.group,
            tuple(self.coefficient(k) + other.coefficient(k) for k in range(width)),
            self.modulus,
        )

    def __neg__(self) -> "EquivPoly":
        return EquivPoly(self.group, tuple(-c for c in self.coeffs), self.modulus)

    def __sub__(self, other: "EquivPoly") -> "EquivPoly":
        return self + (-other)

    def multiply(self, other: "EquivPoly", truncate: int | None = None) -> "EquivPoly":
        """Product, keeping only degrees <= truncate when given."""
        if self.is_zero() or other.is_zero():
            return EquivPoly(self.group, (), self.modulus)
        top = self.degree + other.degree
        if truncate is not None:
            top = min(top, truncate)
        out = [GroupRingElem.zero(self.group, self.modulus) for _ in range(top + 1)]
        for i, a in enumerate(self.coeffs):
            if i > top or a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if i + j > top:
                    break
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return EquivPoly(self.group, tuple(out), self.modulus)

    def __mul__(self, other: "EquivPoly") -> "EquivPoly":
        return self.multiply(other)

    def evaluate(self, u0: Scalar) -> GroupRingElem:
        """Sum of coeff_k * u0^k in Q[G] (or (Z/N)[G])."""
        total = GroupRingElem.zero(self.group, self.modulus)
        power: Scalar = 1
        for c in self.coeffs:
            total = total + c * power
            power = power * u0
        return total

    def map_coefficients(self, func) -> "EquivPoly":
        return EquivPoly(self.group, tuple(func(c) for c in self.coeffs), self.modulus)

    def to_terms(self) -> list[dict[str, Scalar]]:
        return [c.to_terms() for c in self.coeffs]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            body = str(c)
            if k == 0:
                parts.append(body)
            else:
                power = "u" if k == 1 else f"u^{k}"
                parts.append(f"({body})*{power}")
        return " + ".join(parts)
