"""Exact arithmetic in Q(zeta_N) = Q[x]/Phi_N(x)."""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import Poly, QQ, Rational, cyclotomic_poly, symbols

_x = symbols("x")


def _to_fraction(value) -> Fraction:
    r = Rational(value)
    return Fraction(int(r.p), int(r.q))


@dataclass(frozen=True, slots=True, eq=False)
class CyclotomicField:
    """Q(zeta_N) with basis 1, x, ..., x^(phi(N)-1) and cached reductions of x^e."""

    N: int
    degree: int
    modulus: Poly
    reductions: tuple[tuple[Fraction, ...], ...]  # x^e mod Phi_N for 0 <= e < max(N, 2*degree)

    def power(self, e: int) -> "CyclotomicElem":
        """zeta_N^e."""
        return CyclotomicElem(self, self.reductions[e % self.N])

    def zero(self) -> "CyclotomicElem":
        return CyclotomicElem(self, (Fraction(0),) * self.degree)

    def one(self) -> "CyclotomicElem":
        return self.power(0)

    def scalar(self, value: int | Fraction) -> "CyclotomicElem":
        return CyclotomicElem(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))

    def from_exponent_counts(self, counts: dict[int, int | Fraction]) -> "CyclotomicElem":
        """Sum of c * zeta^e over the given {e: c}."""
        acc = [Fraction(0)] * self.degree
        for e, c in counts.items():
            if c == 0:
                continue
            row = self.reductions[e % self.N]
            for i, r in enumerate(row):
                if r:
                    acc[i] += c * r
        return CyclotomicElem(self, tuple(acc))

    def _reduce(self, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
        acc = [Fraction(0)] * self.degree
        for e, c in enumerate(coeffs):
            if c == 0:
                continue
            row = self.reductions[e]
            for i, r in enumerate(row):
                if r:
                    acc[i] += c * r
        return tuple(acc)

    def __repr__(self) -> str:
        return f"CyclotomicField(N={self.N})"


@lru_cache(maxsize=None)
def cyclotomic_field(N: int) -> CyclotomicField:
    """Build Q(zeta_N) once per N."""
    modulus = Poly(cyclotomic_poly(N, _x), _x, domain=QQ)
    degree = modulus.degree()
    reductions = []
    for e in range(max(N, 2 * degree)):
        remainder = Poly(_x**e, _x, domain=QQ).rem(modulus)
        coeffs = [_to_fraction(c) for c in reversed(remainder.all_coeffs())]
        coeffs += [Fraction(0)] * (degree - len(coeffs))
        reductions.append(tuple(coeffs))
    return CyclotomicField(N=N, degree=degree, modulus=modulus, reductions=tuple(reductions))


@dataclass(frozen=True, slots=True)
class CyclotomicElem:
    """Element of Q(zeta_N) as phi(N) rational coordinates."""

    field: CyclotomicField
    coeffs: tuple[Fraction, ...]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CyclotomicElem):
            return NotImplemented
        return self.field.N == other.field.N and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field.N, self.coeffs))

    def _lift(self, other: "CyclotomicElem | int | Fraction") -> "CyclotomicElem":
        if isinstance(other, CyclotomicElem):
            return other
        return self.field.scalar(other)

    def __add__(self, other: "CyclotomicElem | int | Fraction") -> "CyclotomicElem":
        other = self._lift(other)
        return CyclotomicElem(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicElem":
        return CyclotomicElem(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "CyclotomicElem | int | Fraction") -> "CyclotomicElem":
        return self + (-self._lift(other))

    def __rsub__(self, other: int | Fraction) -> "CyclotomicElem":
        return self._lift(other) - self

    def __mul__(self, other: "CyclotomicElem | int | Fraction") -> "CyclotomicElem":
        if not isinstance(other, CyclotomicElem):
            c = Fraction(other)
            return CyclotomicElem(self.field, tuple(a * c for a in self.coeffs))
        product = [Fraction(0)] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    product[i + j] += a * b
        return CyclotomicElem(self.field, self.field._reduce(product))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def inverse(self) -> "CyclotomicElem":
        """Multiplicative inverse via the extended Euclidean algorithm in Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse in Q(zeta_N)")
        as_poly = Poly(
            [Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)],
            _x,
            domain=QQ,
        )
        inverse = as_poly.invert(self.field.modulus)
        coeffs = [_to_fraction(c) for c in reversed(inverse.all_coeffs())]
        coeffs += [Fraction(0)] * (self.field.degree - len(coeffs))
        return CyclotomicElem(self.field, tuple(coeffs[: self.field.degree]))

    def __truediv__(self, other: "CyclotomicElem | int | Fraction") -> "CyclotomicElem":
        if not isinstance(other, CyclotomicElem):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def conjugate(self) -> "CyclotomicElem":
        """Image under zeta -> zeta^-1 (complex conjugation)."""
        return self.field.from_exponent_counts(
            {(-i) % self.field.N: c for i, c in enumerate(self.coeffs) if c}
        )

    def to_complex(self) -> complex:
        zeta = cmath.exp(2j * math.pi / self.field.N)
        return sum((float(c) * zeta**i for i, c in enumerate(self.coeffs)), 0j)

    def __str__(self) -> str:
        terms = [
            (str(c) if i == 0 else f"{c}*z^{i}" if i > 1 else f"{c}*z")
            for i, c in enumerate(self.coeffs)
            if c
        ]
        return " + ".join(terms) if terms else "0"
