"""Linear algebra over Z/l^k: Howell forms, kernels, membership, unit solves.

Vectors and matrices are plain lists of ints; rows span submodules of (Z/l^k)^n.
"""

import logging
from dataclasses import dataclass
from typing import Sequence

import galois
import numpy as np

from equitheta.exceptions import PreconditionError

logger = logging.getLogger(__name__)

Vector = list[int]


def valuation(x: int, ell: int, k: int) -> int:
    """l-adic valuation of x modulo l^k (k for zero)."""
    x %= ell**k
    if x == 0:
        return k
    v = 0
    while x % ell == 0:
        x //= ell
        v += 1
    return v


@dataclass(frozen=True, slots=True)
class HowellBasis:
    """
    Howell form of a submodule of (Z/l^k)^width.

    Rows are in echelon order, each pivot is a power of l, entries above a pivot
    are reduced below it, and (l^k / pivot) * row lies in the span of later rows.
    The form is unique, so equal submodules have equal `rows`.
    """

    ell: int
    k: int
    width: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def modulus(self) -> int:
        return self.ell**self.k

    @property
    def pivots(self) -> tuple[tuple[int, int], ...]:
        """(column, pivot value) per row."""
        out = []
        for row in self.rows:
            c = next(i for i, x in enumerate(row) if x)
            out.append((c, row[c]))
        return tuple(out)

    @property
    def size(self) -> int:
        """Number of elements of the submodule."""
        total = 1
        for _, d in self.pivots:
            total *= self.modulus // d
        return total

    def reduce(self, vector: Sequence[int]) -> Vector:
        """Normal form of vector modulo the submodule (zero iff contained)."""
        N = self.modulus
        v = [x % N for x in vector]
        if len(v) != self.width:
            raise PreconditionError(f"vector of length {len(v)} in a module of width {self.width}")
        for row, (c, d) in zip(self.rows, self.pivots):
            if any(v[:c]):
                return v
            if v[c] % d:
                return v
            f = v[c] // d
            if f:
                v = [(a - f * b) % N for a, b in zip(v, row)]
        return v

    def contains(self, vector: Sequence[int]) -> bool:
        return not any(self.reduce(vector))

    def contains_all(self, other: "HowellBasis") -> bool:
        return all(self.contains(row) for row in other.rows)


def howell_form(rows: Sequence[Sequence[int]], ell: int, k: int, width: int) -> HowellBasis:
    """
    Canonical Howell basis of the span of rows over Z/l^k.

    Columns are processed left to right; the pending row of least valuation in
    the column becomes the pivot, is scaled to a power of l, clears the column,
    and contributes its saturation (l^k / pivot) * row back to the pending rows.

    Args:
        rows: Spanning vectors of length width
        ell: Prime
        k: Exponent, modulus l^k
        width: Ambient rank

    Returns:
        HowellBasis: The unique Howell form
    """
    N = ell**k
    pending = []
    for r in rows:
        if len(r) != width:
            raise PreconditionError(f"row of length {len(r)} in a module of width {width}")
        reduced = [x % N for x in r]
        if any(reduced):
            pending.append(reduced)

    basis: list[Vector] = []
    for c in range(width):
        best = None
        best_v = k
        for idx, row in enumerate(pending):
            if row[c]:
                v = valuation(row[c], ell, k)
                if best is None or v < best_v:
                    best, best_v = idx, v
        if best is None:
            continue
        pivot = pending.pop(best)
        d = ell**best_v
        unit_inv = pow(pivot[c] // d, -1, N)
        pivot = [(x * unit_inv) % N for x in pivot]

        for row in pending:
            if row[c]:
                f = row[c] // d
                for j in range(c, width):
                    row[j] = (row[j] - f * pivot[j]) % N
        for row in basis:
            f = row[c] // d
            if f:
                for j in range(c, width):
                    row[j] = (row[j] - f * pivot[j]) % N

        saturation = [(x * (N // d)) % N for x in pivot]
        if any(saturation):
            pending.append(saturation)
        pending = [row for row in pending if any(row)]
        basis.append(pivot)

    return HowellBasis(ell=ell, k=k, width=width, rows=tuple(tuple(r) for r in basis))


def kernel(
    images: Sequence[Sequence[int]],
    relations: Sequence[Sequence[int]],
    ell: int,
    k: int,
    width: int,
) -> list[Vector]:
    """
    Generators of {a : sum a_i images_i lies in span(relations)} over Z/l^k.

    Uses the Howell form of [images | I ; relations | 0]: rows with a zero left
    block span exactly the kernel.

    Args:
        images: Image of each basis vector of the source, vectors of length width
        relations: Spanning set of the submodule factored out of the target
        ell: Prime
        k: Exponent
        width: Rank of the target

    Returns:
        list[Vector]: Spanning set of the kernel (length len(images) each)
    """
    n = len(images)
    stacked = []
    for i, image in enumerate(images):
        stacked.append(list(image) + [1 if j == i else 0 for j in range(n)])
    for rel in relations:
        stacked.append(list(rel) + [0] * n)
    form = howell_form(stacked, ell, k, width + n)
    return [list(row[width:]) for row in form.rows if not any(row[:width])]


def matrix_unit_mod_prime(matrix: Sequence[Sequence[int]], ell: int) -> bool:
    """Whether a square integer matrix is invertible modulo l (hence modulo l^k)."""
    n = len(matrix)
    if n == 0:
        return True
    GF = galois.GF(ell)
    reduced = GF(np.array([[x % ell for x in row] for row in matrix], dtype=np.int64))
    return int(np.linalg.matrix_rank(reduced)) == n


def solve_unit(matrix: Sequence[Sequence[int]], rhs: Sequence[int], ell: int, k: int) -> Vector:
    """
    Solve A x = b over Z/l^k for A invertible modulo l (Gauss-Jordan, unit pivots).

    Raises:
        PreconditionError: If A is singular modulo l
    """
    N = ell**k
    n = len(matrix)
    aug = [[x % N for x in row] + [rhs[i] % N] for i, row in enumerate(matrix)]
    for c in range(n):
        pivot_row = next((r for r in range(c, n) if aug[r][c] % ell), None)
        if pivot_row is None:
            raise PreconditionError("matrix is not invertible modulo l")
        aug[c], aug[pivot_row] = aug[pivot_row], aug[c]
        inv = pow(aug[c][c], -1, N)
        aug[c] = [(x * inv) % N for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(a - f * b) % N for a, b in zip(aug[r], aug[c])]
    return [aug[r][n] for r in range(n)]
