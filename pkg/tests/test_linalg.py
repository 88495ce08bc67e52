import itertools
import random

import pytest

from equitheta.exceptions import PreconditionError
from equitheta.linalg import howell_form, kernel, matrix_unit_mod_prime, solve_unit, valuation


def test_valuation():
    assert valuation(12, 2, 5) == 2
    assert valuation(0, 3, 4) == 4
    assert valuation(32, 2, 5) == 5


def test_howell_form_is_canonical():
    a = howell_form([[2, 4], [0, 4]], 2, 3, 2)
    b = howell_form([[2, 0], [0, 4], [6, 4]], 2, 3, 2)
    assert a.rows == b.rows


def test_howell_saturation():
    # <(2, 1)> in (Z/4)^2 contains 2 * (2, 1) = (0, 2)
    form = howell_form([[2, 1]], 2, 2, 2)
    assert form.contains([0, 2])
    assert not form.contains([0, 1])
    assert form.size == 4


def test_howell_membership():
    form = howell_form([[3, 0, 3], [0, 9, 0]], 3, 3, 3)
    assert form.contains([6, 9, 6])
    assert not form.contains([1, 0, 0])


def test_kernel():
    # a -> 3a on Z/9: kernel is <3>
    vectors = kernel([[3]], [], 3, 2, 1)
    form = howell_form(vectors, 3, 2, 1)
    assert form.rows == ((3,),)


def test_kernel_modulo_relations():
    # a -> a into (Z/8) / <4>: kernel is <4>
    vectors = kernel([[1]], [[4]], 2, 3, 1)
    assert howell_form(vectors, 2, 3, 1).rows == ((4,),)


def test_unit_matrices():
    assert matrix_unit_mod_prime([[1, 2], [3, 4]], 5)
    assert not matrix_unit_mod_prime([[1, 2], [2, 4]], 5)
    assert not matrix_unit_mod_prime([[3, 0], [0, 1]], 3)


def test_solve_unit():
    x = solve_unit([[1, 2], [3, 4]], [5, 6], 5, 2)
    assert [(1 * x[0] + 2 * x[1]) % 25, (3 * x[0] + 4 * x[1]) % 25] == [5, 6]
    with pytest.raises(PreconditionError):
        solve_unit([[2, 0], [0, 1]], [1, 1], 2, 3)


def exhaustive_span(rows: list[list[int]], modulus: int, width: int) -> set[tuple[int, ...]]:
    span = {(0,) * width}
    for row in rows:
        span = {tuple((s + c * r) % modulus for s, r in zip(vector, row)) for vector in span for c in range(modulus)}
    return span


@pytest.mark.parametrize(
    ("ell", "k", "width"),
    [(2, 3, 3), (2, 4, 3), (2, 2, 6), (3, 2, 3), (3, 3, 2), (5, 1, 4), (7, 1, 4)],
)
@pytest.mark.parametrize("seed", range(3))
def test_howell_membership_matches_exhaustive_span(ell, k, width, seed):
    modulus = ell**k
    assert modulus**width <= 4096
    rng = random.Random(f"{ell}:{k}:{width}:{seed}")
    # scale by powers of l so the spans are not all of (Z/l^k)^width
    rows = [
        [rng.randrange(modulus) * ell ** rng.randrange(k) % modulus for _ in range(width)]
        for _ in range(rng.randint(1, 3))
    ]
    form = howell_form(rows, ell, k, width)
    span = exhaustive_span(rows, modulus, width)
    assert form.size == len(span)
    for vector in itertools.product(range(modulus), repeat=width):
        assert form.contains(vector) is (vector in span), vector

    sample = rng.sample(sorted(span), min(len(span), 4))
    assert howell_form(rows + [list(v) for v in sample], ell, k, width).rows == form.rows
