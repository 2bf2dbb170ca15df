import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chevmor.algebra import GF, FieldElement, Matrix, ff_nonsquare, smallest_irreducible
from chevmor.errors import DimMismatch, Singular, ZeroInverse

FIELDS = [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3), (7, 2)]


def poly_mul_oracle(a, b, modulus, p):
    """Schoolbook product of coefficient tuples reduced by a monic modulus."""
    k = len(modulus)
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            prod[deg] = 0
            for j, m in enumerate(modulus):
                prod[deg - k + j] = (prod[deg - k + j] - c * m) % p
    return tuple(prod[:k])


def test_modulus_choice():
    assert smallest_irreducible(3, 2) == (1, 0, 1)
    assert GF(3, 2).modulus == (1, 0, 1)
    # x^2 + 1 splits mod 5 (2^2 = -1); x^2 + x + 1 has discriminant -3, a non-square
    assert GF(5, 2).modulus == (1, 1, 1)


def test_nonsquares():
    assert ff_nonsquare(GF(3)).code == 2
    assert ff_nonsquare(GF(7)).code == 3
    z = ff_nonsquare(GF(3, 2))
    assert z.coeffs == (1, 1)
    assert not z.is_square()


@pytest.mark.parametrize("p,k", FIELDS)
def test_mul_matches_polynomial_oracle(p, k):
    F = GF(p, k)
    rng = random.Random(p * 10 + k)
    for _ in range(200):
        a, b = rng.randrange(F.q), rng.randrange(F.q)
        expect = poly_mul_oracle(F.coeffs(a), F.coeffs(b), F.modulus[:-1], p)
        assert F.coeffs(F.mul(a, b)) == expect


@pytest.mark.parametrize("p,k", FIELDS)
def test_field_axioms_exhaustive_inverse_and_sqrt(p, k):
    F = GF(p, k)
    squares = {F.mul(x, x) for x in range(F.q)}
    for a in range(1, F.q):
        assert F.mul(a, F.inv(a)) == 1
        r = F.sqrt(a)
        if a in squares:
            assert F.mul(r, r) == a
        else:
            assert r is None
    # half the nonzero elements are squares
    assert len(squares - {0}) == (F.q - 1) // 2


def test_zero_inverse():
    with pytest.raises(ZeroInverse):
        GF(5).inv(0)
    with pytest.raises(ZeroDivisionError):
        FieldElement(GF(5), 0).inverse()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_ring_laws(pk, data):
    F = GF(*pk)
    a, b, c = (FieldElement(F, data.draw(st.integers(0, F.q - 1))) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a
    assert a * b == b * a
    assert -(-a) == a


def test_element_text_form():
    F = GF(3, 2)
    x = F.element((2, 1))
    assert str(x) == "2,1"
    assert F.element(x.coeffs) == x


def det_oracle(F, rows):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = 1
        for i in range(n):
            term = F.mul(term, rows[i][perm[i]])
        total = F.sub(total, term) if inversions % 2 else F.add(total, term)
    return total


@pytest.mark.parametrize("p,k", [(3, 1), (5, 1), (3, 2), (7, 2)])
def test_matrix_det_inverse_and_product(p, k):
    F = GF(p, k)
    rng = random.Random(p + k)
    for n in (1, 2, 3, 4):
        for _ in range(10):
            rows = [[rng.randrange(F.q) for _ in range(n)] for _ in range(n)]
            M = Matrix(F, rows)
            assert M.det().code == det_oracle(F, rows)
            if M.det().code:
                assert (M @ M.inv()).is_identity()
            else:
                with pytest.raises(Singular):
                    M.inv()


@pytest.mark.parametrize("p,k", [(3, 1), (7, 1), (3, 2), (5, 3), (31, 2)])
def test_matmul_against_scalar_loop(p, k):
    F = GF(p, k)
    rng = random.Random(7)
    a = np.array([[rng.randrange(F.q) for _ in range(5)] for _ in range(4)], dtype=F.dtype)
    b = np.array([[rng.randrange(F.q) for _ in range(3)] for _ in range(5)], dtype=F.dtype)
    got = F.matmul(a, b)
    for i in range(4):
        for j in range(3):
            acc = 0
            for t in range(5):
                acc = F.add(acc, F.mul(int(a[i, t]), int(b[t, j])))
            assert int(got[i, j]) == acc


def test_dim_mismatch():
    F = GF(5)
    with pytest.raises(DimMismatch):
        Matrix.identity(F, 2) @ Matrix.identity(F, 3)


def test_nullspace_and_rref():
    F = GF(7)
    a = np.array([[1, 2, 3], [2, 4, 6]], dtype=F.dtype)
    basis = F.nullspace(a)
    assert len(basis) == 2
    for v in basis:
        assert not F.matmul(a, v.reshape(3, 1)).any()
    _, pivots = F.rref(a)
    assert pivots == [0]


def test_scalar_value():
    F = GF(5)
    assert Matrix.identity(F, 3).scale(FieldElement(F, 2)).scalar_value().code == 2
    assert Matrix.unit(F, 3, 0, 1).scalar_value() is None
