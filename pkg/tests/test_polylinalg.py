import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hecke_gram import poly as P
from hecke_gram.polylinalg import (BreakCheckError, poly_exponent, poly_inverse, poly_matmul_lifted,
                                   poly_nullspace_rank1)
from hecke_gram.polymatrix import PolyMatrix, matmul, vec_mat
import oracles

X = P.X


def test_nullspace_examples():
    assert poly_nullspace_rank1(PolyMatrix([[X], [X]])) == [(1,), (-1,)]
    assert poly_nullspace_rank1(PolyMatrix([[(1,)], [X]])) == [X, (-1,)]
    A = PolyMatrix([[(1,), ()], [(), (1,)], [X, (0, 0, 1)]])
    assert poly_nullspace_rank1(A) == [X, (0, 0, 1), (-1,)]


def test_inverse_examples():
    inv = poly_inverse(PolyMatrix.identity(3))
    assert inv.B == PolyMatrix.identity(3) and inv.c == (1,)
    inv = poly_inverse(PolyMatrix([[X, (1,)], [(1,), X]]))
    assert inv.c == (-1, 0, 1)
    assert inv.B == PolyMatrix([[X, (-1,)], [(-1,), X]])


@pytest.mark.parametrize("A, e", [
    (PolyMatrix.identity(2), (1,)),
    (PolyMatrix([[X, (1,)], [(1,), X]]), (-1, 0, 1)),
    (PolyMatrix([[(2,), ()], [(), X]]), (0, 1)),
])
def test_exponent_examples(A, e):
    assert poly_exponent(A) == e


def test_lifted_product_examples():
    A = PolyMatrix([[X, (1,)]])
    B = PolyMatrix([[(1,)], [X]])
    assert poly_matmul_lifted(A, B) == PolyMatrix([[(0, 2)]])
    C = PolyMatrix([[(1, 2), (3,)], [(), (0, 0, 5)]])
    assert poly_matmul_lifted(C, PolyMatrix.identity(2)) == C


def test_lifted_product_entries_subset():
    A = PolyMatrix([[(1, 1), (2,)], [(3,), (0, 1)]])
    full = matmul(A, A)
    part = poly_matmul_lifted(A, A, entries=[(1, 0)])
    assert part.rows[1][0] == full.rows[1][0]
    assert part.rows[0][0] == ()


def test_break_check_rejection_confirmed():
    A = PolyMatrix([[(1, 1)]])
    with pytest.raises(BreakCheckError):
        poly_matmul_lifted(A, A, break_check=lambda i, j, f: False)


def _random_polymatrix(rng, r, c, deg, bound):
    return PolyMatrix([[P.trim([rng.randint(-bound, bound) for _ in range(rng.randint(0, deg + 1))])
                        for _ in range(c)] for _ in range(r)])


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_lifted_product_matches_direct(seed):
    rng = random.Random(seed)
    l, m, n = (rng.randint(1, 5) for _ in range(3))
    A = _random_polymatrix(rng, l, m, 6, 100)
    B = _random_polymatrix(rng, m, n, 6, 100)
    expected = oracles.poly_matmul(A.rows, B.rows)
    got = poly_matmul_lifted(A, B)
    assert got.rows == expected
    for b in rng.sample(range(-30, 30), 10):
        assert got.specialize(b) == oracles.matmul(A.specialize(b), B.specialize(b))


def _rank_deficient(rng, n):
    """n+1 rows over Z[X] with a one-dimensional left kernel."""
    while True:
        rows = _random_polymatrix(rng, n, n, 2, 5)
        if oracles.rank(rows.specialize(7)) == n:
            break
    coeffs = [P.trim([rng.randint(-3, 3) for _ in range(2)]) for _ in range(n)]
    extra = vec_mat(coeffs, rows)
    return PolyMatrix(rows.rows + [extra])


@given(st.integers(0, 10**6), st.integers(1, 4))
@settings(max_examples=15, deadline=None)
def test_nullspace_residual(seed, n):
    rng = random.Random(seed)
    A = _rank_deficient(rng, n)
    v = poly_nullspace_rank1(A)
    assert all(not e for e in vec_mat(v, A))
    assert any(v)
    assert PolyMatrix([v]).content() == 1


def _to_sympy_matrix(A):
    return sympy.Matrix([[oracles.to_sympy(e).as_expr() for e in row] for row in A.rows])


@given(st.integers(0, 10**6), st.integers(1, 4))
@settings(max_examples=15, deadline=None)
def test_exponent_divides_determinant(seed, n):
    rng = random.Random(seed)
    A = _random_polymatrix(rng, n, n, 2, 6)
    d = _to_sympy_matrix(A).det()
    if d == 0:
        return
    inv = poly_inverse(A)
    assert matmul(inv.B, A) == PolyMatrix.identity(n).scale_poly(inv.c)
    e = oracles.to_sympy(poly_exponent(A))
    det = sympy.Poly(d, oracles._v, domain="QQ")
    assert det.rem(e).is_zero
    if det.degree() <= 8:
        for fac, _ in det.factor_list()[1]:
            if fac.degree() > 0:
                assert e.rem(fac).is_zero
