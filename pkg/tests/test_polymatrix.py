from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hecke_gram import poly as P
from hecke_gram.polymatrix import (PolyMatrix, SparsePolyMatrix, format_matrix, matmul, parse_matrix,
                                   read_matrix, vec_mat, write_matrix)
import oracles

entry = st.lists(st.integers(-9, 9), max_size=4).map(P.trim)


def matrices(r=3, c=3):
    return st.lists(st.lists(entry, min_size=c, max_size=c), min_size=r, max_size=r).map(PolyMatrix)


@given(matrices(), st.booleans())
def test_format_roundtrip(M, sparse):
    assert parse_matrix(format_matrix(M, sparse)) == M


def test_dense_format_layout():
    M = PolyMatrix([[(1, 0, 1), ()], [(0, -1), (2,)]])
    assert format_matrix(M) == "2 2 dense\n1,0,1;0\n0,-1;2\n"
    assert format_matrix(M, sparse=True) == "2 2 sparse\n1 1 1,0,1\n2 1 0,-1\n2 2 2\n"


def test_laurent_entries_parse_into_shift():
    M = parse_matrix("1 2 dense\n-1:1,0,1;2\n")
    assert M.shift == -1
    assert M.rows == [[(1, 0, 1), (0, 2)]]
    assert format_matrix(M) == "1 2 dense\n-1:1,0,1;2\n"


def test_bad_files():
    with pytest.raises(ValueError):
        parse_matrix("")
    with pytest.raises(ValueError):
        parse_matrix("2 2 dense\n1;1\n")
    with pytest.raises(ValueError):
        parse_matrix("1 1 banded\n1\n")


def test_file_roundtrip(tmp_path):
    M = PolyMatrix([[(Fraction(1, 2),), (3, 4)]])
    write_matrix(M, tmp_path / "m.txt")
    assert read_matrix(tmp_path / "m.txt") == M


@given(matrices(2, 3), matrices(3, 2))
def test_matmul_matches_schoolbook(A, B):
    assert matmul(A, B).rows == oracles.poly_matmul(A.rows, B.rows)
    assert matmul(A.to_sparse(), B).rows == matmul(A, B).rows
    assert (A * B) == matmul(A, B)


@given(matrices())
def test_sparse_dense_agree(M):
    S = M.to_sparse()
    assert S.to_dense() == M
    assert S.transpose().to_dense() == M.transpose()
    assert S.specialize(3) == M.specialize(3)
    v = [(1,), (0, 1), (2, 0, 1)]
    assert S.row_times(v) == vec_mat(v, M)
    assert all(e for e in S.data.values())


def test_content_and_primitive():
    M = PolyMatrix([[(2, 4), (6,)], [(), (Fraction(4, 3),)]])
    assert M.content() == Fraction(2, 3)
    assert M.primitive() == PolyMatrix([[(3, 6), (9,)], [(), (2,)]])


def test_stats_helpers():
    M = PolyMatrix([[(1, 0, 1), (0, -3)], [(0, -3), (1, 0, 1)]])
    assert M.is_symmetric() and M.max_degree() == 2 and M.max_abs_coeff() == 3
    assert M.is_integral()
    assert not PolyMatrix.identity(2).is_zero() and PolyMatrix.zeros(2).is_zero()
    assert PolyMatrix.from_ints([[1, 0], [0, 2]]) == PolyMatrix.diagonal([(1,), (2,)])
