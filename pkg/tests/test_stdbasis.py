import random

import pytest
from hypothesis import given, settings, strategies as st

from hecke_gram import poly as P
from hecke_gram.intlinalg import matmul as imatmul
from hecke_gram.polylinalg import poly_nullspace_rank1
from hecke_gram.polymatrix import PolyMatrix, matmul, read_matrix
from hecke_gram.stdbasis import (FractionSpan, ReducibleActionError, SchreierTree, hom_between,
                                 replay_schreier, standard_basis)
from hecke_gram.wgraph import distinguished_action, rep_matrix, specialized_schreier_tree
from conftest import load_golden, load_wgraph
import oracles

A2_AT_1 = [[[-1, 0], [1, 1]], [[1, 1], [0, -1]]]
E6_TREE = ((0, 0), (1, 4), (2, 2), (2, 3), (2, 5), (3, 3), (3, 5), (4, 5), (6, 5), (9, 4))


def test_trivial_representation():
    basis, tree = standard_basis([[[1]]], [1])
    assert basis == [[1]] and tree.entries == ((0, 0),)


def test_a2_reflection_at_one():
    basis, tree = standard_basis(A2_AT_1, [1, 0])
    assert tree.entries == ((0, 0), (1, 2))
    assert basis == [[1, 0], [1, 1]]


def test_e6_tree_and_lengths(e6_10s):
    g, _ = e6_10s
    tree, lengths, b = specialized_schreier_tree(g, (1, 2, 3, 5, 6))
    assert b == 1
    assert tree.entries == E6_TREE
    assert lengths == [0, 1, 2, 2, 2, 3, 3, 3, 4, 5]


def test_replay_reproduces_basis():
    rng = random.Random(7)
    gens = [[[rng.randint(-3, 3) for _ in range(4)] for _ in range(4)] for _ in range(2)]
    seed = [1, 0, 0, 0]
    try:
        basis, tree = standard_basis(gens, seed)
    except ReducibleActionError:
        pytest.skip("random action happened to be reducible")
    assert replay_schreier(tree, seed, gens) == basis
    assert replay_schreier(tree, [5 * x for x in seed], gens) == [[5 * x for x in r] for r in basis]


def test_replay_e6_over_polynomials(e6_10s):
    g, _ = e6_10s
    X = [rep_matrix(g, s) for s in g.generators()]
    seed = [P.ZERO] * 10
    seed[9] = P.ONE
    B = PolyMatrix(replay_schreier(SchreierTree(E6_TREE), seed, X))
    assert B == load_golden("B")


def test_tree_is_seed_independent():
    _, t1 = standard_basis(A2_AT_1, [1, 0])
    _, t2 = standard_basis(A2_AT_1, [-3, 0])
    assert t1 == t2


def test_tree_serialization(tmp_path):
    t = SchreierTree(E6_TREE)
    assert t.format().splitlines()[:2] == ["0 0", "1 4"]
    t.write(tmp_path / "tree.txt")
    assert SchreierTree.read(tmp_path / "tree.txt") == t
    assert t.words()[-1] == (4, 2, 3, 5, 4)
    with pytest.raises(ValueError):
        SchreierTree(((1, 1),))
    with pytest.raises(ValueError):
        SchreierTree(((0, 0), (2, 1)))


def test_replay_dimension_mismatch():
    with pytest.raises(ValueError):
        replay_schreier(SchreierTree(((0, 0),)), [1, 0, 0], A2_AT_1)


def test_reducible_action_reported():
    with pytest.raises(ReducibleActionError):
        standard_basis([[[1, 0], [0, 1]]], [1, 0])


def test_fraction_span_matches_integer_span():
    gens = [[[0, 1, 0], [0, 0, 1], [1, 0, 0]]]
    b1, t1 = standard_basis(gens, [1, 2, 3])
    b2, t2 = standard_basis(gens, [1, 2, 3], span_factory=FractionSpan)
    assert t1 == t2 and b1 == b2


@given(st.integers(0, 10**6), st.integers(2, 6))
@settings(max_examples=30, deadline=None)
def test_basis_is_independent_and_full(seed, n):
    rng = random.Random(seed)
    gens = [[[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)] for _ in range(2)]
    v = [rng.randint(-2, 2) for _ in range(n)]
    if not any(v):
        return
    try:
        basis, tree = standard_basis(gens, v)
    except ReducibleActionError:
        return
    assert oracles.rank(basis) == n == len(tree)
    for k, (parent, gen) in enumerate(tree.entries[1:], start=1):
        assert basis[k] == imatmul([basis[parent - 1]], gens[gen - 1])[0]


def _a2_polynomial_generators():
    g = load_wgraph("A2_reflection")
    return [rep_matrix(g, s).to_dense() for s in g.generators()]


def test_hom_between_same_action_is_scalar():
    X = _a2_polynomial_generators()
    tree = SchreierTree(((0, 0), (1, 2)))
    C = hom_between(X, X, [P.ONE, P.ZERO], [P.ONE, P.ZERO], tree)
    assert C == PolyMatrix.identity(2)


def test_hom_between_conjugate_recovers_transform():
    X = _a2_polynomial_generators()
    T = PolyMatrix.from_ints([[2, 1], [1, 1]])
    Tinv = PolyMatrix.from_ints([[1, -1], [-1, 2]])
    Xc = [matmul(matmul(Tinv, M), T) for M in X]
    tree = SchreierTree(((0, 0), (1, 2)))
    seed = [P.ONE, P.ZERO]
    C = hom_between(X, Xc, seed, [e for e in matmul(PolyMatrix([seed]), T).rows[0]], tree)
    assert C == T


def test_hom_between_dual_is_gram_matrix():
    g = load_wgraph("A2_reflection")
    X = [rep_matrix(g, s).to_dense() for s in g.generators()]
    Xd = [M.transpose() for M in X]
    u1d = poly_nullspace_rank1(distinguished_action(g, (1,)))
    C = hom_between(X, Xd, [P.ONE, P.ZERO], u1d, SchreierTree(((0, 0), (1, 2))))
    assert C == PolyMatrix([[(1, 0, 1), (0, -1)], [(0, -1), (1, 0, 1)]])
