import pytest

from hecke_gram import poly as P
from hecke_gram.gram import (GramDataError, GramStats, check_balanced, compute_gram, diagnostics,
                             factor_basis, gram_stats, verify_gram)
from hecke_gram.polylinalg import poly_exponent
from hecke_gram.polymatrix import PolyMatrix, matmul
from hecke_gram.wgraph import WGraph, bruteforce_P0, rep_matrix
from conftest import FIXTURES, load_coxeter, load_golden, load_wgraph

V = (0, 1)


def proportional(A: PolyMatrix, B: PolyMatrix) -> bool:
    """Cross-multiplication test for ``A = f/g * B`` with ``f, g`` nonzero."""
    a, b = list(A.entries()), list(B.entries())
    k = next((i for i, e in enumerate(a) if e), None)
    if k is None or not b[k]:
        return False
    return all(P.mul(x, b[k]) == P.mul(y, a[k]) for x, y in zip(a, b))


@pytest.fixture(scope="module")
def e6_result(e6_10s):
    g, cox = e6_10s
    return compute_gram(g, cox, (1, 2, 3, 5, 6))


def test_factor_basis_golden():
    fb = factor_basis(load_golden("B"))
    assert fb.d == [0, 1, 2, 2, 2, 3, 3, 3, 4, 5]
    assert all(c == P.ONE for c in fb.col)
    assert fb.core == load_golden("Btilde")


def test_factor_basis_identity():
    fb = factor_basis(PolyMatrix.identity(3))
    assert fb.d == [0, 0, 0] and fb.core == PolyMatrix.identity(3) and fb.C == PolyMatrix.identity(3)


def test_factor_basis_diagonal_powers():
    fb = factor_basis(PolyMatrix.diagonal([V, (0, 0, 0, 1)]))
    assert fb.R == PolyMatrix.diagonal([V, (0, 0, 0, 1)])
    assert fb.core == PolyMatrix.identity(2) and fb.C == PolyMatrix.identity(2)


def test_factor_basis_column_content():
    B = PolyMatrix([[(1, 1), (1,)], [(), (2,)]])
    fb = factor_basis(B)
    assert fb.col == [(1, 1), (1,)]
    assert matmul(matmul(fb.R, fb.core), fb.C) == B


def test_factor_basis_rejects_non_monomial_rows():
    with pytest.raises(GramDataError):
        factor_basis(PolyMatrix([[(1, 1), (1, 1)], [(1,), ()]]))
    with pytest.raises(GramDataError):
        factor_basis(PolyMatrix([[(1,), ()], [(), ()]]))


def test_e6_10s_golden(e6_result):
    assert e6_result.P == load_golden("P")
    assert e6_result.stats == GramStats(6, 3, True, ())
    assert e6_result.stats.row("10s") == "10s,6,3,y,"
    assert e6_result.bhat == P.ONE
    assert e6_result.basis.core == load_golden("Btilde")


def test_e6_10s_diagnostics(e6_result, e6_10s):
    g, _ = e6_10s
    diags = diagnostics(e6_result, g)
    assert all(d.held for d in diags), diags
    agree = next(d for d in diags if "agree" in d.name)
    assert agree.detail == "used and held"


def test_a2_reflection_matches_oracle():
    g, c = load_wgraph("A2_reflection"), load_coxeter("A2")
    res = compute_gram(g, c)
    assert res.P == PolyMatrix([[(1, 0, 1), (0, -1)], [(0, -1), (1, 0, 1)]])
    assert proportional(res.P, bruteforce_P0(g, c))
    assert res.basis.d == res.dual_basis.d == [0, 1]


def test_sign_rep():
    res = compute_gram(load_wgraph("A2_sign"), load_coxeter("A2"))
    assert res.P == PolyMatrix([[P.ONE]])
    assert res.stats == GramStats(0, 1, True, ())
    assert diagnostics(res, load_wgraph("A2_sign"))[0].held


def test_invalid_graph_rejected():
    g = load_wgraph("A2_reflection")
    bad = WGraph(g.dim, g.nsgens, [frozenset({1}), frozenset({1})], g.edges)
    with pytest.raises(GramDataError):
        compute_gram(bad, load_coxeter("A2"))


@pytest.mark.parametrize("name, cox", FIXTURES)
def test_fixture_invariants(name, cox):
    g, c = load_wgraph(name), load_coxeter(cox)
    res = compute_gram(g, c)
    Pm = res.P
    assert verify_gram(g, Pm) and Pm.is_symmetric()
    assert Pm.content() == 1
    assert all(isinstance(P.palindromic_class(e), P.Palindromic) and P.palindromic_class(e).k == res.m_P
               for e in Pm.entries() if e)
    assert res.m_P % 2 == 0 and gram_stats(Pm).degree == res.m_P
    assert sum(Pm.specialize(0)[i][i] for i in range(g.dim)) > 0
    if res.basis is not None:
        m_u = P.palindromic_class(next(e for e in res.dual_seed if e)).k
        assert res.m_P <= m_u + P.degree(poly_exponent(res.basis.core))


def test_gram_stats_examples():
    assert gram_stats(PolyMatrix.identity(4)) == GramStats(0, 1, True, ())
    M = PolyMatrix([[(2, 0, 2), (0, 1)], [(0, 1), (3,)]])
    assert gram_stats(M) == GramStats(2, 3, True, (2, 3))
    M = PolyMatrix([[(1,), (1,)], [(1,), (1,)]])
    st = gram_stats(M)
    assert st == GramStats(0, 1, False, None) and st.row("x") == "x,0,1,n,0"


def test_check_balanced():
    assert not check_balanced(PolyMatrix([[V]]))
    assert check_balanced(PolyMatrix([[(1,), ()], [(), (2,)]]))
    assert check_balanced(load_golden("P"))


def test_verify_rejects_wrong_form():
    g = load_wgraph("A2_reflection")
    assert not verify_gram(g, PolyMatrix.identity(2))
    assert not verify_gram(g, PolyMatrix([[(1, 0, 1), (0, -1)], [(0, 1), (1, 0, 1)]]))


def test_other_subsets_proportional(e6_10s):
    from hecke_gram.wgraph import benson_curtis_subsets
    g, cox = e6_10s
    for J, _ in benson_curtis_subsets(g)[-3:]:
        res = compute_gram(g, cox, J)
        assert res.J == J and res.P == load_golden("P")
