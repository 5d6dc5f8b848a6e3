"""Exact Gram matrices for Iwahori-Hecke algebra representations given by W-graphs."""

from .gram import GramResult, check_balanced, compute_gram, diagnostics, factor_basis, gram_stats
from .intlinalg import (NOT_IN_CLOSURE, int_det, int_exponent, int_inverse, int_nullspace_rank1,
                        padic_decompose)
from .poly import Laurent, palindromic_class
from .polylinalg import poly_exponent, poly_inverse, poly_matmul_lifted, poly_nullspace_rank1
from .polymatrix import PolyMatrix, SparsePolyMatrix, read_matrix, write_matrix
from .polyrecover import RecoveryPolicy, detect_degree, recover_from_values, recover_poly
from .rational import recover_rational
from .stdbasis import SchreierTree, replay_schreier, standard_basis
from .wgraph import (CoxeterSystem, WGraph, benson_curtis_subsets, bruteforce_P0, rep_matrix,
                     specialized_schreier_tree, validate_wgraph)

__all__ = [
    "GramResult", "check_balanced", "compute_gram", "diagnostics", "factor_basis", "gram_stats",
    "NOT_IN_CLOSURE", "int_det", "int_exponent", "int_inverse", "int_nullspace_rank1", "padic_decompose",
    "Laurent", "palindromic_class",
    "poly_exponent", "poly_inverse", "poly_matmul_lifted", "poly_nullspace_rank1",
    "PolyMatrix", "SparsePolyMatrix", "read_matrix", "write_matrix",
    "RecoveryPolicy", "detect_degree", "recover_from_values", "recover_poly",
    "recover_rational", "SchreierTree", "replay_schreier", "standard_basis",
    "CoxeterSystem", "WGraph", "benson_curtis_subsets", "bruteforce_P0", "rep_matrix",
    "specialized_schreier_tree", "validate_wgraph",
]
