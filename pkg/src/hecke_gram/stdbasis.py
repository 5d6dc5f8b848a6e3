"""Standard bases, Schreier trees and homomorphisms between equivalent representations.

Row vectors are acted on from the right: ``u . X(s)``.  A standard basis is
spun up from a seed by breadth-first search over the generators; the search
is recorded in a Schreier tree, a list of ``(parent, generator)`` pairs that
replays the basis without any linear algebra.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import reduce
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import poly as P
from .intlinalg import BadPrimeError, DEFAULT_PRIME, IntegerSpan, with_prime_retries
from .polylinalg import poly_inverse, poly_matmul_lifted
from .polymatrix import PolyMatrix, SparsePolyMatrix, matmul, vec_mat

log = logging.getLogger(__name__)


class ReducibleActionError(ArithmeticError):
    """The seed does not generate the whole space under the generators."""


@dataclass(frozen=True)
class SchreierTree:
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.entries or self.entries[0] != (0, 0):
            raise ValueError("a Schreier tree starts with (0, 0)")
        for k, (parent, gen) in enumerate(self.entries[1:], start=2):
            if not 1 <= parent < k or gen < 1:
                raise ValueError(f"invalid tree entry {k}: {(parent, gen)}")

    def __len__(self):
        return len(self.entries)

    def lengths(self) -> list[int]:
        """Depth of every node, i.e. the length of the word it encodes."""
        out = [0]
        for parent, _ in self.entries[1:]:
            out.append(out[parent - 1] + 1)
        return out

    def words(self) -> list[tuple[int, ...]]:
        out: list[tuple[int, ...]] = [()]
        for parent, gen in self.entries[1:]:
            out.append(out[parent - 1] + (gen,))
        return out

    def format(self) -> str:
        return "".join(f"{p} {g}\n" for p, g in self.entries)

    @classmethod
    def parse(cls, text: str) -> "SchreierTree":
        entries = []
        for ln in text.splitlines():
            ln = ln.strip()
            if ln and not ln.startswith("#"):
                p, g = ln.split()
                entries.append((int(p), int(g)))
        return cls(tuple(entries))

    def write(self, path) -> None:
        Path(path).write_text(self.format())

    @classmethod
    def read(cls, path) -> "SchreierTree":
        return cls.parse(Path(path).read_text())


class FractionSpan:
    """Exact membership over any field whose elements support ``/`` (e.g. Fraction)."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list = []
        self._echelon: list[tuple[int, list]] = []

    def __len__(self):
        return len(self.rows)

    def add(self, vec) -> bool:
        r = [Fraction(x) if isinstance(x, int) else x for x in vec]
        for piv, row in self._echelon:
            c = r[piv]
            if c:
                r = [a - c * b for a, b in zip(r, row)]
        piv = next((k for k, x in enumerate(r) if x), None)
        if piv is None:
            return False
        inv = 1 / r[piv]
        self._echelon.append((piv, [x * inv for x in r]))
        self.rows.append(list(vec))
        return True


def _vec_times(vec, M):
    if isinstance(M, (PolyMatrix, SparsePolyMatrix)):
        return vec_mat(vec, M)
    n = len(M[0])
    out = [0] * n
    for i, x in enumerate(vec):
        if x:
            row = M[i]
            for j in range(n):
                if row[j]:
                    out[j] += x * row[j]
    return out


def _spin(generators, seed, span) -> tuple[list, SchreierTree]:
    n = len(seed)
    if not span.add(seed):
        raise ValueError("seed vector is zero")
    basis = [list(seed)]
    tree = [(0, 0)]
    i = 0
    while i < len(basis) and len(basis) < n:
        for j, g in enumerate(generators, start=1):
            w = _vec_times(basis[i], g)
            if span.add(w):
                basis.append(w)
                tree.append((i + 1, j))
                if len(basis) == n:
                    break
        i += 1
    if len(basis) < n:
        raise ReducibleActionError(f"seed spans only a {len(basis)}-dimensional submodule of dimension {n}")
    return basis, SchreierTree(tuple(tree))


def standard_basis(generators: Sequence, seed: Sequence, span_factory=None,
                   first_prime: int = DEFAULT_PRIME):
    """Spin ``seed`` under the generators; return the basis rows and the Schreier tree.

    For integer data the default membership test is the p-adic one, which is
    rerun with another prime if the chosen prime turns out to be bad.
    ``span_factory(ncols)`` may supply another exact membership oracle.
    """
    n = len(seed)
    if span_factory is not None:
        return _spin(generators, seed, span_factory(n))
    if all(isinstance(x, int) for x in seed) and all(
            isinstance(x, int) for g in generators for row in g for x in row):
        return with_prime_retries(lambda p: _spin(generators, seed, IntegerSpan(n, p)), first_prime)
    return _spin(generators, seed, FractionSpan(n))


def replay_schreier(tree: SchreierTree, seed: Sequence, generators: Sequence) -> list:
    """Rebuild the basis rows ``u_k = u_parent . X(gen)`` recorded in ``tree``."""
    if tree.entries[0] != (0, 0):
        raise ValueError("tree must start with (0, 0)")
    dim = len(seed)
    for g in generators:
        rows = g.nrows if isinstance(g, (PolyMatrix, SparsePolyMatrix)) else len(g)
        if rows != dim:
            raise ValueError("generator and seed dimensions differ")
    basis = [list(seed)]
    for parent, gen in tree.entries[1:]:
        basis.append(_vec_times(basis[parent - 1], generators[gen - 1]))
    return basis


def hom_between(X: Sequence, Xd: Sequence, seed, seed_d, tree: SchreierTree) -> PolyMatrix:
    """``C`` with ``X(s) . C = C . Xd(s)`` for all generators, via ``C = B^-1 . B'``.

    ``X`` and ``Xd`` are polynomial generator matrices of two equivalent
    irreducible representations, and ``seed``/``seed_d`` span corresponding
    one-dimensional kernels.  ``C`` is divided by the polynomial gcd of its
    entries and signed so that its first nonzero entry has positive leading
    coefficient.
    """
    B = PolyMatrix(replay_schreier(tree, seed, X))
    Bd = PolyMatrix(replay_schreier(tree, seed_d, Xd))
    inv = poly_inverse(B)
    C = poly_matmul_lifted(inv.B, Bd).primitive()
    g = reduce(P.gcd_subresultant, [e for e in C.entries() if e])
    lead = next(e for e in C.entries() if e)[-1]
    if lead < 0:
        g = P.neg(g)
    C = PolyMatrix([[P.exact_div(e, g) if e else P.ZERO for e in row] for row in C.rows])
    for g, gd in zip(X, Xd):
        if matmul(g, C) != matmul(C, gd):
            raise ArithmeticError("intertwining check failed")
    return C


def basis_matrix(rows) -> PolyMatrix:
    return PolyMatrix([[P.trim(e) if isinstance(e, tuple) else P.trim([e]) for e in row] for row in rows])
