"""W-graphs, the Hecke algebra matrices they define, and small-group oracles.

Vertices are numbered from 0 internally and from 1 in files; generators
are always numbered from 1.  The matrix of ``v*T_s`` acts on row vectors
from the right:

* entry ``(j, j)`` is ``-1`` if ``s`` is in ``I_j`` and ``v**2`` otherwise;
* entry ``(j, i)`` is ``v * m_ij`` when ``s`` is in ``I_i`` but not in ``I_j``.

File formats::

    wgraph <d> <|S|>
    I <i> : <generators>
    E <i> <j> : <laurent coeffs> [<s>]

    coxeter <|S|>
    <m(1,2) ... m(1,n)>
    <m(2,3) ... >
    ...
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import poly as P
from .intlinalg import DEFAULT_PRIME
from .polymatrix import PolyMatrix, SparsePolyMatrix, matmul
from .stdbasis import ReducibleActionError, SchreierTree, standard_basis

V2 = (0, 0, 1)
MINUS_ONE = (-1,)


class WGraphFormatError(ValueError):
    pass


@dataclass(frozen=True)
class CoxeterSystem:
    """Coxeter matrix for generators ``1..rank``; ``m[s-1][t-1]`` is the order of ``st``."""

    m: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.m)
        for s in range(n):
            if len(self.m[s]) != n or self.m[s][s] != 1:
                raise ValueError("Coxeter matrix must be square with unit diagonal")
            for t in range(s):
                if self.m[s][t] != self.m[t][s] or self.m[s][t] < 2:
                    raise ValueError(f"bad Coxeter entry m({t + 1},{s + 1})")

    @property
    def rank(self) -> int:
        return len(self.m)

    def order(self, s: int, t: int) -> int:
        return self.m[s - 1][t - 1]

    @classmethod
    def from_upper(cls, rank: int, upper: Sequence[int]) -> "CoxeterSystem":
        m = [[1] * rank for _ in range(rank)]
        it = iter(upper)
        for s in range(rank):
            for t in range(s + 1, rank):
                m[s][t] = m[t][s] = next(it)
        return cls(tuple(tuple(r) for r in m))

    @classmethod
    def from_edges(cls, rank: int, edges: dict) -> "CoxeterSystem":
        """Generators not listed commute; ``edges`` maps ``(s, t)`` to ``m(s, t)``."""
        m = [[1 if s == t else 2 for t in range(rank)] for s in range(rank)]
        for (s, t), val in edges.items():
            m[s - 1][t - 1] = m[t - 1][s - 1] = val
        return cls(tuple(tuple(r) for r in m))

    def format(self) -> str:
        lines = [f"coxeter {self.rank}"]
        for s in range(self.rank - 1):
            lines.append(" ".join(str(self.m[s][t]) for t in range(s + 1, self.rank)))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "CoxeterSystem":
        toks = [t for ln in text.splitlines() if not ln.strip().startswith("#") for t in ln.split()]
        if len(toks) < 2 or toks[0] != "coxeter":
            raise WGraphFormatError("Coxeter file must start with 'coxeter <rank>'")
        rank = int(toks[1])
        upper = [int(t) for t in toks[2:]]
        if len(upper) != rank * (rank - 1) // 2:
            raise WGraphFormatError(f"expected {rank * (rank - 1) // 2} Coxeter entries, got {len(upper)}")
        return cls.from_upper(rank, upper)

    @classmethod
    def read(cls, path) -> "CoxeterSystem":
        return cls.parse(Path(path).read_text())


@dataclass
class WGraph:
    dim: int
    nsgens: int
    I: list[frozenset]
    # (i, j) -> m_ij, 0-based vertices
    edges: dict = field(default_factory=dict)
    # (i, j, s) -> m_ij^s overriding the default
    overrides: dict = field(default_factory=dict)

    def mu(self, i: int, j: int, s: int) -> P.Laurent:
        m = self.overrides.get((i, j, s))
        if m is None:
            m = self.edges.get((i, j), P.Laurent(0, P.ZERO))
        return m

    def generators(self) -> range:
        return range(1, self.nsgens + 1)

    def format(self) -> str:
        lines = [f"wgraph {self.dim} {self.nsgens}"]
        for i, Ii in enumerate(self.I):
            lines.append(f"I {i + 1} : " + " ".join(str(s) for s in sorted(Ii)))
        for (i, j), m in sorted(self.edges.items()):
            lines.append(f"E {i + 1} {j + 1} : {P.format_laurent(m)}")
        for (i, j, s), m in sorted(self.overrides.items()):
            lines.append(f"E {i + 1} {j + 1} : {P.format_laurent(m)} {s}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "WGraph":
        lines = [ln.strip() for ln in text.splitlines()
                 if ln.strip() and not ln.strip().startswith("#")]
        if not lines:
            raise WGraphFormatError("empty W-graph file")
        head = lines[0].split()
        if len(head) != 3 or head[0] != "wgraph":
            raise WGraphFormatError(f"bad header {lines[0]!r}")
        d, ns = int(head[1]), int(head[2])
        I: list = [frozenset()] * d
        edges, overrides = {}, {}
        for ln in lines[1:]:
            left, _, right = ln.partition(":")
            parts = left.split()
            try:
                if parts[0] == "I":
                    i = int(parts[1]) - 1
                    if not 0 <= i < d:
                        raise WGraphFormatError(f"vertex out of range: {ln!r}")
                    I[i] = frozenset(int(s) for s in right.split())
                elif parts[0] == "E":
                    i, j = int(parts[1]) - 1, int(parts[2]) - 1
                    if not (0 <= i < d and 0 <= j < d):
                        raise WGraphFormatError(f"vertex out of range: {ln!r}")
                    rtoks = right.split()
                    m = P.parse_laurent(rtoks[0])
                    if len(rtoks) == 2:
                        overrides[i, j, int(rtoks[1])] = m
                    elif len(rtoks) == 1:
                        edges[i, j] = m
                    else:
                        raise WGraphFormatError(f"bad edge line {ln!r}")
                else:
                    raise WGraphFormatError(f"unknown record {ln!r}")
            except (IndexError, ValueError) as exc:
                if isinstance(exc, WGraphFormatError):
                    raise
                raise WGraphFormatError(f"cannot parse {ln!r}: {exc}") from exc
        return cls(d, ns, I, edges, overrides)

    @classmethod
    def read(cls, path) -> "WGraph":
        return cls.parse(Path(path).read_text())

    def write(self, path) -> None:
        Path(path).write_text(self.format())


def _check_generator(g: WGraph, s: int):
    if not 1 <= s <= g.nsgens:
        raise ValueError(f"generator {s} out of range 1..{g.nsgens}")


def rep_matrix(g: WGraph, s: int) -> SparsePolyMatrix:
    """Sparse matrix of ``v*T_s``."""
    _check_generator(g, s)
    data = {}
    for j in range(g.dim):
        data[j, j] = MINUS_ONE if s in g.I[j] else V2
    keys = set(g.edges) | {(i, j) for (i, j, t) in g.overrides if t == s}
    for (i, j) in keys:
        if s in g.I[i] and s not in g.I[j]:
            m = g.mu(i, j, s)
            if not m.is_zero():
                data[j, i] = (P.Laurent(1, P.ONE) * m).to_poly()
    return SparsePolyMatrix(g.dim, g.dim, data)


def dual_rep_matrix(g: WGraph, s: int) -> SparsePolyMatrix:
    return rep_matrix(g, s).transpose()


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        return "valid" if self.ok else "\n".join(self.violations)


def _alternating(A, B, length: int):
    out = None
    for k in range(length):
        f = A if k % 2 == 0 else B
        out = f if out is None else matmul(out, f)
    return out


def validate_wgraph(g: WGraph, cox: CoxeterSystem | None = None) -> ValidationReport:
    rep = ValidationReport()
    for i, Ii in enumerate(g.I):
        bad = [s for s in Ii if not 1 <= s <= g.nsgens]
        if bad:
            rep.violations.append(f"I-set of vertex {i + 1} contains unknown generators {bad}")
    if cox is not None and cox.rank != g.nsgens:
        rep.violations.append(f"Coxeter rank {cox.rank} differs from {g.nsgens} generators")
    items = [((i, j, None), m) for (i, j), m in g.edges.items()]
    items += [((i, j, s), m) for (i, j, s), m in g.overrides.items()]
    for (i, j, s), m in items:
        where = f"edge {i + 1}->{j + 1}" + (f" for s{s}" if s is not None else "")
        if i == j:
            rep.violations.append(f"{where}: loops are not allowed")
        if m.star() != m:
            rep.violations.append(f"{where}: coefficient {P.format_laurent(m)} is not bar-invariant")
        if not m.is_zero() and m.val + 1 < 1:
            rep.violations.append(f"{where}: v*m has a non-positive power of v")
    if rep.violations:
        return rep
    mats = {s: rep_matrix(g, s).to_dense() for s in g.generators()}
    ident = PolyMatrix.identity(g.dim)
    for s, M in mats.items():
        lhs = matmul(M - ident.scale_poly(V2), M + ident)
        if not lhs.is_zero():
            rep.violations.append(f"quadratic relation fails for s{s}")
    if cox is not None and cox.rank == g.nsgens:
        for s, t in itertools.combinations(g.generators(), 2):
            m = cox.order(s, t)
            if _alternating(mats[s], mats[t], m) != _alternating(mats[t], mats[s], m):
                rep.violations.append(f"braid relation of length {m} fails for (s{s}, s{t})")
    return rep


def benson_curtis_subsets(g: WGraph) -> list[tuple[tuple[int, ...], int]]:
    """All ``J`` contained in exactly one ``I_i``, with that vertex ``i`` (0-based).

    Sorted lexicographically by ``J``.
    """
    out = []
    gens = list(g.generators())
    for r in range(len(gens) + 1):
        for J in itertools.combinations(gens, r):
            Js = set(J)
            hits = [i for i in range(g.dim) if Js <= g.I[i]]
            if len(hits) == 1:
                out.append((J, hits[0]))
    out.sort()
    return out


def default_subset(g: WGraph) -> tuple[tuple[int, ...], int]:
    subsets = benson_curtis_subsets(g)
    if not subsets:
        raise ValueError("no Benson-Curtis subset exists for this W-graph")
    return subsets[0]


def seed_vertex(g: WGraph, J: Sequence[int]) -> int:
    Js = set(J)
    hits = [i for i in range(g.dim) if Js <= g.I[i]]
    if len(hits) != 1:
        raise ValueError(f"J={tuple(J)} is contained in {len(hits)} I-sets, need exactly one")
    return hits[0]


def distinguished_action(g: WGraph, J: Sequence[int]) -> PolyMatrix:
    """``sum_{s in J} (v*T_s)^dual + |J| * I``, i.e. ``v`` times the dual action of the distinguished element."""
    if not J:
        raise ValueError("J must be nonempty")
    D = PolyMatrix.identity(g.dim).scale(len(J))
    for s in J:
        D = D + dual_rep_matrix(g, s).to_dense()
    return D


def specialized_schreier_tree(g: WGraph, J: Sequence[int], places: Sequence[int] = (1, 2, 3),
                              first_prime: int = DEFAULT_PRIME):
    """Schreier tree from the seed ``e_i`` using the matrices of ``v*T_s`` at ``v = b``.

    Returns ``(tree, lengths, b)`` for the first place ``b`` that yields a full basis.
    """
    i = seed_vertex(g, J)
    seed = [0] * g.dim
    seed[i] = 1
    mats = [rep_matrix(g, s) for s in g.generators()]
    for b in places:
        gens = [m.specialize(b) for m in mats]
        try:
            _, tree = standard_basis(gens, seed, first_prime=first_prime)
        except ReducibleActionError:
            continue
        return tree, tree.lengths(), b
    raise ReducibleActionError(f"no place in {tuple(places)} gives a full standard basis")


def _reflection_rep(cox: CoxeterSystem):
    n = cox.rank
    Bf = [[-math.cos(math.pi / cox.m[s][t]) if s != t else 1.0 for t in range(n)] for s in range(n)]
    mats = []
    for s in range(n):
        # sigma_s(a_t) = a_t - 2 B(s, t) a_s ; rows are images of basis vectors
        M = [[1.0 if r == c else 0.0 for c in range(n)] for r in range(n)]
        for t in range(n):
            M[t][s] -= 2 * Bf[s][t]
        mats.append(M)
    return mats


def enumerate_group(cox: CoxeterSystem, size_cap: int = 2000) -> list[tuple[int, ...]]:
    """One reduced word (generators 1-based) per group element, in breadth-first order."""
    gens = _reflection_rep(cox)
    n = cox.rank

    def key(M):
        return tuple(round(x, 6) + 0.0 for row in M for x in row)

    def mul(A, B):
        return [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)] for i in range(n)]

    ident = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    seen = {key(ident)}
    words = [()]
    queue = deque([(ident, ())])
    while queue:
        M, w = queue.popleft()
        for s in range(n):
            N = mul(M, gens[s])
            k = key(N)
            if k not in seen:
                seen.add(k)
                words.append(w + (s + 1,))
                if len(words) > size_cap:
                    raise OverflowError(f"group has more than {size_cap} elements")
                queue.append((N, w + (s + 1,)))
    return words


def bruteforce_P0(g: WGraph, cox: CoxeterSystem, size_cap: int = 2000) -> PolyMatrix:
    """``sum_w X(T_w) X(T_w)^tr`` times ``v**(2 l(w0))``, divided by the largest common power of ``v``.

    Only usable for small groups; serves as an independent oracle for the Gram matrix.
    """
    words = enumerate_group(cox, size_cap)
    top = max(len(w) for w in words)
    gens = {s: rep_matrix(g, s).to_dense() for s in g.generators()}
    mats: dict[tuple, PolyMatrix] = {(): PolyMatrix.identity(g.dim)}
    total = PolyMatrix.zeros(g.dim)
    for w in words:
        if w:
            mats[w] = matmul(mats[w[:-1]], gens[w[-1]])
        Xw = mats[w]
        # X(vT_w) = v^l X(T_w), so v^(2 top) X(T_w) X(T_w)^tr = v^(2 top - 2 l) X(vT_w) X(vT_w)^tr
        term = matmul(Xw, Xw.transpose())
        total = total + term.scale_poly(P.monomial(2 * (top - len(w))))
    low = min(P.valuation(e) for e in total.entries() if e)
    return PolyMatrix([[P.shift(e, -low) if e else P.ZERO for e in row] for row in total.rows])


def longest_length(cox: CoxeterSystem, size_cap: int = 2000) -> int:
    return max(len(w) for w in enumerate_group(cox, size_cap))
