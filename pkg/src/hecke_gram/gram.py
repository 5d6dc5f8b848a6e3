"""Primitive Gram matrices of invariant bilinear forms for W-graph representations.

Pipeline: pick a Benson-Curtis subset ``J`` and seed vertex; build a
Schreier tree at a small specialization; replay it over ``Z[v]`` for the
representation (seed ``e_i``) and for its dual (seed spanning the kernel of
the distinguished element); strip row powers of ``v`` and column contents;
invert the core of the first basis, multiply by the core of the second,
reassemble, make primitive and verify the intertwining relation exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

from . import poly as P
from .intlinalg import DEFAULT_PRIME, int_det
from .polylinalg import BreakCheckError, poly_exponent, poly_inverse, poly_matmul_lifted, \
    poly_nullspace_rank1
from .polymatrix import PolyMatrix, matmul
from .polyrecover import RecoveryPolicy
from .stdbasis import SchreierTree, replay_schreier
from .wgraph import (CoxeterSystem, WGraph, default_subset, distinguished_action, rep_matrix,
                     seed_vertex, specialized_schreier_tree, validate_wgraph)

log = logging.getLogger(__name__)


class GramDataError(ValueError):
    """The input contradicts a structural fact the pipeline relies on."""


class GramVerificationError(ArithmeticError):
    pass


@dataclass(frozen=True)
class GramStats:
    degree: int
    absval: int
    diagonal: bool
    detprimes: tuple[int, ...] | None  # None when det P(0) = 0

    def row(self, name: str) -> str:
        diag = "y" if self.diagonal else "n"
        primes = "0" if self.detprimes is None else " ".join(map(str, self.detprimes))
        return f"{name},{self.degree},{self.absval},{diag},{primes}"


@dataclass
class FactoredBasis:
    d: list[int]
    core: PolyMatrix
    col: list[P.Poly]

    @property
    def R(self) -> PolyMatrix:
        return PolyMatrix.diagonal([P.monomial(k) for k in self.d])

    @property
    def C(self) -> PolyMatrix:
        return PolyMatrix.diagonal(self.col)


@dataclass
class GramResult:
    P: PolyMatrix
    m_P: int
    stats: GramStats
    J: tuple[int, ...]
    seed: int
    tree: SchreierTree | None = None
    lengths: list[int] = field(default_factory=list)
    place: int | None = None
    basis: FactoredBasis | None = None
    dual_basis: FactoredBasis | None = None
    dual_seed: list[P.Poly] | None = None
    bhat: P.Poly = P.ONE
    notes: list[str] = field(default_factory=list)


def _poly_gcd_all(polys) -> P.Poly:
    nz = [f for f in polys if f]
    if not nz:
        return P.ZERO
    return reduce(P.gcd_subresultant, nz)


def _poly_lcm(f: P.Poly, g: P.Poly) -> P.Poly:
    return P.exact_div(P.mul(f, g), P.gcd_subresultant(f, g))


def factor_basis(B: PolyMatrix) -> FactoredBasis:
    """Write ``B = R . core . C`` with ``R`` diagonal powers of ``v`` and ``C`` diagonal column contents."""
    d = []
    rows = []
    for i, row in enumerate(B.rows):
        g = _poly_gcd_all(row)
        if not g:
            raise GramDataError(f"row {i + 1} of the basis is zero")
        k = P.valuation(g)
        if len(g) - 1 != k:
            raise GramDataError(f"row {i + 1} has non-monomial content {P.format_poly(g)}")
        d.append(k)
        rows.append([P.shift(e, -k) if e else P.ZERO for e in row])
    cols = []
    for j in range(B.ncols):
        c = _poly_gcd_all(r[j] for r in rows)
        if not c:
            raise GramDataError(f"column {j + 1} of the basis is zero")
        cols.append(c)
        if c != P.ONE:
            for r in rows:
                if r[j]:
                    r[j] = P.exact_div(r[j], c)
    return FactoredBasis(d, PolyMatrix(rows), cols)


def _palindromic_check(i, j, f):
    return isinstance(P.palindromic_class(f), P.Palindromic)


def _vector_palindromic_exponent(vec) -> int | None:
    ks = set()
    for e in vec:
        if e:
            c = P.palindromic_class(e)
            if not isinstance(c, P.Palindromic):
                return None
            ks.add(c.k)
    return ks.pop() if len(ks) == 1 else None


def _int_factor_primes(n: int) -> tuple[int, ...]:
    n = abs(n)
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def gram_stats(Pm: PolyMatrix) -> GramStats:
    P0 = Pm.specialize(0)
    n = Pm.nrows
    diagonal = all(P0[i][j] == 0 for i in range(n) for j in range(n) if i != j)
    det = int_det(P0)
    primes = None if det == 0 else _int_factor_primes(det)
    return GramStats(Pm.max_degree(), Pm.max_abs_coeff(), diagonal, primes)


def check_balanced(Pm: PolyMatrix) -> bool:
    """True when ``det P(0)`` is nonzero."""
    return int_det(Pm.specialize(0)) != 0


def verify_gram(g: WGraph, Pm: PolyMatrix) -> bool:
    if not Pm.is_symmetric():
        return False
    for s in g.generators():
        M = rep_matrix(g, s)
        if matmul(M, Pm) != matmul(Pm, M.transpose()):
            return False
    return True


def _primitive_sign(Q: PolyMatrix) -> PolyMatrix:
    g = _poly_gcd_all(Q.entries())
    if not g:
        raise GramVerificationError("the assembled form is zero")
    Pm = PolyMatrix([[P.exact_div(e, g) if e else P.ZERO for e in row] for row in Q.rows])
    P0 = Pm.specialize(0)
    tr = sum(P0[i][i] for i in range(Pm.nrows))
    if tr == 0:
        # fall back to the first nonzero entry's leading coefficient
        lead = next(e[-1] for e in Pm.entries() if e)
        negate = lead < 0
    else:
        negate = tr < 0
    return -Pm if negate else Pm


def _trivial_result(g: WGraph, J) -> GramResult:
    Pm = PolyMatrix([[P.ONE]])
    return GramResult(Pm, 0, gram_stats(Pm), tuple(J), 0, SchreierTree(((0, 0),)), [0], None)


def compute_gram(g: WGraph, cox: CoxeterSystem | None = None, J: Sequence[int] | None = None,
                 policy: RecoveryPolicy | None = None, jobs: int = 1,
                 places: Sequence[int] = (1, 2, 3)) -> GramResult:
    """Compute and verify the primitive Gram matrix of the representation afforded by ``g``."""
    if cox is not None:
        report = validate_wgraph(g, cox)
        if not report.ok:
            raise GramDataError(f"invalid W-graph:\n{report}")
    if J is None:
        J, i = default_subset(g)
    else:
        J = tuple(sorted(J))
        i = seed_vertex(g, J)
    if g.dim == 1:
        return _trivial_result(g, J)
    if not J:
        raise GramDataError("the empty subset only qualifies for one-dimensional graphs")
    notes: list[str] = []

    tree, lengths, b = specialized_schreier_tree(g, J, places,
                                                 first_prime=policy.prime if policy else DEFAULT_PRIME)
    D = distinguished_action(g, J)
    u1d = poly_nullspace_rank1(D, policy, jobs)
    m_u = _vector_palindromic_exponent(u1d)
    if m_u is None or m_u % 2:
        raise GramDataError("the dual seed vector is not palindromic with an even exponent")

    X = [rep_matrix(g, s) for s in g.generators()]
    Xd = [M.transpose() for M in X]
    seed = [P.ZERO] * g.dim
    seed[i] = P.ONE
    B = PolyMatrix(replay_schreier(tree, seed, X))
    Bd = PolyMatrix(replay_schreier(tree, u1d, Xd))
    fb, fbd = factor_basis(B), factor_basis(Bd)

    inv = poly_inverse(fb.core, policy, jobs)
    n = g.dim
    lower = [(r, c) for r in range(n) for c in range(r + 1)]
    if fb.d == fbd.d:
        right = fbd.core
        check = _palindromic_check
    else:
        notes.append("row v-powers of the two bases differ; palindromicity check relaxed")
        diffs = [dd - d for d, dd in zip(fb.d, fbd.d)]
        low = min(diffs)
        right = PolyMatrix([[P.shift(e, k - low) if e else P.ZERO for e in row]
                            for row, k in zip(fbd.core.rows, diffs)])
        check = None
    try:
        inner = poly_matmul_lifted(inv.B, right, check, entries=lower)
    except BreakCheckError as exc:
        notes.append(f"palindromicity check rejected a confirmed entry ({exc}); relaxed")
        inner = poly_matmul_lifted(inv.B, right, None, entries=lower)

    L = reduce(_poly_lcm, fb.col, P.ONE)
    chat = [P.exact_div(L, c) for c in fb.col]
    Q = PolyMatrix.zeros(n)
    for r, c in lower:
        e = inner.rows[r][c]
        if e:
            e = P.mul(P.mul(chat[r], e), fbd.col[c])
        Q.rows[r][c] = Q.rows[c][r] = e
    Pm = _primitive_sign(Q)
    if not verify_gram(g, Pm):
        notes.append("lifted product failed verification; recomputed directly")
        full = matmul(inv.B, right)
        Q = PolyMatrix([[P.mul(P.mul(chat[r], full.rows[r][c]), fbd.col[c]) if full.rows[r][c] else P.ZERO
                         for c in range(n)] for r in range(n)])
        Pm = _primitive_sign(Q)
        if not verify_gram(g, Pm):
            raise GramVerificationError("computed matrix does not intertwine the representation")

    return GramResult(Pm, Pm.max_degree(), gram_stats(Pm), tuple(J), i, tree, lengths, b,
                      fb, fbd, u1d, inv.c, notes)


@dataclass
class Diagnostic:
    name: str
    held: bool
    detail: str = ""


_CYCLOTOMIC: dict[int, P.Poly] = {}


def _cyclotomic(k: int) -> P.Poly:
    if k not in _CYCLOTOMIC:
        f = P.sub(P.monomial(k), P.ONE)
        for dd in range(1, k):
            if k % dd == 0:
                f = P.exact_div(f, _cyclotomic(dd))
        _CYCLOTOMIC[k] = f
    return _CYCLOTOMIC[k]


def _monic_palindromic_factors(f: P.Poly, max_degree: int = 12) -> tuple[bool, str]:
    """Probe whether every irreducible factor of ``f`` is monic and palindromic.

    Cyclotomic factors are split off first; a cofactor of degree at most
    ``max_degree`` must then be monic and palindromic itself (a weaker test).
    """
    _, f = P.content_and_primitive(f)
    f = f[P.valuation(f):]  # powers of v are units
    if P.degree(f) <= 0:
        return True, "constant"
    rest = f
    found = []
    k = 1
    while P.degree(rest) > 0 and k <= 4 * P.degree(f) + 2:
        phi = _cyclotomic(k)
        if len(phi) <= len(rest):
            q, r = P.divmod_poly(rest, phi)
            if not r:
                rest = q
                found.append(k)
                continue
        k += 1
    if 1 in found:
        return False, "divisible by v-1"
    if P.degree(rest) <= 0:
        return True, "cyclotomic factors " + ",".join(map(str, found))
    ok = abs(rest[-1]) == 1 and P.is_palindromic(rest)
    return ok, f"non-cyclotomic cofactor of degree {P.degree(rest)}"


def diagnostics(res: GramResult, g: WGraph, probe_exponents: bool = True) -> list[Diagnostic]:
    """Check the empirical structure statements; never raises on a violation."""
    out = []
    if res.basis is None:
        return [Diagnostic("trivial", True, "one-dimensional representation")]
    d, dd = res.basis.d, res.dual_basis.d
    bad = [k + 1 for k, (x, l) in enumerate(zip(d, res.lengths)) if x > l + 1]
    out.append(Diagnostic("row powers bounded by length + 1", not bad, f"violations at {bad}" if bad else ""))
    if probe_exponents:
        B = matmul(matmul(res.basis.R, res.basis.core), res.basis.C)
        Bd = matmul(matmul(res.dual_basis.R, res.dual_basis.core), res.dual_basis.C)
        for name, M in (("basis exponent", B), ("dual basis exponent", Bd)):
            ok, detail = _monic_palindromic_factors(poly_exponent(M))
            out.append(Diagnostic(f"{name} has monic palindromic factors", ok, detail))
    out.append(Diagnostic("row powers agree for both bases", d == dd,
                          "used and held" if d == dd else f"{d} vs {dd}"))
    if res.notes:
        out.append(Diagnostic("pipeline notes", False, "; ".join(res.notes)))
    for r in out:
        if not r.held:
            log.warning("%s: %s", r.name, r.detail)
    return out
