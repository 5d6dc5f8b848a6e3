"""Nullspace, inverse, exponent and product of matrices over Z[X] and Q[X].

Each operation specializes ``X`` to integer places, solves the integer
problem there, and lifts the results back.  Specialized nullspace vectors
and inverses are only determined up to a scalar that depends on the place,
so those lifts go through degree detection; the product needs no such step.
All kernel and inverse results are verified exactly before they are returned.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from math import lcm
from typing import Callable, Sequence

from . import poly as P
from .intlinalg import KernelRankError, SingularMatrixError, int_inverse, int_nullspace_rank1
from .polymatrix import PolyMatrix, SparsePolyMatrix, matmul, vec_mat
from .polyrecover import (CRTContext, DetectionError, RecoveryError, RecoveryPolicy, _candidates,
                          _recover_on, gamma_components, place_windows, primes_from,
                          recover_from_values)

log = logging.getLogger(__name__)

MAX_WINDOWS = 12


class LiftError(ArithmeticError):
    pass


class BreakCheckError(LiftError):
    """A lifted entry was confirmed at a fresh place but rejected by the break check."""

    def __init__(self, entry, poly):
        super().__init__(f"entry {entry} confirmed as {poly} but rejected by the break check")
        self.entry = entry
        self.poly = poly


@dataclass
class PolyInverse:
    B: PolyMatrix
    c: P.Poly


@dataclass
class LiftSettings:
    place_start: float = 30
    window_delta: float = 1.0
    degree_bound: int = 200
    jobs: int = 1
    prime: int = 251

    @classmethod
    def from_policy(cls, policy: RecoveryPolicy | None, jobs: int = 1) -> "LiftSettings":
        if policy is None:
            return cls(jobs=jobs)
        return cls(place_start=policy.window_start, degree_bound=policy.degree_bound, jobs=jobs,
                   prime=policy.prime)


def _dense(A) -> PolyMatrix:
    return A.to_dense() if isinstance(A, SparsePolyMatrix) else A


def _integral(A: PolyMatrix) -> PolyMatrix:
    """Multiply by a positive integer to clear denominators (does not change kernels or inverses up to scalars)."""
    den = lcm(1, *(Fraction(c).denominator for e in A.entries() for c in e))
    return A.scale(den) if den != 1 else A


def _nullspace_task(rows, prime=251):
    try:
        return int_nullspace_rank1(rows, prime)
    except KernelRankError:
        return None


def _inverse_task(rows, prime=251):
    try:
        B, c = int_inverse(rows, prime)
    except SingularMatrixError:
        return None
    return [c] + [x for row in B for x in row]


def _solutions(task, A: PolyMatrix, window: list[int], jobs: int):
    specs = [A.specialize(b) for b in window]
    if jobs > 1 and len(window) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            yield from zip(window, ex.map(task, specs))
    else:
        for b, s in zip(window, specs):
            yield b, task(s)


def _lift_rescaled(task, A: PolyMatrix, detect_index: Callable[[list[list[int]]], int | None],
                   assemble: Callable[[list[P.Poly]], object | None], settings: LiftSettings):
    """Shared driver: solve at places, detect the degree of one entry, recover all, verify."""
    for wnum, window in enumerate(place_windows(settings.place_start, settings.window_delta)):
        if wnum >= MAX_WINDOWS:
            break
        places: list[int] = []
        sols: list[list[int]] = []
        tried: set = set()
        for b, sol in _solutions(partial(task, prime=settings.prime), A, window, settings.jobs):
            if sol is None:
                log.debug("place %d discarded", b)
                continue
            places.append(b)
            sols.append(sol)
            if len(places) < 3:
                continue
            k = detect_index(sols)
            if k is None:
                continue
            signed = [s if s[k] > 0 else [-x for x in s] for s in sols]
            by_place = dict(zip(places, signed))
            try:
                comps = gamma_components(places, [s[k] for s in signed])
            except DetectionError:
                continue
            for comp in _candidates(comps, 3):
                key = (comp.degree, comp.places)
                if key in tried:
                    continue
                tried.add(key)
                result = _recover_all(comp, by_place, k, settings.degree_bound)
                if result is None:
                    continue
                out = assemble(result)
                if out is not None:
                    return out
                log.debug("verification failed on places %s", comp.places)
    raise LiftError("no place window produced a verified lift")


def _recover_all(comp, by_place: dict, k: int, degree_bound: int) -> list[P.Poly] | None:
    pl = list(comp.places)
    n = len(by_place[pl[0]])
    try:
        fk = _recover_on(comp, {b: by_place[b][k] for b in pl}, None)
    except RecoveryError:
        return None
    ctx = CRTContext(pl)
    out = []
    for idx in range(n):
        if idx == k:
            out.append(fk)
            continue
        try:
            out.append(recover_from_values(pl, [by_place[b][idx] for b in pl], degree_bound, None, ctx))
        except RecoveryError:
            return None
    return out


def _primitive_vector(polys: list[P.Poly]) -> list[P.Poly]:
    m = PolyMatrix([polys])
    return m.primitive().rows[0]


def _first_common_nonzero(sols):
    n = len(sols[0])
    for idx in range(n):
        if all(s[idx] for s in sols):
            return idx
    return None


def _leading_sign_normalize(vec: list[P.Poly]) -> list[P.Poly]:
    for e in vec:
        if e:
            return vec if e[-1] > 0 else [P.neg(x) for x in vec]
    return vec


def poly_nullspace_rank1(A, policy: RecoveryPolicy | None = None, jobs: int = 1) -> list[P.Poly]:
    """Primitive ``v`` over Z[X] with ``v . A = 0``, for ``A`` whose left kernel has rank one."""
    A = _integral(_dense(A))
    settings = LiftSettings.from_policy(policy, jobs)
    if A.nrows == 0:
        raise ValueError("empty matrix")

    def assemble(polys):
        if not any(polys):
            return None
        v = _leading_sign_normalize(_primitive_vector(polys))
        if all(not e for e in vec_mat(v, A)):
            return v
        return None

    return _lift_rescaled(_nullspace_task, A, _first_common_nonzero, assemble, settings)


def poly_inverse(A, policy: RecoveryPolicy | None = None, jobs: int = 1) -> PolyInverse:
    """``(B, c)`` over Z[X] with ``B . A = c * I``, ``gcd(B, c) = 1`` and ``c`` with positive leading coefficient."""
    A0 = _dense(A)
    if A0.nrows != A0.ncols:
        raise ValueError("matrix is not square")
    n = A0.nrows
    A = _integral(A0)
    den = Fraction(A.content()) / Fraction(A0.content()) if not A0.is_zero() else Fraction(1)
    settings = LiftSettings.from_policy(policy, jobs)

    def assemble(polys):
        if not polys[0]:
            return None
        # B . A = c*I with A = den * A0, so (den * B) . A0 = c*I
        flat = [polys[0]] + [P.scale(e, den) for e in polys[1:]]
        whole = PolyMatrix([flat]).primitive().rows[0]
        c, rest = whole[0], whole[1:]
        if c[-1] < 0:
            c, rest = P.neg(c), [P.neg(e) for e in rest]
        B = PolyMatrix([rest[i * n:(i + 1) * n] for i in range(n)])
        BA = matmul(B, A0)
        for i in range(n):
            for j in range(n):
                if BA.rows[i][j] != (c if i == j else P.ZERO):
                    return None
        return PolyInverse(B, c)

    return _lift_rescaled(_inverse_task, A, lambda sols: 0, assemble, settings)


def poly_exponent(A, policy: RecoveryPolicy | None = None) -> P.Poly:
    """Primitive part of the ``c`` from ``poly_inverse``."""
    return P.primitive_part(poly_inverse(A, policy).c)


def _entry_degree_bounds(A: PolyMatrix, B: PolyMatrix):
    degA = [[P.degree(e) for e in row] for row in A.rows]
    degB = [[P.degree(e) for e in row] for row in B.rows]
    out = {}
    for i in range(A.nrows):
        for j in range(B.ncols):
            d = -1
            for k in range(A.ncols):
                if degA[i][k] >= 0 and degB[k][j] >= 0:
                    d = max(d, degA[i][k] + degB[k][j])
            out[i, j] = d
    return out


def poly_matmul_lifted(A, B, break_check: Callable[[int, int, P.Poly], bool] | None = None,
                       entries=None, max_places: int = 400) -> PolyMatrix:
    """Product ``A . B`` assembled from integer products at small places.

    An entry is accepted once the polynomial recovered from the places so
    far predicts the value at the next place and passes ``break_check``.
    With ``entries`` only those ``(i, j)`` positions are computed; the rest
    are left zero.
    """
    A, B = _dense(A), _dense(B)
    if A.ncols != B.nrows:
        raise ValueError("inner dimensions differ")
    denA = lcm(1, *(Fraction(c).denominator for e in A.entries() for c in e))
    denB = lcm(1, *(Fraction(c).denominator for e in B.entries() for c in e))
    Ai, Bi = A.scale(denA), B.scale(denB)
    dbound = _entry_degree_bounds(Ai, Bi)
    wanted = sorted(entries) if entries is not None else sorted(dbound)
    result = PolyMatrix.zeros(A.nrows, B.ncols)
    pending = [e for e in wanted if dbound[e] >= 0]
    values: dict = {e: [] for e in pending}
    candidate: dict = {}
    rejected: dict = {}
    places: list[int] = []
    for b in primes_from(2):
        if not pending:
            break
        if len(places) >= max_places:
            raise LiftError(f"entries {pending[:5]} not lifted after {max_places} places")
        Ab, Bb = Ai.specialize(b), Bi.specialize(b)
        vals = {}
        for (i, j) in pending:
            vals[i, j] = sum(x * Bb[k][j] for k, x in enumerate(Ab[i]) if x)
        still = []
        for e in pending:
            val = vals[e]
            cand = candidate.get(e)
            if cand is not None and P.evaluate(cand, b) == val:
                result.rows[e[0]][e[1]] = cand
                continue
            rej = rejected.get(e)
            if rej is not None and P.evaluate(rej, b) == val:
                raise BreakCheckError(e, rej)
            still.append(e)
        pending = still
        places.append(b)
        if not pending:
            break
        ctx = CRTContext(places)
        for e in pending:
            values[e].append(vals[e])
            candidate[e] = rejected[e] = None
            try:
                f = recover_from_values(places, values[e], dbound[e], None, ctx)
            except RecoveryError:
                continue
            if not all(isinstance(c, int) for c in f):
                continue
            if break_check is not None and f and not break_check(e[0], e[1], f):
                rejected[e] = f
                continue
            candidate[e] = f
    scale = Fraction(1, denA * denB)
    return result.scale(scale) if scale != 1 else result
