"""Recovering polynomials with rational coefficients from their values.

Values at pairwise coprime places ``b_1..b_k`` determine each coefficient
modulo ``prod(b_j)`` via Chinese remaindering; rational recovery turns the
residue into a coefficient as long as it is small enough.  The degree
detection routines handle values that were rescaled by unknown positive
scalars, which is what specialized linear algebra over ``Z[X]`` produces.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from typing import Callable, Iterable, Iterator, Sequence

from . import poly as P
from .rational import recover_rational, symmetric_mod

log = logging.getLogger(__name__)


class RecoveryError(ArithmeticError):
    """Recovery did not succeed with the places available; more places are needed."""


class DegreeBoundExceeded(RecoveryError):
    pass


class DenominatorBoundExceeded(RecoveryError):
    pass


class DetectionError(RecoveryError):
    pass


class UnusablePlaceError(RecoveryError):
    """A value (or an intermediate quotient) has a denominator sharing a factor with its place."""

    def __init__(self, place: int):
        super().__init__(f"denominator not invertible modulo {place}")
        self.place = place


def primes_from(start: int) -> Iterator[int]:
    n = max(start, 2)
    while True:
        if _is_prime(n):
            yield n
        n += 1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7):
        if n % q == 0:
            return n == q
    f = 11
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass
class RecoveryPolicy:
    degree_bound: int = 200
    # recovered coefficients must have a denominator dividing this; None disables the check
    denominator_bound: int | None = 20
    place_start: int = 2
    # first window of the prime places used when lifting matrix kernels and inverses
    window_start: float = 30
    prime: int = 251

    def __post_init__(self):
        if self.degree_bound < 0:
            raise ValueError("degree bound must be nonnegative")
        if self.denominator_bound is not None and self.denominator_bound < 1:
            raise ValueError("denominator bound must be positive")

    def places(self) -> Iterator[int]:
        """Default place schedule: primes from ``place_start`` that do not divide the denominator bound."""
        for p in primes_from(self.place_start):
            if self.denominator_bound is None or self.denominator_bound % p:
                yield p


class CRTContext:
    """Precomputed idempotents for a fixed list of pairwise coprime moduli."""

    def __init__(self, moduli: Sequence[int]):
        self.moduli = list(moduli)
        for a, b in itertools.combinations(self.moduli, 2):
            if gcd(a, b) != 1:
                raise ValueError(f"moduli {a} and {b} are not coprime")
        self.modulus = prod(self.moduli)
        self._idem = []
        for b in self.moduli:
            rest = self.modulus // b
            self._idem.append(rest * pow(rest, -1, b) if b > 1 else 0)

    def lift(self, residues: Sequence[int]) -> int:
        """Symmetric representative modulo the product."""
        acc = sum(r * e for r, e in zip(residues, self._idem))
        return symmetric_mod(acc, self.modulus)


def crt_lift(pairs: Sequence[tuple[int, int]]) -> tuple[int, int]:
    """Combine ``[(a_j, b_j)]`` into ``(a, prod b_j)``."""
    ctx = CRTContext([b for _, b in pairs])
    return ctx.lift([a for a, _ in pairs]), ctx.modulus


def _residue(value, b: int) -> int:
    value = Fraction(value)
    if gcd(value.denominator, b) != 1:
        raise UnusablePlaceError(b)
    return value.numerator * pow(value.denominator, -1, b) % b


def recover_from_values(places: Sequence[int], values: Sequence, degree_bound: int = 200,
                        denominator_bound: int | None = None, ctx: CRTContext | None = None) -> P.Poly:
    """Recover ``f`` with ``f(places[j]) == values[j]``, one coefficient at a time.

    Raises DegreeBoundExceeded when more than ``degree_bound + 1``
    coefficients would be needed, and RecoveryError when a coefficient cannot
    be recovered from the residue.
    """
    if ctx is None:
        ctx = CRTContext(places)
    vals = [Fraction(x) for x in values]
    coeffs: list = []
    while any(vals):
        if len(coeffs) > degree_bound:
            raise DegreeBoundExceeded(f"no termination within degree {degree_bound}")
        r = ctx.lift([_residue(x, b) for x, b in zip(vals, places)])
        rec = recover_rational(r, ctx.modulus)
        if rec is None:
            raise RecoveryError("coefficient too large for the current places")
        y, x = rec
        if denominator_bound is not None and denominator_bound % x:
            raise DenominatorBoundExceeded(f"denominator {x} does not divide {denominator_bound}")
        z = Fraction(y, x)
        coeffs.append(z)
        vals = [(v - z) / b for v, b in zip(vals, places)]
    return P.trim(coeffs)


def recover_poly(evaluator: Callable[[int], object], policy: RecoveryPolicy | None = None,
                 places: Iterable[int] | None = None, max_places: int = 500) -> P.Poly:
    """Recover an unknown polynomial from an evaluation oracle.

    Places are added one at a time; every candidate is confirmed at the next
    fresh place before it is returned.
    """
    policy = policy or RecoveryPolicy()
    schedule = iter(places) if places is not None else policy.places()
    used: list[int] = []
    values: list = []
    candidate = None
    for b in schedule:
        val = evaluator(b)
        if candidate is not None and P.evaluate(candidate, b) == val:
            return candidate
        used.append(b)
        values.append(val)
        try:
            candidate = recover_from_values(used, values, policy.degree_bound, policy.denominator_bound)
        except UnusablePlaceError as exc:
            log.debug("place %d dropped", exc.place)
            k = used.index(exc.place)
            del used[k], values[k]
            candidate = None
        except RecoveryError:
            candidate = None
        if len(used) >= max_places:
            break
    if candidate is not None and places is not None:
        # finite schedule exhausted: no fresh place left to confirm on
        return candidate
    raise RecoveryError("place schedule exhausted")


# ---------------------------------------------------------------------------
# degree detection


def _log_abs(x) -> float:
    x = Fraction(x)
    return math.log(abs(x.numerator)) - math.log(x.denominator)


def _at_least_half_above(k: int, b_i: int, val_i, b_j: int, val_j) -> bool:
    """Exactly decide ``ln|val_j/val_i| / ln(b_j/b_i) >= k + 1/2``."""
    r2 = (Fraction(val_j) / Fraction(val_i)) ** 2
    q = Fraction(b_j, b_i) ** (2 * k + 1)
    return r2 >= q if b_j > b_i else r2 <= q


def slope_degree(b_i: int, val_i, b_j: int, val_j) -> int:
    """Nearest integer to ``(ln|val_j| - ln|val_i|) / (ln b_j - ln b_i)``, halves rounded up."""
    t = (_log_abs(val_j) - _log_abs(val_i)) / (math.log(b_j) - math.log(b_i))
    k = math.floor(t)
    if abs(t - k - 0.5) < 1e-6:
        # too close to call in floating point
        return k + 1 if _at_least_half_above(k, b_i, val_i, b_j, val_j) else k
    return math.floor(t + 0.5)


def pairwise_degrees(places: Sequence[int], values: Sequence) -> dict[tuple[int, int], int]:
    """``d_ij`` for every pair of positions ``i < j``."""
    _check_values(values)
    logs = [_log_abs(v) for v in values]
    out = {}
    for i, j in itertools.combinations(range(len(places)), 2):
        t = (logs[j] - logs[i]) / (math.log(places[j]) - math.log(places[i]))
        if abs(t - math.floor(t) - 0.5) < 1e-6:
            out[i, j] = slope_degree(places[i], values[i], places[j], values[j])
        else:
            out[i, j] = math.floor(t + 0.5)
    return out


def _check_values(values):
    if any(v == 0 for v in values):
        raise DetectionError("zero value; use larger places")
    signs = {v > 0 for v in values}
    if len(signs) > 1:
        raise DetectionError("values of mixed sign; use larger places")


@dataclass(frozen=True)
class Component:
    degree: int
    places: tuple[int, ...]
    complete: bool


def gamma_components(places: Sequence[int], values: Sequence) -> dict[int, list[Component]]:
    """Connected components (with at least two vertices) of each graph ``Gamma_d``.

    ``Gamma_d`` joins two places when their slope degree equals ``d``.
    """
    dij = pairwise_degrees(places, values)
    by_deg: dict[int, list[tuple[int, int]]] = {}
    for (i, j), d in dij.items():
        by_deg.setdefault(d, []).append((i, j))
    out: dict[int, list[Component]] = {}
    for d, edges in sorted(by_deg.items()):
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in edges:
            parent[find(i)] = find(j)
        groups: dict[int, list[int]] = {}
        for x in list(parent):
            groups.setdefault(find(x), []).append(x)
        edge_set = set(edges)
        comps = []
        for verts in groups.values():
            verts.sort()
            complete = all((a, b) in edge_set for a, b in itertools.combinations(verts, 2))
            comps.append(Component(d, tuple(places[k] for k in verts), complete))
        comps.sort(key=lambda c: c.places)
        out[d] = comps
    return out


def _candidates(comps: dict[int, list[Component]], min_size: int) -> list[Component]:
    cands = [c for cl in comps.values() for c in cl if c.complete and len(c.places) >= min_size]
    # largest first; among equal sizes the smallest places are cheapest to recover from
    cands.sort(key=lambda c: (-len(c.places), c.places))
    return cands


@dataclass
class DetectionResult:
    degree: int
    places: tuple[int, ...]
    poly: P.Poly
    tried: list[Component] = field(default_factory=list)


def _recover_on(comp: Component, place_values: dict[int, object], denominator_bound) -> P.Poly:
    vals = [place_values[b] for b in comp.places]
    f = recover_from_values(comp.places, vals, comp.degree, denominator_bound)
    if P.degree(f) != comp.degree:
        raise DegreeBoundExceeded(f"recovered degree {P.degree(f)} differs from {comp.degree}")
    return f


def detect_degree(places: Sequence[int], values: Sequence, min_size: int = 3,
                  denominator_bound: int | None = None) -> DetectionResult:
    """Find ``d`` and a rescaled copy ``a*f`` from values ``a_j*f(b_j)`` with unknown ``a_j > 0``.

    Complete components of the ``Gamma`` graphs are tried from largest to
    smallest until recovery with degree bound ``d`` succeeds.
    """
    if len(places) < 2:
        raise DetectionError("need at least two samples")
    pv = dict(zip(places, values))
    tried = []
    for comp in _candidates(gamma_components(places, values), min_size):
        tried.append(comp)
        try:
            f = _recover_on(comp, pv, denominator_bound)
        except RecoveryError as exc:
            log.debug("component %s rejected: %s", comp.places, exc)
            continue
        return DetectionResult(comp.degree, comp.places, f, tried)
    raise DetectionError("no complete component admits recovery; add samples")


def detect_degree_incremental(places: Sequence[int], values: Sequence, min_size: int = 3,
                              denominator_bound: int | None = None) -> tuple[int, DetectionResult]:
    """Use growing prefixes of the samples; return the prefix length ``k`` that first succeeds."""
    for k in range(min_size, len(places) + 1):
        try:
            return k, detect_degree(places[:k], values[:k], min_size, denominator_bound)
        except DetectionError:
            continue
    raise DetectionError("no prefix admits detection")


def place_windows(start: float = 30, delta: float = 1.0, growth: float = 1.5,
                  shrink: float = 0.85) -> Iterator[list[int]]:
    """Windows of consecutive primes in ``[B, B*e**delta)`` with ``B`` growing geometrically."""
    B = start
    while True:
        lo = math.ceil(B)
        hi = B * math.exp(delta)
        yield [p for p in range(lo, math.ceil(hi)) if p < hi and _is_prime(p)]
        B *= growth
        delta *= shrink
