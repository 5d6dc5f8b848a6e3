"""Exact linear algebra over the integers and rationals.

Everything is driven by p-adic decomposition: a vector ``v`` is expanded in
terms of the rows of an integer matrix using a single echelon form modulo a
small prime, and the rational coefficients are read off from the p-adic
digits by rational recovery.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, prod
from typing import Callable, Iterable, Sequence

from .rational import recover_rational, symmetric_mod

log = logging.getLogger(__name__)

DEFAULT_PRIME = 251
MAX_PRIMES = 5


class BadPrimeError(Exception):
    """The rows are dependent modulo the chosen prime although (possibly) not over Q."""


class SingularMatrixError(ArithmeticError):
    pass


class KernelRankError(ArithmeticError):
    """The left kernel does not have dimension one."""


@dataclass(frozen=True)
class SpanDecomposition:
    """``v = (1/denominator) * sum(numerators[j] * row_j)``."""

    numerators: tuple[int, ...]
    denominator: int


class NotInClosure:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "NotInClosure"


NOT_IN_CLOSURE = NotInClosure()


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_schedule(first: int = DEFAULT_PRIME) -> Iterable[int]:
    """Primes to try in order: ``first``, the primes below 256 downwards, then primes above 2**16."""
    yield first
    for p in range(255, 1, -1):
        if p != first and _is_prime(p):
            yield p
    p = 1 << 16
    while True:
        p += 1
        if p != first and _is_prime(p):
            yield p


def with_prime_retries(fn: Callable[[int], object], first_prime: int = DEFAULT_PRIME,
                       max_primes: int = MAX_PRIMES, failure: type[Exception] = SingularMatrixError):
    """Call ``fn(p)`` for successive primes until it does not raise BadPrimeError."""
    for count, p in enumerate(prime_schedule(first_prime), 1):
        try:
            return fn(p)
        except BadPrimeError:
            log.debug("prime %d rejected", p)
            if count >= max_primes:
                raise failure(f"rows stay dependent modulo {max_primes} distinct primes")


class ModpSpan:
    """Incremental echelon form of integer row vectors modulo ``p``.

    Besides the echelon rows it tracks how each of them is combined from the
    rows that were added, so vectors in the span can be written in terms of
    the original rows.
    """

    def __init__(self, p: int, ncols: int):
        self.p = p
        self.ncols = ncols
        self.nrows = 0
        self._echelon: list[tuple[int, list[int], dict[int, int]]] = []

    def _reduce(self, vec):
        p = self.p
        r = [x % p for x in vec]
        comb: dict[int, int] = {}
        for piv, row, rcomb in self._echelon:
            c = r[piv]
            if c:
                for k in range(piv, self.ncols):
                    if row[k]:
                        r[k] = (r[k] - c * row[k]) % p
                for idx, val in rcomb.items():
                    comb[idx] = (comb.get(idx, 0) + c * val) % p
        return r, comb

    def add(self, vec: Sequence[int]) -> bool:
        """Append a row; return False (and leave the span unchanged) if it is dependent mod p."""
        r, comb = self._reduce(vec)
        piv = next((k for k, x in enumerate(r) if x), None)
        if piv is None:
            return False
        p = self.p
        inv = pow(r[piv], -1, p)
        row = [(x * inv) % p for x in r]
        # echelon row = inv * (new - sum comb)
        rcomb = {idx: (-val * inv) % p for idx, val in comb.items() if val}
        rcomb[self.nrows] = inv
        self._echelon.append((piv, row, rcomb))
        self._echelon.sort(key=lambda t: t[0])
        self.nrows += 1
        return True

    def solve(self, vec: Sequence[int]) -> list[int] | None:
        """Coefficients ``c`` (symmetric residues) with ``c . rows = vec mod p``, or None."""
        r, comb = self._reduce(vec)
        if any(r):
            return None
        out = [0] * self.nrows
        for idx, val in comb.items():
            out[idx] = symmetric_mod(val, self.p)
        return out


def _norm2(v: Sequence[int]) -> int:
    return sum(x * x for x in v)


def _depth_limit(rows: Sequence[Sequence[int]], v: Sequence[int], p: int) -> int:
    # If v is in the Q-span then numerators and the denominator are bounded by
    # h with h**2 <= prod(|w_i|^2) * |v|^2 (Cramer plus Hadamard), so p-adic
    # precision p**d > 2*h**2 guarantees recovery.
    bound = 2 * prod(max(_norm2(w), 1) for w in rows) * max(_norm2(v), 1)
    d, pd = 0, 1
    while pd <= bound:
        pd *= p
        d += 1
    return d


def _recover_vector(digits: list[list[int]], p: int, m: int):
    pd = p ** len(digits)
    den = 1
    nums = []
    for j in range(m):
        acc = 0
        for k in range(len(digits) - 1, -1, -1):
            acc = acc * p + digits[k][j]
        res = recover_rational(den * acc, pd)
        if res is None:
            return None
        y, x = res
        if x != 1:
            den *= x
            nums = [n * x for n in nums]
        nums.append(y)
    return nums, den


def _combine(coeffs: Sequence[int], rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    out = [0] * ncols
    for c, row in zip(coeffs, rows):
        if c:
            for k, x in enumerate(row):
                if x:
                    out[k] += c * x
    return out


def _decompose(rows, span: ModpSpan, v: Sequence[int]):
    p = span.p
    m = len(rows)
    ncols = span.ncols
    limit = _depth_limit(rows, v, p)
    digits: list[list[int]] = []
    cur = list(v)
    next_try = 4
    while True:
        a = span.solve(cur)
        if a is None:
            return NOT_IN_CLOSURE
        digits.append(a)
        comb = _combine(a, rows, ncols)
        nxt = []
        for x, y in zip(cur, comb):
            q, r = divmod(x - y, p)
            assert r == 0
            nxt.append(q)
        cur = nxt
        d = len(digits)
        if not any(cur):
            nums = [0] * m
            for k in range(d - 1, -1, -1):
                nums = [n * p + dk for n, dk in zip(nums, digits[k])]
            return SpanDecomposition(tuple(nums), 1)
        if d == next_try or d >= limit:
            rec = _recover_vector(digits, p, m)
            if rec is not None:
                nums, den = rec
                if _combine(nums, rows, ncols) == [den * x for x in v]:
                    assert den % p
                    g = gcd(den, *nums)
                    return SpanDecomposition(tuple(n // g for n in nums), den // g)
            if d >= limit:
                return NOT_IN_CLOSURE
            next_try *= 2
            if next_try > limit:
                next_try = limit


def padic_decompose(rows: Sequence[Sequence[int]], v: Sequence[int], p: int = DEFAULT_PRIME):
    """Write ``v`` in terms of the rows of an integer matrix.

    Returns a SpanDecomposition, or NOT_IN_CLOSURE if ``v`` is not in the
    rational span of the rows.  Raises BadPrimeError if the rows are
    dependent modulo ``p``.
    """
    rows = [list(map(int, r)) for r in rows]
    ncols = len(v)
    span = ModpSpan(p, ncols)
    for r in rows:
        if len(r) != ncols:
            raise ValueError("row length mismatch")
        if not span.add(r):
            raise BadPrimeError(p)
    return _decompose(rows, span, v)


class IntegerSpan:
    """Growing set of Q-independent integer vectors with exact membership tests.

    Independence is first tested modulo ``p``; only if that fails is the
    p-adic decomposition run.  A vector that is independent over Q but not
    modulo ``p`` raises BadPrimeError.
    """

    def __init__(self, ncols: int, p: int = DEFAULT_PRIME):
        self.p = p
        self.rows: list[list[int]] = []
        self._span = ModpSpan(p, ncols)

    def __len__(self):
        return len(self.rows)

    def decompose(self, vec: Sequence[int]):
        if not self.rows:
            return NOT_IN_CLOSURE if any(vec) else SpanDecomposition((), 1)
        return _decompose(self.rows, self._span, vec)

    def add(self, vec: Sequence[int]) -> bool:
        """Add ``vec`` if it is outside the span; return whether it was added."""
        vec = list(map(int, vec))
        if not any(vec):
            return False
        if self._span.add(vec):
            self.rows.append(vec)
            return True
        if self.decompose(vec) is NOT_IN_CLOSURE:
            raise BadPrimeError(self.p)
        return False


def _as_integer_rows(A) -> list[list[int]]:
    """Scale a rational matrix by one positive integer so all entries become integers."""
    den = 1
    for row in A:
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
    return [[int(x * den) for x in row] for row in A]


def _normalize_sign(v: list[int]) -> list[int]:
    for x in v:
        if x:
            return v if x > 0 else [-y for y in v]
    return v


def _nullspace_at(rows: list[list[int]], p: int) -> list[int]:
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    span = IntegerSpan(ncols, p)
    kernel = None
    for i, w in enumerate(rows):
        if kernel is None:
            if span.add(w):
                continue
            dec = span.decompose(w)
            kernel = list(dec.numerators) + [-dec.denominator] + [0] * (m - i - 1)
            # the rows other than w_i must be independent for a 1-dim kernel
        elif not span.add(w):
            raise KernelRankError("left kernel has dimension greater than one")
    if kernel is None:
        raise KernelRankError("left kernel is zero")
    return _normalize_sign(kernel)


def int_nullspace_rank1(A, first_prime: int = DEFAULT_PRIME, max_primes: int = MAX_PRIMES) -> list[int]:
    """Primitive integer vector ``v`` with ``v . A = 0`` for a matrix with 1-dimensional left kernel."""
    rows = _as_integer_rows(A)
    if not rows:
        raise ValueError("empty matrix")
    return with_prime_retries(lambda p: _nullspace_at(rows, p), first_prime, max_primes,
                              failure=KernelRankError)


def _inverse_at(rows: list[list[int]], p: int):
    n = len(rows)
    span = IntegerSpan(n, p)
    for w in rows:
        if len(w) != n:
            raise ValueError("matrix is not square")
        if not span.add(w):
            raise SingularMatrixError("matrix is singular")
    decs = []
    for k in range(n):
        e = [0] * n
        e[k] = 1
        dec = span.decompose(e)
        if dec is NOT_IN_CLOSURE:  # pragma: no cover - rows span Q^n
            raise SingularMatrixError("matrix is singular")
        decs.append(dec)
    c = lcm(*(d.denominator for d in decs))
    B = [[(c // d.denominator) * x for x in d.numerators] for d in decs]
    return B, c


def int_inverse(A, first_prime: int = DEFAULT_PRIME, max_primes: int = MAX_PRIMES):
    """Return ``(B, c)`` with ``B . A = c * I``, ``c > 0`` and ``gcd(B, c) = 1``."""
    den = 1
    for row in A:
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
    rows = [[int(x * den) for x in row] for row in A]
    if not rows:
        raise ValueError("empty matrix")
    B, c = with_prime_retries(lambda p: _inverse_at(rows, p), first_prime, max_primes)
    if den != 1:
        B = [[den * x for x in row] for row in B]
        g = gcd(c, *(x for row in B for x in row))
        B = [[x // g for x in row] for row in B]
        c //= g
    return B, c


def int_exponent(A, first_prime: int = DEFAULT_PRIME) -> int:
    """Smallest positive ``c`` with ``c * A^-1`` integral, i.e. the exponent of ``Z^n / Z^n A``."""
    return int_inverse(A, first_prime)[1]


def int_det(A) -> int:
    """Determinant of a square integer matrix by fraction-free (Bareiss) elimination."""
    M = [list(map(int, row)) for row in A]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if M[r][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]
