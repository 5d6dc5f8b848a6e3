"""Rational number recovery from a residue class via 2-dimensional lattice reduction.

A residue ``a mod b`` is viewed as the lattice spanned by ``[1, a]`` and
``[0, b]``.  If ``y/x`` with ``x**2 + y**2 < b`` is congruent to ``a`` then
``+-[x, y]`` are the shortest nonzero vectors of that lattice, and Gauss
reduction finds them.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class Residue:
    a: int
    b: int

    def __post_init__(self):
        if self.b < 2:
            raise ValueError(f"modulus must be at least 2, got {self.b}")
        object.__setattr__(self, "a", symmetric_mod(self.a, self.b))


def symmetric_mod(a: int, b: int) -> int:
    """Representative of ``a mod b`` in the range ``(-b/2, b/2]``."""
    r = a % b
    if 2 * r > b:
        r -= b
    return r


def _norm2(u):
    return u[0] * u[0] + u[1] * u[1]


def _nearest_quotient(num: int, den: int) -> int:
    # round(num / den) with halves rounded towards -inf; den > 0
    return (2 * num + den) // (2 * den)


def gauss_reduce(v1, v2, early_bound: int | None = None) -> tuple[int, int]:
    """Return a shortest nonzero vector of the lattice spanned by ``v1, v2``.

    With ``early_bound`` the first basis vector met whose squared norm is
    below the bound is returned instead.
    """
    u = (int(v1[0]), int(v1[1]))
    w = (int(v2[0]), int(v2[1]))
    if u[0] * w[1] - u[1] * w[0] == 0:
        raise ValueError("degenerate lattice basis")
    if _norm2(u) < _norm2(w):
        u, w = w, u
    # invariant: |w| <= |u|
    while True:
        if early_bound is not None and _norm2(w) < early_bound:
            return w
        nw = _norm2(w)
        q = _nearest_quotient(u[0] * w[0] + u[1] * w[1], nw)
        r = (u[0] - q * w[0], u[1] - q * w[1])
        if _norm2(r) >= nw:
            return w
        u, w = w, r


def recover_rational(a: int, b: int) -> tuple[int, int] | None:
    """Find ``(y, x)`` with ``x > 0``, ``gcd(x, y) = 1``, ``y = a*x mod b`` and ``x^2 + y^2 < b``.

    Returns ``None`` when no such pair exists or the short vector found is
    imprimitive.
    """
    r = Residue(a, b)
    if r.a == 0:
        return (0, 1)
    x, y = gauss_reduce((0, r.b), (1, r.a), early_bound=r.b)
    if x * x + y * y >= r.b or gcd(x, y) != 1:
        return None
    if x < 0:
        x, y = -x, -y
    if x == 0:
        return None
    return (y, x)
