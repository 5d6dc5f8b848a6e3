"""Dense univariate polynomials over Z and Q, plus Laurent polynomials.

A polynomial is a tuple of coefficients in ascending order, ``(c0, c1, ...)``,
with no trailing zeros; the zero polynomial is ``()``.  Coefficients are
``int`` or ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Poly = tuple

ZERO: Poly = ()
ONE: Poly = (1,)
X: Poly = (0, 1)


def trim(coeffs: Sequence) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(_simplify(x) for x in c)


def _simplify(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def degree(f: Poly) -> int:
    """Degree, with -1 for the zero polynomial."""
    return len(f) - 1


def valuation(f: Poly) -> int:
    for i, c in enumerate(f):
        if c:
            return i
    raise ValueError("valuation of the zero polynomial")


def monomial(k: int, c=1) -> Poly:
    return trim([0] * k + [c])


def add(f: Poly, g: Poly) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    return trim([a + (g[i] if i < len(g) else 0) for i, a in enumerate(f)])


def neg(f: Poly) -> Poly:
    return tuple(-a for a in f)


def sub(f: Poly, g: Poly) -> Poly:
    return add(f, neg(g))


def scale(f: Poly, c) -> Poly:
    if c == 0:
        return ZERO
    return trim([c * a for a in f])


def shift(f: Poly, k: int) -> Poly:
    """Multiply by ``X**k`` (``k`` may be negative if the low coefficients vanish)."""
    if not f:
        return ZERO
    if k >= 0:
        return (0,) * k + tuple(f)
    if any(f[:-k]):
        raise ValueError("shift would create negative powers")
    return tuple(f[-k:])


def mul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ZERO
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out)


def evaluate(f: Poly, b):
    """Horner evaluation."""
    acc = 0
    for c in reversed(f):
        acc = acc * b + c
    return acc


def divmod_poly(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Division with remainder over Q."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in f]
    lc = Fraction(g[-1])
    dg = len(g) - 1
    q = [Fraction(0)] * max(len(f) - dg, 0)
    for k in range(len(f) - 1 - dg, -1, -1):
        c = r[k + dg] / lc
        if c:
            q[k] = c
            for i, gc in enumerate(g):
                r[k + i] -= c * gc
    return trim(q), trim(r[:dg])


def exact_div(f: Poly, g: Poly) -> Poly:
    q, r = divmod_poly(f, g)
    if r:
        raise ArithmeticError("polynomial division is not exact")
    return q


def pseudo_rem(f: Poly, g: Poly) -> Poly:
    """``lc(g)**(deg f - deg g + 1) * f mod g`` computed without fractions."""
    if not g:
        raise ZeroDivisionError("pseudo-division by zero")
    r = list(f)
    dg = len(g) - 1
    lc = g[-1]
    e = len(f) - dg
    while len(r) - 1 >= dg and r:
        c = r[-1]
        shiftk = len(r) - 1 - dg
        r = [lc * x for x in r]
        for i, gc in enumerate(g):
            r[shiftk + i] -= c * gc
        r = list(trim(r))
        e -= 1
    if e > 0:
        r = [x * lc ** e for x in r]
    return trim(r)


def int_content(f: Poly) -> int:
    return gcd(*f) if f else 0


def content_and_primitive(f: Poly):
    """Return ``(c, p)`` with ``f = c * p``, ``c > 0`` rational and ``p`` an integer primitive polynomial."""
    if not f:
        raise ValueError("content of the zero polynomial")
    den = lcm(*(Fraction(c).denominator for c in f))
    ints = [int(Fraction(c) * den) for c in f]
    g = gcd(*ints)
    prim = tuple(x // g for x in ints)
    return _simplify(Fraction(g, den)), prim


def primitive_part(f: Poly) -> Poly:
    return content_and_primitive(f)[1] if f else ZERO


def _normalize_leading(f: Poly) -> Poly:
    return neg(f) if f and f[-1] < 0 else f


def gcd_subresultant(f: Poly, g: Poly) -> Poly:
    """Greatest common divisor of two integer polynomials, positive leading coefficient.

    Subresultant pseudo-remainder sequence; only the contents of the inputs
    and the final primitive part are taken.
    """
    if not f and not g:
        raise ValueError("gcd of two zero polynomials")
    if not g:
        return _normalize_leading(f)
    if not f:
        return gcd_subresultant(g, f)
    if len(f) < len(g):
        f, g = g, f
    cf, a = content_and_primitive(f)
    cg, b = content_and_primitive(g)
    d = gcd(int(cf), int(cg))
    gg, h = 1, 1
    while True:
        delta = len(a) - len(b)
        r = pseudo_rem(a, b)
        if not r:
            break
        if len(r) == 1:
            b = ONE
            break
        a = b
        denom = gg * h ** delta
        b = tuple(x // denom for x in r)
        gg = a[-1]
        # h = g^delta / h^(delta-1), exact in Z
        h = (gg ** delta) // (h ** (delta - 1)) if delta >= 1 else h
    res = primitive_part(b)
    return _normalize_leading(scale(res, d))


@dataclass(frozen=True)
class Laurent:
    """``v**val * poly`` where ``poly`` has nonzero constant term (or is zero)."""

    val: int
    poly: Poly

    @staticmethod
    def make(val: int, coeffs: Sequence) -> "Laurent":
        p = trim(coeffs)
        if not p:
            return Laurent(0, ZERO)
        k = valuation(p)
        return Laurent(val + k, p[k:])

    @staticmethod
    def from_poly(f: Poly) -> "Laurent":
        return Laurent.make(0, f)

    def is_zero(self) -> bool:
        return not self.poly

    def __add__(self, other: "Laurent") -> "Laurent":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        m = min(self.val, other.val)
        return Laurent.make(m, add(shift(self.poly, self.val - m), shift(other.poly, other.val - m)))

    def __neg__(self):
        return Laurent(self.val, neg(self.poly))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "Laurent") -> "Laurent":
        if self.is_zero() or other.is_zero():
            return Laurent(0, ZERO)
        return Laurent.make(self.val + other.val, mul(self.poly, other.poly))

    def evaluate(self, b):
        if self.is_zero():
            return 0
        if self.val < 0:
            if b == 0:
                raise ZeroDivisionError("negative powers evaluated at 0")
            return Fraction(evaluate(self.poly, b)) / Fraction(b) ** (-self.val)
        return evaluate(self.poly, b) * b ** self.val

    def to_poly(self) -> Poly:
        if self.is_zero():
            return ZERO
        if self.val < 0:
            raise ValueError("Laurent polynomial has negative powers")
        return shift(self.poly, self.val)

    def degree(self) -> int:
        return self.val + len(self.poly) - 1

    def star(self) -> "Laurent":
        """Image under ``v -> v**-1``."""
        if self.is_zero():
            return self
        return Laurent(-self.degree(), tuple(reversed(self.poly)))

    def __str__(self):
        return format_laurent(self)


def star(f: Laurent) -> Laurent:
    return f.star()


@dataclass(frozen=True)
class Palindromic:
    k: int


@dataclass(frozen=True)
class SkewPalindromic:
    k: int


class Neither:
    def __eq__(self, other):
        return isinstance(other, Neither)

    def __hash__(self):
        return 0

    def __repr__(self):
        return "Neither()"


def palindromic_class(f):
    """Classify ``f`` by whether ``v**k * f(1/v)`` equals ``f`` or ``-f`` with ``k = val(f) + deg(f)``."""
    lf = f if isinstance(f, Laurent) else Laurent.from_poly(f)
    if lf.is_zero():
        raise ValueError("palindromicity of zero")
    k = lf.val + lf.degree()
    rev = tuple(reversed(lf.poly))
    if rev == lf.poly:
        return Palindromic(k)
    if rev == neg(lf.poly):
        return SkewPalindromic(k)
    return Neither()


def is_palindromic(f) -> bool:
    return isinstance(palindromic_class(f), Palindromic)


def format_poly(f: Poly) -> str:
    """Ascending comma-separated coefficients; ``0`` for the zero polynomial."""
    if not f:
        return "0"
    return ",".join(str(c) for c in f)


def parse_poly(text: str) -> Poly:
    text = text.strip()
    if not text:
        return ZERO
    return trim([_parse_coeff(t) for t in text.split(",")])


def _parse_coeff(t: str):
    t = t.strip()
    return Fraction(t) if "/" in t else int(t)


def format_laurent(f: Laurent) -> str:
    if f.is_zero():
        return "0"
    body = format_poly(f.poly)
    return body if f.val == 0 else f"{f.val}:{body}"


def parse_laurent(text: str) -> Laurent:
    text = text.strip()
    if ":" in text:
        val, body = text.split(":", 1)
        return Laurent.make(int(val), parse_poly(body))
    return Laurent.make(0, parse_poly(text))
