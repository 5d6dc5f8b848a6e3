"""Matrices over Z[X] and Q[X] in dense and sparse storage, with a text file format.

File format::

    rows cols dense
    <row 1: entries separated by ';'>
    ...

    rows cols sparse
    i j <entry>          (1-based, nonzero entries only)

Each entry is an ascending comma-separated coefficient list, optionally
prefixed by ``delta:`` for a Laurent offset.  Negative offsets are cleared
by a global power of ``X`` that is stored in ``PolyMatrix.shift``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from pathlib import Path
from typing import Iterable, Sequence

from . import poly as P


class PolyMatrix:
    """Dense matrix of polynomials; ``shift`` records a global factor ``X**shift``."""

    def __init__(self, entries: Sequence[Sequence[P.Poly]], shift: int = 0):
        self.rows = [[P.trim(e) for e in row] for row in entries]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")
        self.shift = shift

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "PolyMatrix":
        return cls([[P.ZERO] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls([[P.ONE if i == j else P.ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_ints(cls, rows) -> "PolyMatrix":
        return cls([[P.trim([x]) for x in row] for row in rows])

    @classmethod
    def diagonal(cls, diag: Sequence[P.Poly]) -> "PolyMatrix":
        n = len(diag)
        return cls([[diag[i] if i == j else P.ZERO for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows and self.shift == other.shift

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols})"

    def copy(self) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.shift)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([list(col) for col in zip(*self.rows)], self.shift) if self.rows else PolyMatrix([])

    def __neg__(self):
        return PolyMatrix([[P.neg(e) for e in row] for row in self.rows], self.shift)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_same_shift(other)
        return PolyMatrix([[P.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                          self.shift)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return matmul(self, other)

    def _check_same_shift(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        if self.shift != other.shift:
            raise ValueError("matrices carry different global shifts")

    def scale(self, c) -> "PolyMatrix":
        return PolyMatrix([[P.scale(e, c) for e in row] for row in self.rows], self.shift)

    def scale_poly(self, f: P.Poly) -> "PolyMatrix":
        return PolyMatrix([[P.mul(e, f) for e in row] for row in self.rows], self.shift)

    def is_zero(self) -> bool:
        return not any(e for row in self.rows for e in row)

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.nrows) for j in range(i))

    def max_degree(self) -> int:
        return max((P.degree(e) for row in self.rows for e in row), default=-1)

    def max_abs_coeff(self):
        return max((abs(c) for row in self.rows for e in row for c in e), default=0)

    def specialize(self, b) -> list[list]:
        """Entrywise evaluation at ``b`` (ignores ``shift``)."""
        return [[P.evaluate(e, b) for e in row] for row in self.rows]

    def entries(self) -> Iterable[P.Poly]:
        for row in self.rows:
            yield from row

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for e in self.entries() for c in e)

    def content(self):
        """Positive rational ``c`` such that the matrix divided by ``c`` is integral and primitive."""
        nz = [e for e in self.entries() if e]
        if not nz:
            raise ValueError("content of the zero matrix")
        den = lcm(*(Fraction(c).denominator for e in nz for c in e))
        g = gcd(*(int(Fraction(c) * den) for e in nz for c in e))
        return P._simplify(Fraction(g, den))

    def primitive(self) -> "PolyMatrix":
        c = self.content()
        return self.scale(Fraction(1) / c) if c != 1 else self.copy()

    def to_sparse(self) -> "SparsePolyMatrix":
        data = {(i, j): e for i, row in enumerate(self.rows) for j, e in enumerate(row) if e}
        return SparsePolyMatrix(self.nrows, self.ncols, data, self.shift)

    def sparse(self) -> "SparsePolyMatrix":
        return self.to_sparse()

    def to_laurent(self):
        """Entries as Laurent polynomials including the global shift."""
        return [[P.Laurent.make(self.shift, e) for e in row] for row in self.rows]


@dataclass
class SparsePolyMatrix:
    nrows: int
    ncols: int
    data: dict = field(default_factory=dict)
    shift: int = 0

    def __post_init__(self):
        self.data = {k: P.trim(v) for k, v in self.data.items() if P.trim(v)}

    @property
    def shape(self):
        return self.nrows, self.ncols

    def to_dense(self) -> PolyMatrix:
        m = PolyMatrix.zeros(self.nrows, self.ncols)
        for (i, j), e in self.data.items():
            m.rows[i][j] = e
        m.shift = self.shift
        return m

    def transpose(self) -> "SparsePolyMatrix":
        return SparsePolyMatrix(self.ncols, self.nrows, {(j, i): e for (i, j), e in self.data.items()},
                                self.shift)

    def row_times(self, vec: Sequence[P.Poly]) -> list[P.Poly]:
        """Row vector times this matrix."""
        out = [P.ZERO] * self.ncols
        for (i, j), e in self.data.items():
            if vec[i]:
                out[j] = P.add(out[j], P.mul(vec[i], e))
        return out

    def specialize(self, b) -> list[list]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for (i, j), e in self.data.items():
            out[i][j] = P.evaluate(e, b)
        return out


def matmul(A, B) -> PolyMatrix:
    """Direct product of polynomial matrices (dense or sparse operands)."""
    if isinstance(A, SparsePolyMatrix):
        A = A.to_dense()
    if isinstance(B, SparsePolyMatrix):
        B = B.to_dense()
    if A.ncols != B.nrows:
        raise ValueError("inner dimensions differ")
    cols = list(zip(*B.rows)) if B.rows else []
    out = []
    for row in A.rows:
        new = []
        for col in cols:
            acc = []
            for a, b in zip(row, col):
                if a and b:
                    acc = P.add(acc, P.mul(a, b))
            new.append(P.trim(acc))
        out.append(new)
    return PolyMatrix(out, A.shift + B.shift)


def vec_mat(vec: Sequence[P.Poly], M) -> list[P.Poly]:
    if isinstance(M, SparsePolyMatrix):
        return M.row_times(vec)
    out = []
    for j in range(M.ncols):
        acc = P.ZERO
        for i, x in enumerate(vec):
            if x and M.rows[i][j]:
                acc = P.add(acc, P.mul(x, M.rows[i][j]))
        out.append(acc)
    return out


def vector_content_primitive(vec: Sequence[P.Poly]):
    """Return ``(c, w)`` with ``vec = c * w`` and ``w`` integral with coefficient gcd 1."""
    m = PolyMatrix([list(vec)])
    c = m.content()
    return c, [P.scale(e, Fraction(1) / c) for e in vec]


def format_matrix(M, sparse: bool = False) -> str:
    if isinstance(M, SparsePolyMatrix):
        M = M.to_dense()
    lines = []
    if sparse:
        sp = M.to_sparse()
        lines.append(f"{M.nrows} {M.ncols} sparse")
        for (i, j), e in sorted(sp.data.items()):
            lines.append(f"{i + 1} {j + 1} {_format_laurent_entry(e, M.shift)}")
    else:
        lines.append(f"{M.nrows} {M.ncols} dense")
        for row in M.rows:
            lines.append(";".join(_format_laurent_entry(e, M.shift) for e in row))
    return "\n".join(lines) + "\n"


def _format_laurent_entry(e: P.Poly, shift: int) -> str:
    if not e:
        return "0"
    if shift == 0:
        return P.format_poly(e)
    return P.format_laurent(P.Laurent.make(shift, e))


def parse_matrix(text: str) -> PolyMatrix:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty matrix file")
    head = lines[0].split()
    if len(head) != 3 or head[2] not in ("dense", "sparse"):
        raise ValueError(f"bad header line: {lines[0]!r}")
    n, m, fmt = int(head[0]), int(head[1]), head[2]
    laur = [[P.Laurent(0, P.ZERO)] * m for _ in range(n)]
    if fmt == "dense":
        if len(lines) - 1 != n:
            raise ValueError(f"expected {n} rows, found {len(lines) - 1}")
        for i, ln in enumerate(lines[1:]):
            parts = ln.split(";")
            if len(parts) != m:
                raise ValueError(f"row {i + 1} has {len(parts)} entries, expected {m}")
            laur[i] = [P.parse_laurent(t) for t in parts]
    else:
        for ln in lines[1:]:
            i, j, body = ln.split(None, 2)
            laur[int(i) - 1][int(j) - 1] = P.parse_laurent(body)
    nz = [e.val for row in laur for e in row if not e.is_zero()]
    shift = min(min(nz, default=0), 0)
    rows = [[P.ZERO if e.is_zero() else P.shift(e.poly, e.val - shift) for e in row] for row in laur]
    return PolyMatrix(rows, shift)


def read_matrix(path) -> PolyMatrix:
    return parse_matrix(Path(path).read_text())


def write_matrix(M, path, sparse: bool = False) -> None:
    Path(path).write_text(format_matrix(M, sparse))
