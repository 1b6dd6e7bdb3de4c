"""Exact sparse rational matrices: int64 numerators over one common denominator."""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

import numpy as np
import scipy.sparse as sp

# products whose magnitude could exceed this fall back to Python integers
_SAFE = 2 ** 62


class SparseRationalMatrix:
    """Immutable ``rows x cols`` matrix ``num / den`` with ``num`` a CSR integer matrix.

    The pair is kept reduced (``den > 0``, gcd of ``den`` and all numerators is 1)
    so equality is structural.  Matrices whose entries do not fit int64 are
    stored as a dictionary of Python integers instead.
    """

    __slots__ = ("rows", "cols", "num", "den", "_big")

    def __init__(self, rows: int, cols: int, num=None, den: int = 1, big: Mapping | None = None):
        self.rows, self.cols = int(rows), int(cols)
        self._big: dict[tuple[int, int], int] | None = None
        if big is not None:
            self._set_big(dict(big), int(den))
            return
        if num is None:
            num = sp.csr_matrix((self.rows, self.cols), dtype=np.int64)
        num = sp.csr_matrix(num, dtype=np.int64)
        num.sum_duplicates()
        num.eliminate_zeros()
        self.num, self.den = num, int(den)
        self._reduce()

    # ------------------------------------------------------------ internals
    def _set_big(self, entries: dict, den: int):
        entries = {rc: v for rc, v in entries.items() if v}
        if den < 0:
            entries = {rc: -v for rc, v in entries.items()}
            den = -den
        g = den
        for v in entries.values():
            g = gcd(g, v)
            if g == 1:
                break
        if g > 1:
            entries = {rc: v // g for rc, v in entries.items()}
            den //= g
        if all(abs(v) < _SAFE for v in entries.values()) and den < _SAFE:
            self._big = None
            self.num, self.den = _csr_from_dict(self.rows, self.cols, entries), den
        else:
            self._big, self.num, self.den = entries, None, den

    def _reduce(self):
        if self.den <= 0:
            if self.den == 0:
                raise ZeroDivisionError("zero denominator")
            self.num = -self.num
            self.den = -self.den
        if self.den == 1 or self.num.nnz == 0:
            if self.num.nnz == 0:
                self.den = 1
            return
        g = int(np.gcd.reduce(np.append(self.num.data, self.den)))
        if g > 1:
            self.num = _div_exact(self.num, g)
            self.den //= g

    def _dict(self) -> dict[tuple[int, int], int]:
        if self._big is not None:
            return dict(self._big)
        coo = self.num.tocoo()
        return {(int(r), int(c)): int(v) for r, c, v in zip(coo.row, coo.col, coo.data)}

    def _maxabs(self) -> int:
        if self._big is not None:
            return max((abs(v) for v in self._big.values()), default=0)
        return int(np.abs(self.num.data).max()) if self.num.nnz else 0

    # --------------------------------------------------------- constructors
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseRationalMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "SparseRationalMatrix":
        return cls(n, n, sp.identity(n, dtype=np.int64, format="csr"))

    @classmethod
    def from_coo(cls, rows: int, cols: int, r, c, data=None) -> "SparseRationalMatrix":
        r = np.asarray(r, dtype=np.int64)
        c = np.asarray(c, dtype=np.int64)
        data = np.ones(len(r), dtype=np.int64) if data is None else np.asarray(data, dtype=np.int64)
        return cls(rows, cols, sp.csr_matrix((data, (r, c)), shape=(rows, cols)))

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Mapping[tuple[int, int], Fraction | int]) -> "SparseRationalMatrix":
        fr = {rc: Fraction(v) for rc, v in entries.items() if v}
        for r, c in fr:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r},{c}) outside a {rows}x{cols} matrix")
        den = 1
        for v in fr.values():
            den = den * v.denominator // gcd(den, v.denominator)
        out = cls.__new__(cls)
        out.rows, out.cols = rows, cols
        out._set_big({rc: int(v * den) for rc, v in fr.items()}, den)
        return out

    @classmethod
    def from_dense(cls, rows: Iterable[Iterable]) -> "SparseRationalMatrix":
        rows = [list(r) for r in rows]
        nr, nc = len(rows), len(rows[0]) if rows else 0
        return cls.from_entries(nr, nc, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    # ------------------------------------------------------------ accessors
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self._big) if self._big is not None else self.num.nnz

    def is_zero(self) -> bool:
        return self.nnz == 0

    def entries(self) -> dict[tuple[int, int], Fraction]:
        return {rc: Fraction(v, self.den) for rc, v in self._dict().items()}

    def __getitem__(self, rc: tuple[int, int]) -> Fraction:
        if self._big is not None:
            return Fraction(self._big.get(rc, 0), self.den)
        return Fraction(int(self.num[rc]), self.den)

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries().items():
            out[r][c] = v
        return out

    def __eq__(self, other):
        if not isinstance(other, SparseRationalMatrix):
            return NotImplemented
        if self.shape != other.shape or self.den != other.den:
            return False
        if self._big is None and other._big is None:
            return (self.num != other.num).nnz == 0
        return self._dict() == other._dict()

    def __hash__(self):
        return hash((self.shape, self.den, frozenset(self._dict().items())))

    def __repr__(self):
        return f"SparseRationalMatrix({self.rows}x{self.cols}, nnz={self.nnz}, den={self.den})"

    # ----------------------------------------------------------- arithmetic
    def _combine(self, other: "SparseRationalMatrix", sign: int) -> "SparseRationalMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        den = self.den * other.den // gcd(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        bound = self._maxabs() * fa + other._maxabs() * fb
        if self._big is None and other._big is None and bound < _SAFE:
            return SparseRationalMatrix(self.rows, self.cols, self.num * fa + sign * fb * other.num, den)
        out = {rc: v * fa for rc, v in self._dict().items()}
        for rc, v in other._dict().items():
            out[rc] = out.get(rc, 0) + sign * v * fb
        return SparseRationalMatrix(self.rows, self.cols, den=den, big=out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "SparseRationalMatrix":
        c = Fraction(c)
        if c == 0:
            return SparseRationalMatrix.zeros(self.rows, self.cols)
        if self._big is None and abs(c.numerator) * self._maxabs() < _SAFE:
            return SparseRationalMatrix(self.rows, self.cols, self.num * c.numerator, self.den * c.denominator)
        return SparseRationalMatrix(self.rows, self.cols, den=self.den * c.denominator,
                                    big={rc: v * c.numerator for rc, v in self._dict().items()})

    def __matmul__(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        den = self.den * other.den
        bound = self._maxabs() * other._maxabs() * max(self.cols, 1)
        if self._big is None and other._big is None and bound < _SAFE:
            return SparseRationalMatrix(self.rows, other.cols, self.num @ other.num, den)
        rows: dict[int, dict[int, int]] = {}
        for (r, c), v in other._dict().items():
            rows.setdefault(r, {})[c] = v
        out: dict[tuple[int, int], int] = {}
        for (r, m), v in self._dict().items():
            for c, w in rows.get(m, {}).items():
                out[(r, c)] = out.get((r, c), 0) + v * w
        return SparseRationalMatrix(self.rows, other.cols, den=den, big=out)

    def kron(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        """Kronecker product ``self (x) other``: ``other``'s index varies fastest."""
        shape = (self.rows * other.rows, self.cols * other.cols)
        den = self.den * other.den
        if self._big is None and other._big is None and self._maxabs() * other._maxabs() < _SAFE:
            return SparseRationalMatrix(*shape, sp.kron(self.num, other.num, format="csr"), den)
        out = {}
        for (r1, c1), v in self._dict().items():
            for (r2, c2), w in other._dict().items():
                out[(r1 * other.rows + r2, c1 * other.cols + c2)] = v * w
        return SparseRationalMatrix(*shape, den=den, big=out)

    def transpose(self) -> "SparseRationalMatrix":
        if self._big is not None:
            return SparseRationalMatrix(self.cols, self.rows, den=self.den,
                                        big={(c, r): v for (r, c), v in self._big.items()})
        return SparseRationalMatrix(self.cols, self.rows, self.num.T, self.den)

    @property
    def T(self):
        return self.transpose()

    def flatten(self) -> dict[int, int]:
        """Row-major position -> numerator (for stacking matrices as vectors)."""
        return {r * self.cols + c: v for (r, c), v in self._dict().items()}

    def rank(self) -> int:
        return rank_of_rows(_rows_of(self._dict()))

    # --------------------------------------------------------- serialization
    def to_json(self) -> dict:
        items = sorted(self.entries().items())
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[r, c, f"{v.numerator}/{v.denominator}"] for (r, c), v in items]}

    @classmethod
    def from_json(cls, data: dict | str) -> "SparseRationalMatrix":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_entries(int(data["rows"]), int(data["cols"]),
                                {(int(r), int(c)): Fraction(v) for r, c, v in data["entries"]})

    def to_triplets(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines += [f"{r} {c} {v}" for (r, c), v in sorted(self.entries().items())]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_triplets(cls, text: str) -> "SparseRationalMatrix":
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        rows, cols = int(lines[0][0]), int(lines[0][1])
        return cls.from_entries(rows, cols, {(int(r), int(c)): Fraction(v) for r, c, v in lines[1:]})


def _div_exact(m: sp.csr_matrix, g: int) -> sp.csr_matrix:
    out = m.copy()
    out.data //= g
    return out


def _csr_from_dict(rows: int, cols: int, entries: Mapping[tuple[int, int], int]) -> sp.csr_matrix:
    if not entries:
        return sp.csr_matrix((rows, cols), dtype=np.int64)
    rc = np.array(list(entries.keys()), dtype=np.int64)
    data = np.array(list(entries.values()), dtype=np.int64)
    return sp.csr_matrix((data, (rc[:, 0], rc[:, 1])), shape=(rows, cols))


def _rows_of(entries: Mapping[tuple[int, int], int]) -> list[dict[int, int]]:
    rows: dict[int, dict[int, int]] = {}
    for (r, c), v in entries.items():
        rows.setdefault(r, {})[c] = v
    return list(rows.values())


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {c: v // g for c, v in row.items()} if g > 1 else row


def rank_of_rows(rows: Iterable[Mapping[int, int | Fraction]]) -> int:
    """Exact rank of sparse rows (column -> value) by fraction-free elimination.

    Rational rows are first scaled to integers; after each elimination step a
    row is divided by the gcd of its entries, which keeps the integers small.
    """
    work = []
    for row in rows:
        row = {c: Fraction(v) for c, v in row.items() if v}
        if not row:
            continue
        den = 1
        for v in row.values():
            den = den * v.denominator // gcd(den, v.denominator)
        work.append(_primitive({c: int(v * den) for c, v in row.items()}))
    pivots: dict[int, dict[int, int]] = {}
    for row in work:
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = row
                break
            a, b = piv[c], row[c]
            new = {j: a * v for j, v in row.items()}
            for j, v in piv.items():
                x = new.get(j, 0) - b * v
                if x:
                    new[j] = x
                else:
                    new.pop(j, None)
            row = _primitive(new)
    return len(pivots)


def rank_dense(matrix: Iterable[Iterable]) -> int:
    return rank_of_rows({j: v for j, v in enumerate(r) if v} for r in matrix)


def stack_rank(mats: Iterable[SparseRationalMatrix]) -> int:
    """Rank of the span of the given matrices viewed as vectors."""
    rows = []
    for m in mats:
        rows.append({k: Fraction(v, m.den) for k, v in m.flatten().items()})
    return rank_of_rows(rows)
