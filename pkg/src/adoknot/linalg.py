"""Minimal sparse matrices over any exact coefficient ring.

Entries must support +, *, unary - and is_zero(); both CycloNum and LaurentA
qualify.  Indices are dense integers; storage is a dict keyed by (row, col).
"""

from __future__ import annotations


class OpMatrix:
    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int, entries: dict | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries = {k: v for k, v in (entries or {}).items() if not v.is_zero()}

    @staticmethod
    def identity(n: int, one) -> "OpMatrix":
        return OpMatrix(n, n, {(i, i): one for i in range(n)})

    @staticmethod
    def zero(nrows: int, ncols: int) -> "OpMatrix":
        return OpMatrix(nrows, ncols, {})

    def __add__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return OpMatrix(self.nrows, self.ncols, out)

    def __neg__(self):
        return OpMatrix(self.nrows, self.ncols, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "OpMatrix":
        return OpMatrix(self.nrows, self.ncols, {k: v * c for k, v in self.entries.items()})

    def __matmul__(self, other: "OpMatrix") -> "OpMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        by_row: dict = {}
        for (r, k), v in self.entries.items():
            by_row.setdefault(r, []).append((k, v))
        by_col: dict = {}
        for (k, c), v in other.entries.items():
            by_col.setdefault(k, []).append((c, v))
        out: dict = {}
        for r, row in by_row.items():
            acc: dict = {}
            for k, v in row:
                for c, w in by_col.get(k, ()):
                    prod = v * w
                    s = acc.get(c)
                    acc[c] = prod if s is None else s + prod
            for c, s in acc.items():
                if not s.is_zero():
                    out[(r, c)] = s
        return OpMatrix(self.nrows, other.ncols, out)

    def power(self, k: int) -> "OpMatrix":
        if k < 0:
            raise ValueError("negative power")
        if self.nrows != self.ncols:
            raise ValueError("power of non-square matrix")
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result @ base
            k >>= 1
            if k:
                base = base @ base
        if result is None:
            raise ValueError("power(0) needs an explicit identity; use identity()")
        return result

    def kron(self, other: "OpMatrix") -> "OpMatrix":
        out = {}
        for (r1, c1), v1 in self.entries.items():
            for (r2, c2), v2 in other.entries.items():
                out[(r1 * other.nrows + r2, c1 * other.ncols + c2)] = v1 * v2
        return OpMatrix(self.nrows * other.nrows, self.ncols * other.ncols, out)

    def col(self, c: int) -> dict:
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def map_values(self, f) -> "OpMatrix":
        return OpMatrix(self.nrows, self.ncols, {k: f(v) for k, v in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, OpMatrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.entries == other.entries
        )

    def is_zero(self) -> bool:
        return not self.entries

    def __repr__(self):
        return f"OpMatrix({self.nrows}x{self.ncols}, nnz={len(self.entries)})"
