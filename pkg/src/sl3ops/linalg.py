"""Sparse exact matrices over Q(i) and row reduction.

Operator matrices in this package are banded (derivatives shift degree by at
most a few), so rows are stored as ``{column: value}`` dicts holding only
nonzero entries.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalars import ZERO, GaussRational, to_gr

__all__ = ["ExactMatrix", "rref_rows", "nullspace", "normalize_basis"]

Row = dict  # column index -> nonzero GaussRational


class ExactMatrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[Row] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [dict() for _ in range(nrows)]
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        self.rows = tuple({c: to_gr(v) for c, v in r.items() if v} for r in rows)

    # -- construction ---------------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "ExactMatrix":
        return cls(nrows, nrows if ncols is None else ncols)

    @classmethod
    def identity(cls, n: int, scale=1) -> "ExactMatrix":
        return cls(n, n, [{i: scale} for i in range(n)])

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "ExactMatrix":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        return cls(nrows, ncols, [{j: v for j, v in enumerate(row) if v} for row in data])

    @classmethod
    def from_columns(cls, cols: Sequence[Row], nrows: int) -> "ExactMatrix":
        rows: list[Row] = [dict() for _ in range(nrows)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                if v:
                    rows[i][j] = v
        return cls(nrows, len(cols), rows)

    def to_dense(self) -> list[list[GaussRational]]:
        return [[r.get(j, ZERO) for j in range(self.ncols)] for r in self.rows]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, ZERO)

    def column(self, j: int) -> Row:
        return {i: r[j] for i, r in enumerate(self.rows) if j in r}

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        out = []
        for a, b in zip(self.rows, other.rows):
            r = dict(a)
            for c, v in b.items():
                s = r.get(c, ZERO) + v
                if s:
                    r[c] = s
                else:
                    r.pop(c, None)
            out.append(r)
        return ExactMatrix(self.nrows, self.ncols, out)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.nrows, self.ncols, [{c: -v for c, v in r.items()} for r in self.rows])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def scale(self, s) -> "ExactMatrix":
        s = to_gr(s)
        if not s:
            return ExactMatrix(self.nrows, self.ncols)
        return ExactMatrix(self.nrows, self.ncols, [{c: v * s for c, v in r.items()} for r in self.rows])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        orows = other.rows
        for r in self.rows:
            acc: Row = {}
            for k, a in r.items():
                for c, b in orows[k].items():
                    acc[c] = acc.get(c, ZERO) + a * b
            out.append({c: v for c, v in acc.items() if v})
        return ExactMatrix(self.nrows, other.ncols, out)

    def apply(self, vec: Sequence) -> list[GaussRational]:
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        out = []
        for r in self.rows:
            acc = ZERO
            for c, a in r.items():
                if vec[c]:
                    acc = acc + a * vec[c]
            out.append(acc)
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_columns(list(self.rows), self.ncols)

    def trace(self) -> GaussRational:
        return sum((r.get(i, ZERO) for i, r in enumerate(self.rows)), ZERO)

    def is_zero(self) -> bool:
        return not any(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(frozenset(r.items()) for r in self.rows)))

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols}, nnz={sum(map(len, self.rows))})"

    # -- linear algebra -------------------------------------------------------
    def nullspace(self) -> list[list[GaussRational]]:
        return nullspace(self.rows, self.ncols)

    def rank(self) -> int:
        return len(rref_rows(self.rows, self.ncols)[1])


def rref_rows(rows: Iterable[Row], ncols: int) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form of sparse rows; returns (rows, pivot columns).

    Pivot entries are 1 and every pivot column is zero outside its pivot row.
    """
    work = [dict(r) for r in rows if r]
    pivots: list[int] = []
    done: list[Row] = []
    for col in range(ncols):
        idx = next((k for k, r in enumerate(work) if col in r), None)
        if idx is None:
            continue
        prow = work.pop(idx)
        inv = prow[col].inverse()
        prow = {c: v * inv for c, v in prow.items()}
        for r in work + done:
            f = r.get(col)
            if f is None:
                continue
            for c, v in prow.items():
                s = r.get(c, ZERO) - f * v
                if s:
                    r[c] = s
                else:
                    r.pop(c, None)
        work = [r for r in work if r]
        done.append(prow)
        pivots.append(col)
        if not work:
            break
    return done, pivots


def nullspace(rows: Iterable[Row], ncols: int) -> list[list[GaussRational]]:
    """Kernel basis, itself in reduced echelon form (see :func:`normalize_basis`)."""
    reduced, pivots = rref_rows(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        vec = [ZERO] * ncols
        vec[free] = GaussRational(1)
        for prow, pc in zip(reduced, pivots):
            v = prow.get(free)
            if v:
                vec[pc] = -v
        basis.append(vec)
    return normalize_basis(basis, ncols)


def normalize_basis(vectors: Sequence[Sequence], length: int) -> list[list[GaussRational]]:
    """Canonical basis of span(vectors): reduced echelon rows, leading coefficient 1."""
    rows = [{j: to_gr(v) for j, v in enumerate(vec) if v} for vec in vectors]
    reduced, _ = rref_rows(rows, length)
    return [[r.get(j, ZERO) for j in range(length)] for r in reduced]
