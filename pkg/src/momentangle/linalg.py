"""Exact sparse linear algebra over the rationals.

Matrices hold ``int`` or ``Fraction`` entries.  Rank is computed by
fraction-free integer elimination: rows are scaled to integers, every
elimination step is ``row <- p*row - a*pivot_row`` followed by removal of the
row content, and pivots are chosen Markowitz-style (sparsest column, then
sparsest row, unit entries preferred).
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Number = int | Fraction


class ChainComplexError(ArithmeticError):
    """A composite of consecutive differentials is not zero."""


class SparseMatrix:
    """A ``rows x cols`` matrix stored as ``{(row, col): value}`` without zeros.

    Columns index the source basis and rows the target basis, so a boundary
    map ``C_k -> C_{k-1}`` has ``dim C_{k-1}`` rows.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int,
                 entries: Mapping[tuple[int, int], Number] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], Number] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            if v:
                self.entries[r, c] = v

    @classmethod
    def identity(cls, n: int) -> SparseMatrix:
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Number]]) -> SparseMatrix:
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        return cls(nrows, ncols, {(i, j): v for i, row in enumerate(rows)
                                  for j, v in enumerate(row) if v})

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def to_dense(self) -> list[list[Number]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> SparseMatrix:
        return SparseMatrix(self.cols, self.rows,
                            {(c, r): v for (r, c), v in self.entries.items()})

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> SparseMatrix:
        """Entry (r, c) moves to (row_perm[r], col_perm[c])."""
        return SparseMatrix(self.rows, self.cols,
                            {(row_perm[r], col_perm[c]): v
                             for (r, c), v in self.entries.items()})

    def hstack(self, other: SparseMatrix) -> SparseMatrix:
        if other.rows != self.rows:
            raise ValueError("row counts differ")
        ent = dict(self.entries)
        ent.update({(r, c + self.cols): v for (r, c), v in other.entries.items()})
        return SparseMatrix(self.rows, self.cols + other.cols, ent)

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        by_row: dict[int, list[tuple[int, Number]]] = defaultdict(list)
        for (r, c), v in other.entries.items():
            by_row[r].append((c, v))
        acc: dict[tuple[int, int], Number] = defaultdict(int)
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                acc[r, c] += v * w
        return SparseMatrix(self.rows, other.cols, acc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


@dataclass(frozen=True)
class RankProfile:
    rank: int
    nullity: int


def _integer_rows(M: SparseMatrix, transpose: bool = False) -> dict[int, dict[int, int]]:
    rows: dict[int, dict[int, Number]] = defaultdict(dict)
    for (r, c), v in M.entries.items():
        if transpose:
            r, c = c, r
        rows[r][c] = v
    out = {}
    for r, row in rows.items():
        if any(isinstance(v, Fraction) for v in row.values()):
            scale = lcm(*(Fraction(v).denominator for v in row.values()))
            row = {c: int(v * scale) for c, v in row.items()}
        out[r] = row
    return out


def _eliminate(rows: dict[int, dict[int, int]]) -> int:
    """Destructively row-reduce integer rows; returns the rank."""
    colrows: dict[int, set[int]] = defaultdict(set)
    for r, row in rows.items():
        for c in row:
            colrows[c].add(r)
    heap = [(len(s), c) for c, s in colrows.items()]
    heapq.heapify(heap)
    rank = 0
    while heap:
        cnt, c = heapq.heappop(heap)
        members = colrows.get(c)
        if not members:
            continue
        if len(members) != cnt:
            heapq.heappush(heap, (len(members), c))
            continue
        pr = min(members, key=lambda r: (len(rows[r]), abs(rows[r][c]) != 1, r))
        prow = rows.pop(pr)
        for cc in prow:
            colrows[cc].discard(pr)
        pv = prow[c]
        touched: set[int] = set(prow)
        for r in list(colrows[c]):
            row = rows[r]
            a = row[c]
            g = gcd(pv, a)
            mp, ma = pv // g, a // g
            if mp != 1:
                for cc in row:
                    row[cc] *= mp
            for cc, pval in prow.items():
                nv = row.get(cc, 0) - ma * pval
                if nv:
                    if cc not in row:
                        colrows[cc].add(r)
                        touched.add(cc)
                    row[cc] = nv
                elif cc in row:
                    del row[cc]
                    colrows[cc].discard(r)
                    touched.add(cc)
            if not row:
                del rows[r]
            elif mp != 1 or abs(ma) != 1:
                content = 0
                for v in row.values():
                    content = gcd(content, v)
                    if content == 1:
                        break
                if content > 1:
                    for cc in row:
                        row[cc] //= content
        del colrows[c]
        for cc in touched:
            if cc in colrows:
                heapq.heappush(heap, (len(colrows[cc]), cc))
        rank += 1
    return rank


def rank(M: SparseMatrix) -> RankProfile:
    """Exact rank and nullity (``cols - rank``) of ``M`` over Q."""
    if M.is_zero():
        return RankProfile(0, M.cols)
    r = _eliminate(_integer_rows(M, transpose=M.rows > M.cols))
    return RankProfile(r, M.cols - r)


def rank_many(matrices: Iterable[SparseMatrix], jobs: int = 1) -> list[int]:
    """Ranks of independent matrices, optionally in a process pool.

    Output order follows input order regardless of ``jobs``.
    """
    mats = list(matrices)
    if jobs <= 1 or len(mats) < 2:
        return [rank(M).rank for M in mats]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return [p.rank for p in pool.map(rank, mats, chunksize=1)]


def dense_rank(rows: Sequence[Sequence[Number]]) -> int:
    """Rank by plain Gaussian elimination over ``Fraction``.

    Deliberately independent of :func:`rank`; used for small matrices.
    """
    A = [[Fraction(v) for v in row] for row in rows]
    if not A:
        return 0
    ncols = len(A[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, len(A)):
            if A[i][c]:
                f = A[i][c] / A[r][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
        if r == len(A):
            break
    return r


def in_column_span(M: SparseMatrix, v: Mapping[int, Number]) -> bool:
    """Whether the vector ``{row: value}`` lies in the column space of ``M``."""
    col = SparseMatrix(M.rows, 1, {(r, 0): x for r, x in v.items()})
    return rank(M.hstack(col)).rank == rank(M).rank


def check_composable(d_in: SparseMatrix, d_out: SparseMatrix) -> None:
    if d_in.rows != d_out.cols:
        raise ValueError(f"differentials do not compose: {d_in.shape} then {d_out.shape}")
    if not (d_out @ d_in).is_zero():
        raise ChainComplexError("consecutive differentials compose to a non-zero map")


def betti_from_pair(d_in: SparseMatrix, d_out: SparseMatrix) -> int:
    """dim ker(d_out) - rank(d_in) at the space between the two maps."""
    check_composable(d_in, d_out)
    return rank(d_out).nullity - rank(d_in).rank
