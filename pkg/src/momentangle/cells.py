"""Bigraded cellular chain complexes of Z_K, W_K and the pair (Z_K, T^m).

A cell of the poly-disk (D^2)^m is a word in the letters D, I, 0, T, 1, one
letter per coordinate.  Words are stored as tuples of disjoint bitmasks; the
1-letters fill whatever is left.  Letter dimensions are D: 2, I: 1, T: 1,
0 and 1: 0, and the bidegrees are

    D: (0, 2)   T: (-1, 2)   I: (1, 0)   0, 1: (0, 0).

The boundary of a word is the product-complex boundary with
dD = T, dI = 1 - 0, dT = d0 = d1 = 0 and the Koszul sign
(-1)^(number of odd-dimensional letters to the left).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, NamedTuple

from .complex import SimplicialComplex, bits_of, popcount, submasks
from .linalg import SparseMatrix, check_composable, dense_rank, rank_many

Bidegree = tuple[int, int]

DEFAULT_CAPS = {
    "zk": 14,
    "zk-rel-torus": 14,
    "koszul": 14,
    "wk": 9,
    "hochster": 8,
    "full-koszul": 7,
}


class CapExceeded(RuntimeError):
    """The vertex count is above the enumeration cap for a pipeline."""


def check_cap(kind: str, m: int, max_m: int | None = None) -> None:
    """Raise :class:`CapExceeded` when ``m`` is above the cap for ``kind``.

    Precedence: explicit ``max_m``, then the ``MAL_MAX_M`` environment
    variable, then :data:`DEFAULT_CAPS`.
    """
    if max_m is None:
        env = os.environ.get("MAL_MAX_M")
        max_m = int(env) if env else DEFAULT_CAPS[kind]
    if m > max_m:
        raise CapExceeded(f"{kind}: m = {m} exceeds the cap {max_m} "
                          "(raise it with --max-m or MAL_MAX_M)")


class ZCell(NamedTuple):
    """Cell D_D T_T of Z_K; coordinates outside D and T carry the letter 1."""
    D: int
    T: int

    @property
    def bidegree(self) -> Bidegree:
        return -popcount(self.T), 2 * (popcount(self.D) + popcount(self.T))

    @property
    def dimension(self) -> int:
        return 2 * popcount(self.D) + popcount(self.T)


class WCell(NamedTuple):
    """Cell D_D I_I 0_Z T_T of W_K."""
    D: int
    I: int
    Z: int
    T: int

    @property
    def bidegree(self) -> Bidegree:
        return (popcount(self.I) - popcount(self.T),
                2 * (popcount(self.D) + popcount(self.T)))

    @property
    def dimension(self) -> int:
        return 2 * popcount(self.D) + popcount(self.I) + popcount(self.T)


def _below(bit: int) -> int:
    return (1 << bit) - 1


def z_boundary(cell: ZCell) -> list[tuple[ZCell, int]]:
    D, T = cell
    out = []
    for b in bits_of(D):
        sign = -1 if popcount(T & _below(b)) % 2 else 1
        out.append((ZCell(D & ~(1 << b), T | 1 << b), sign))
    return out


def w_boundary(cell: WCell) -> list[tuple[WCell, int]]:
    D, I, Z, T = cell
    odd = I | T
    out = []
    for b in bits_of(D | I):
        bit = 1 << b
        sign = -1 if popcount(odd & _below(b)) % 2 else 1
        if D & bit:
            out.append((WCell(D & ~bit, I, Z, T | bit), sign))
        else:
            out.append((WCell(D, I & ~bit, Z, T), sign))
            out.append((WCell(D, I & ~bit, Z | bit, T), -sign))
    return out


class BigradedChainComplex:
    """Finite bigraded complex with a differential of bidegree (step, 0).

    ``step = -1`` for cellular chain complexes, ``+1`` for cochain complexes.
    Boundary matrices are built lazily per bidegree; terms of the
    differential that fall outside the basis are dropped, which realises
    quotient complexes.
    """

    def __init__(self, name: str, m: int, bases: dict[Bidegree, list],
                 differential: Callable[[Hashable], Iterable[tuple[Hashable, int]]],
                 step: int = -1, n: int | None = None):
        self.name = name
        self.m = m
        self.n = n
        self.bases = {bd: cells for bd, cells in sorted(bases.items()) if cells}
        self.differential = differential
        self.step = step
        self._index: dict[Bidegree, dict[Hashable, int]] = {}
        self._matrices: dict[Bidegree, SparseMatrix] = {}

    def __repr__(self) -> str:
        return (f"BigradedChainComplex({self.name!r}, m={self.m}, "
                f"{len(self.bases)} components, {self.size} cells)")

    @property
    def size(self) -> int:
        return sum(len(c) for c in self.bases.values())

    def dims(self) -> dict[Bidegree, int]:
        return {bd: len(c) for bd, c in self.bases.items()}

    def dim(self, bd: Bidegree) -> int:
        return len(self.bases.get(bd, ()))

    def dims_json(self) -> dict:
        """Component sizes in the Betti-table JSON layout, with "dim" per row."""
        return {"label": self.name, "m": self.m, "n": self.n,
                "table": [{"q": -a, "p2": b, "dim": len(c)}
                          for (a, b), c in sorted(self.bases.items()) if c]}

    def target(self, bd: Bidegree) -> Bidegree:
        return bd[0] + self.step, bd[1]

    def source(self, bd: Bidegree) -> Bidegree:
        return bd[0] - self.step, bd[1]

    def index(self, bd: Bidegree) -> dict[Hashable, int]:
        if bd not in self._index:
            self._index[bd] = {c: i for i, c in enumerate(self.bases.get(bd, ()))}
        return self._index[bd]

    def boundary(self, bd: Bidegree) -> SparseMatrix:
        """Matrix of the differential out of component ``bd``."""
        if bd not in self._matrices:
            tgt = self.target(bd)
            tindex = self.index(tgt)
            entries: dict[tuple[int, int], int] = {}
            for j, cell in enumerate(self.bases.get(bd, ())):
                for image, coeff in self.differential(cell):
                    i = tindex.get(image)
                    if i is not None:
                        entries[i, j] = entries.get((i, j), 0) + coeff
            self._matrices[bd] = SparseMatrix(len(tindex), self.dim(bd), entries)
        return self._matrices[bd]

    def check_square_zero(self) -> None:
        """Raise ``ChainComplexError`` if some composite d∘d is non-zero."""
        for bd in self.bases:
            tgt = self.target(bd)
            if self.dim(tgt) and self.dim(self.target(tgt)):
                check_composable(self.boundary(bd), self.boundary(tgt))

    def component_words(self, bd: Bidegree) -> list:
        return list(self.bases.get(bd, ()))


@dataclass
class BigradedBettiTable:
    """Non-zero bigraded Betti numbers keyed by bidegree (first, second).

    For Z_K the key (-q, 2p) holds b_{-q,2p}; for W_K the first degree may
    be positive.
    """

    values: dict[Bidegree, int]
    m: int
    n: int | None = None
    label: str = ""

    def __post_init__(self):
        self.values = {bd: v for bd, v in sorted(self.values.items()) if v}

    def __getitem__(self, bd: Bidegree) -> int:
        return self.values.get(tuple(bd), 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BigradedBettiTable):
            return NotImplemented
        return self.values == other.values

    def items(self):
        return self.values.items()

    def ordinary(self) -> list[int]:
        """Ordinary Betti numbers b_k = sum over first + second = k."""
        top = max((a + b for a, b in self.values), default=0)
        out = [0] * (top + 1)
        for (a, b), v in self.values.items():
            out[a + b] += v
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** ((a + b) % 2) * v for (a, b), v in self.values.items())

    def diff(self, other: BigradedBettiTable) -> dict[Bidegree, tuple[int, int]]:
        keys = set(self.values) | set(other.values)
        return {k: (self[k], other[k]) for k in sorted(keys) if self[k] != other[k]}

    def to_json(self) -> dict:
        return {
            "label": self.label, "m": self.m, "n": self.n,
            "table": [{"q": -a, "p2": b, "betti": v} for (a, b), v in self.values.items()],
            "ordinary": self.ordinary(),
        }

    @classmethod
    def from_json(cls, data: dict | str) -> BigradedBettiTable:
        if isinstance(data, str):
            data = json.loads(data)
        values = {(-row["q"], row["p2"]): row["betti"] for row in data["table"]}
        return cls(values, data["m"], data.get("n"), data.get("label", ""))

    def format(self) -> str:
        """Grid with rows 2p (top = largest) and columns first degree."""
        if not self.values:
            return "(all Betti numbers vanish)"
        firsts = sorted({a for a, _ in self.values})
        lo, hi = min(firsts + [0]), max(firsts + [0])
        cols = list(range(lo, hi + 1))
        width = max(4, *(len(str(v)) + 1 for v in self.values.values()))
        head = "2p\\r".rjust(6) + "".join(str(c).rjust(width) for c in cols)
        lines = [head]
        for s in range(2 * self.m, -1, -2):
            row = [self[(c, s)] for c in cols]
            cells = "".join((str(v) if v else ".").rjust(width) for v in row)
            lines.append(str(s).rjust(6) + cells)
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# complexes

def zk_cells(K: SimplicialComplex) -> dict[Bidegree, list[ZCell]]:
    bases: dict[Bidegree, list[ZCell]] = {}
    full = K.full_mask
    for D in K:
        for T in submasks(full & ~D):
            cell = ZCell(D, T)
            bases.setdefault(cell.bidegree, []).append(cell)
    for cells in bases.values():
        cells.sort()
    return bases


def build_zk_complex(K: SimplicialComplex, max_m: int | None = None) -> BigradedChainComplex:
    """Cellular chains of Z_K: words D_I T_J with I a simplex of K."""
    check_cap("zk", K.m, max_m)
    return BigradedChainComplex("zk", K.m, zk_cells(K), z_boundary, -1, K.n)


def build_zk_rel_torus(K: SimplicialComplex, max_m: int | None = None) -> BigradedChainComplex:
    """Chains of the pair (Z_K, T^m): words with non-empty D-part."""
    check_cap("zk-rel-torus", K.m, max_m)
    bases = {bd: [c for c in cells if c.D] for bd, cells in zk_cells(K).items()}
    return BigradedChainComplex("zk-rel-torus", K.m, bases, z_boundary, -1, K.n)


def wk_cells(K: SimplicialComplex) -> dict[Bidegree, list[WCell]]:
    bases: dict[Bidegree, list[WCell]] = {}
    full = K.full_mask
    for S in K:
        if not S:
            continue
        rest = full & ~S
        for Z in submasks(S):
            if not Z:
                continue
            for I in submasks(S & ~Z):
                D = S & ~Z & ~I
                for T in submasks(rest):
                    cell = WCell(D, I, Z, T)
                    bases.setdefault(cell.bidegree, []).append(cell)
    for cells in bases.values():
        cells.sort()
    return bases


def build_wk_complex(K: SimplicialComplex, max_m: int | None = None) -> BigradedChainComplex:
    """Cellular chains of W_K: words D_I I_J 0_L T_P with I+J+L in K, L non-empty."""
    check_cap("wk", K.m, max_m)
    return BigradedChainComplex("wk", K.m, wk_cells(K), w_boundary, -1, K.n)


def build_complex_for(space: str, K: SimplicialComplex,
                      max_m: int | None = None) -> BigradedChainComplex:
    builders = {"zk": build_zk_complex, "wk": build_wk_complex,
                "zk-rel-torus": build_zk_rel_torus}
    if space not in builders:
        raise ValueError(f"unknown space {space!r}")
    return builders[space](K, max_m)


# ---------------------------------------------------------------------------
# homology

def bigraded_betti(C: BigradedChainComplex, jobs: int = 1,
                   check: bool = True) -> BigradedBettiTable:
    """(Co)homology dimensions of every component of ``C``.

    b(bd) = dim C(bd) - rank d(out of bd) - rank d(into bd).
    """
    if check:
        C.check_square_zero()
    keys = [bd for bd in C.bases if C.dim(C.target(bd))]
    ranks = dict(zip(keys, rank_many((C.boundary(bd) for bd in keys), jobs)))
    values = {}
    for bd, cells in C.bases.items():
        values[bd] = len(cells) - ranks.get(bd, 0) - ranks.get(C.source(bd), 0)
    return BigradedBettiTable(values, C.m, C.n, C.name)


# ---------------------------------------------------------------------------
# Hochster's formula, an independent route to the Betti numbers of Z_K

def reduced_cohomology(simplices: Iterable[int]) -> dict[int, int]:
    """Reduced Betti numbers {k: dim H~^k} of a complex given by all its simplices.

    The empty simplex sits in degree -1, so the void complex {} has
    H~^{-1} of dimension 1.
    """
    by_size: dict[int, list[int]] = {}
    for s in simplices:
        by_size.setdefault(popcount(s), []).append(s)
    top = max(by_size)
    ranks = {}
    for size in range(1, top + 1):
        rows = by_size.get(size - 1, [])
        cols = by_size.get(size, [])
        pos = {s: i for i, s in enumerate(rows)}
        dense = [[0] * len(cols) for _ in rows]
        for j, s in enumerate(cols):
            for k, b in enumerate(bits_of(s)):
                dense[pos[s & ~(1 << b)]][j] = -1 if k % 2 else 1
        ranks[size] = dense_rank(dense)
    out = {}
    for size, faces in by_size.items():
        d = len(faces) - ranks.get(size, 0) - ranks.get(size + 1, 0)
        if d:
            out[size - 1] = d
    return out


def hochster_oracle(K: SimplicialComplex, max_m: int | None = None) -> BigradedBettiTable:
    """b_{-q,2p} = sum over |W| = p of dim H~^{p-q-1}(K_W)."""
    check_cap("hochster", K.m, max_m)
    values: dict[Bidegree, int] = {}
    for W in range(1 << K.m):
        p = popcount(W)
        for k, d in reduced_cohomology(K.full_subcomplex(W)).items():
            q = p - k - 1
            values[-q, 2 * p] = values.get((-q, 2 * p), 0) + d
    return BigradedBettiTable(values, K.m, K.n, "hochster")


# ---------------------------------------------------------------------------
# counting laws

def zk_dimension_formula(f: tuple[int, ...], m: int, q: int, p: int) -> int:
    """dim C_{-q,2p}(Z_K) = f_{p-q-1} C(m-p+q, q)."""
    from math import comb
    fe = (1, *f)
    k = p - q
    if k < 0 or k >= len(fe) or q < 0 or m - p + q < q:
        return 0
    return fe[k] * comb(m - p + q, q)


def wk_cell_count_formula(f: tuple[int, ...], m: int, i: int, j: int, l: int, p: int) -> int:
    """Number of W_K cells with |D|=i, |I|=j, |0|=l, |T|=p (l >= 1)."""
    from math import comb
    s = i + j + l
    if l < 1 or min(i, j, p) < 0 or s > len(f) or s + p > m:
        return 0
    return f[s - 1] * comb(s, i) * comb(j + l, l) * comb(m - s, p)
