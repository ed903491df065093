"""The algebraic model: Stanley-Reisner data and Koszul-type cochain complexes.

``C*(K)`` has basis v_I u_J with I a simplex and I, J disjoint, bidegree
(-|J|, 2|I| + 2|J|), and differential d(v_i) = 0, d(u_i) = v_i extended as a
derivation.  u-letters are kept in increasing order, so

    d(v_I u_J) = sum over j in J of (-1)^(#{j' in J : j' < j}) v_{I+j} u_{J-j},

with a term dropped when I + j is not a simplex.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import NamedTuple

from .cells import (BigradedBettiTable, BigradedChainComplex, Bidegree, bigraded_betti,
                    build_zk_complex, check_cap)
from .complex import (ComplexError, SimplicialComplex, bits_of, fmt_set, manifold_status,
                      popcount)
from .linalg import rank, in_column_span


class KoszulMonomial(NamedTuple):
    I: int  # v-part
    J: int  # u-part

    @property
    def bidegree(self) -> Bidegree:
        return -popcount(self.J), 2 * (popcount(self.I) + popcount(self.J))

    @property
    def degree(self) -> int:
        return 2 * popcount(self.I) + popcount(self.J)

    def __str__(self) -> str:
        parts = []
        if self.I:
            parts.append("v" + fmt_set(self.I))
        if self.J:
            parts.append("u" + fmt_set(self.J))
        return "*".join(parts) or "1"


@dataclass(frozen=True)
class StanleyReisnerData:
    m: int
    minimal_nonfaces: tuple[int, ...]

    def generators(self) -> list[str]:
        return ["v" + fmt_set(s) for s in self.minimal_nonfaces]


def minimal_nonfaces(K: SimplicialComplex) -> StanleyReisnerData:
    return StanleyReisnerData(K.m, K.minimal_nonfaces())


def _sign_before(J: int, bit: int) -> int:
    return -1 if popcount(J & ((1 << bit) - 1)) % 2 else 1


def koszul_differential(K: SimplicialComplex):
    simplices = K.simplices

    def d(x: KoszulMonomial) -> list[tuple[KoszulMonomial, int]]:
        out = []
        for b in bits_of(x.J):
            bit = 1 << b
            if (x.I | bit) in simplices:
                out.append((KoszulMonomial(x.I | bit, x.J & ~bit), _sign_before(x.J, b)))
        return out

    return d


def build_koszul_complex(K: SimplicialComplex, max_m: int | None = None) -> BigradedChainComplex:
    """The finite cochain complex C*(K), all components 0 <= p <= m."""
    check_cap("koszul", K.m, max_m)
    full = K.full_mask
    bases: dict[Bidegree, list[KoszulMonomial]] = {}
    for I in K:
        rest = full & ~I
        J = rest
        while True:
            x = KoszulMonomial(I, J)
            bases.setdefault(x.bidegree, []).append(x)
            if J == 0:
                break
            J = (J - 1) & rest
    for cells in bases.values():
        cells.sort()
    return BigradedChainComplex("koszul", K.m, bases, koszul_differential(K), +1, K.n)


def tor_dimensions(C: BigradedChainComplex, jobs: int = 1) -> BigradedBettiTable:
    """Cohomology dimensions of a Koszul cochain complex, per bidegree."""
    table = bigraded_betti(C, jobs)
    table.label = "koszul"
    return table


def monomial_product(a: KoszulMonomial, b: KoszulMonomial,
                     K: SimplicialComplex) -> tuple[int, KoszulMonomial] | None:
    """Product in C*(K) as ``(sign, monomial)``, or None when it vanishes."""
    if a.I & b.I or a.J & b.J:
        return None
    I, J = a.I | b.I, a.J | b.J
    if I & J or I not in K.simplices:
        return None
    # reorder u_{a.J} u_{b.J} into increasing order
    swaps = sum(popcount(b.J & ((1 << x) - 1)) for x in bits_of(a.J))
    return (-1 if swaps % 2 else 1), KoszulMonomial(I, J)


@dataclass(frozen=True)
class FundamentalClass:
    monomial: KoszulMonomial
    bidegree: Bidegree
    # relative sign of every top monomial's class with respect to ``monomial``
    relative_signs: dict[int, int]

    @property
    def total_degree(self) -> int:
        return sum(self.bidegree)


class FundamentalClassError(ComplexError):
    pass


def fundamental_class(K: SimplicialComplex, max_m: int | None = None) -> FundamentalClass:
    """Representative v_I u_{[m]-I} of the top class, I the first facet.

    Requires a closed, strongly connected, orientable pseudomanifold.  Every
    other facet monomial is checked to represent plus or minus the same class.
    """
    status = manifold_status(K)
    if not (status.is_closed_pseudomanifold and status.is_strongly_connected):
        raise FundamentalClassError("K is not a strongly connected closed pseudomanifold")
    if not status.is_orientable:
        raise FundamentalClassError("K is not orientable")
    m, n = K.m, K.n
    C = build_koszul_complex(K, max_m)
    top: Bidegree = (-(m - n), 2 * m)
    below = C.source(top)
    B = C.boundary(below)
    index = C.index(top)
    facets = sorted(K.facets, key=lambda F: tuple(bits_of(F)))
    first = KoszulMonomial(facets[0], K.full_mask & ~facets[0])
    i0 = index[first]
    r = rank(B).rank
    if C.dim(top) - r != 1 or in_column_span(B, {i0: 1}):
        raise FundamentalClassError("top cohomology is not one-dimensional")
    signs = {facets[0]: 1}
    for F in facets[1:]:
        i = index[KoszulMonomial(F, K.full_mask & ~F)]
        if in_column_span(B, {i: 1, i0: -1}):
            signs[F] = 1
        elif in_column_span(B, {i: 1, i0: 1}):
            signs[F] = -1
        else:
            raise FundamentalClassError(f"facet {fmt_set(F)} is not cohomologous to +-{first}")
    return FundamentalClass(first, top, signs)


def full_koszul_crosscheck(K: SimplicialComplex, p_max: int | None = None,
                           max_m: int | None = None, jobs: int = 1) -> BigradedBettiTable:
    """Cohomology of the whole complex k(K) (x) Lambda[u] for second degree <= 2 p_max.

    Basis: v^a u_J with supp(a) a simplex, no disjointness condition.  The
    result should agree with :func:`tor_dimensions` on the same range.
    """
    check_cap("full-koszul", K.m, max_m)
    m = K.m
    if p_max is None:
        p_max = min(m, 4)
    if not 0 <= p_max <= m:
        raise ValueError("p_max must lie in 0..m")
    simplices = K.simplices
    bases: dict[Bidegree, list] = {}
    for p in range(p_max + 1):
        for q in range(p + 1):
            monos = []
            for combo in combinations_with_replacement(range(m), p - q):
                support = 0
                for b in combo:
                    support |= 1 << b
                if support not in simplices:
                    continue
                a = [0] * m
                for b in combo:
                    a[b] += 1
                monos.append(tuple(a))
            for J in combinations(range(m), q):
                Jmask = sum(1 << b for b in J)
                for a in monos:
                    bases.setdefault((-q, 2 * p), []).append((a, Jmask))

    def d(x):
        a, J = x
        out = []
        for b in bits_of(J):
            a2 = list(a)
            a2[b] += 1
            support = sum(1 << i for i, e in enumerate(a2) if e)
            if support in simplices:
                out.append(((tuple(a2), J & ~(1 << b)), _sign_before(J, b)))
        return out

    C = BigradedChainComplex("full-koszul", m, bases, d, +1, K.n)
    table = bigraded_betti(C, jobs)
    table.label = "full-koszul"
    return table


def betti_table(K: SimplicialComplex, method: str = "cellular", jobs: int = 1,
                max_m: int | None = None) -> BigradedBettiTable:
    """Bigraded Betti numbers of Z_K by one of three independent pipelines."""
    from .cells import hochster_oracle
    if method == "cellular":
        return bigraded_betti(build_zk_complex(K, max_m), jobs)
    if method == "koszul":
        return tor_dimensions(build_koszul_complex(K, max_m), jobs)
    if method == "hochster":
        return hochster_oracle(K, max_m)
    raise ValueError(f"unknown method {method!r}")


def gorenstein_star_check(K: SimplicialComplex, table: BigradedBettiTable | None = None) -> bool:
    """Whether b_{-q,2p} = b_{-(m-n)+q, 2(m-p)} holds for every bidegree."""
    if table is None:
        table = betti_table(K)
    m, n = K.m, K.n
    keys = set(table.values)
    keys |= {(-(m - n) - r, 2 * m - s) for r, s in keys}
    return all(table[(r, s)] == table[(-(m - n) - r, 2 * m - s)] for r, s in keys)
