"""Abstract simplicial complexes on a ground set [m] = {1, ..., m}.

Simplices are stored as integer bitmasks: vertex ``i`` (1-based) is bit
``i - 1``.  Every public function that accepts vertex sets also accepts
plain iterables of 1-based vertex labels.
"""

from __future__ import annotations

import warnings
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from math import comb
from typing import Iterable, Iterator, Sequence


class ComplexError(ValueError):
    """Invalid simplicial complex input."""


class FullSimplexError(ComplexError):
    """Raised where the full simplex 2^[m] is not an admissible input."""


class ParseError(ComplexError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


# ---------------------------------------------------------------------------
# bitmask helpers

def mask_of(vertices: Iterable[int]) -> int:
    """Bitmask of a collection of 1-based vertices."""
    mask = 0
    for v in vertices:
        if v < 1:
            raise ComplexError(f"vertex index {v} is not positive")
        mask |= 1 << (v - 1)
    return mask


def vertices_of(mask: int) -> tuple[int, ...]:
    """Sorted 1-based vertices of a bitmask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def bits_of(mask: int) -> list[int]:
    """Sorted 0-based bit positions of a bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def popcount(mask: int) -> int:
    return mask.bit_count()


def fmt_set(mask: int) -> str:
    verts = vertices_of(mask)
    if not verts:
        return "{}"
    if all(v < 10 for v in verts):
        return "".join(map(str, verts))
    return "{" + ",".join(map(str, verts)) + "}"


def _as_mask(s: int | Iterable[int]) -> int:
    if isinstance(s, int):
        return s
    return mask_of(s)


def _maximal(masks: Iterable[int]) -> list[int]:
    """Inclusion-maximal members of a family of bitmasks."""
    uniq = sorted(set(masks), key=lambda x: -popcount(x))
    kept: list[int] = []
    for x in uniq:
        if not any(x & k == x for k in kept):
            kept.append(x)
    return sorted(kept, key=lambda x: (popcount(x), vertices_of(x)))


# ---------------------------------------------------------------------------
# the complex itself

class SimplicialComplex:
    """A downward-closed family of subsets of [m], given by its facets.

    ``m`` is explicit, so vertices that are not simplices ("ghost" vertices)
    are allowed; links produce them naturally.  ``n`` is the maximal facet
    cardinality, i.e. dimension + 1.
    """

    __slots__ = ("m", "facets", "labels", "__dict__")

    def __init__(self, facets: Iterable[int | Iterable[int]], m: int | None = None,
                 labels: Sequence[str] | None = None):
        masks = [_as_mask(f) for f in facets]
        if not masks:
            raise ComplexError("facet list is empty")
        top = max(masks).bit_length()
        if m is None:
            m = top
        if m < 0:
            raise ComplexError("vertex count must be non-negative")
        if top > m:
            bad = max(v for f in masks for v in vertices_of(f))
            raise ComplexError(f"vertex {bad} outside 1..{m}")
        self.m = m
        self.facets: tuple[int, ...] = tuple(_maximal(masks))
        if labels is not None and len(labels) != m:
            raise ComplexError("label count does not match m")
        self.labels = tuple(labels) if labels is not None else None

    # -- basic shape -------------------------------------------------------

    @property
    def n(self) -> int:
        """Maximal number of vertices in a simplex (dimension + 1)."""
        return max(popcount(f) for f in self.facets)

    @property
    def dim(self) -> int:
        return self.n - 1

    @property
    def full_mask(self) -> int:
        return (1 << self.m) - 1

    @property
    def is_full_simplex(self) -> bool:
        return self.facets == (self.full_mask,)

    def require_proper(self) -> None:
        """Raise :class:`FullSimplexError` when K = 2^[m]."""
        if self.is_full_simplex:
            raise FullSimplexError(
                f"K is the full simplex on {self.m} vertices; need n < m")

    @cached_property
    def simplices(self) -> frozenset[int]:
        out: set[int] = set()
        for f in self.facets:
            out.update(submasks(f))
        return frozenset(out)

    @cached_property
    def simplices_by_size(self) -> tuple[tuple[int, ...], ...]:
        """``simplices_by_size[k]`` lists the simplices with k vertices, sorted."""
        buckets: list[list[int]] = [[] for _ in range(self.n + 1)]
        for s in self.simplices:
            buckets[popcount(s)].append(s)
        return tuple(tuple(sorted(b, key=vertices_of)) for b in buckets)

    @cached_property
    def vertex_mask(self) -> int:
        out = 0
        for f in self.facets:
            out |= f
        return out

    @property
    def ghost_vertices(self) -> tuple[int, ...]:
        return vertices_of(self.full_mask & ~self.vertex_mask)

    def __contains__(self, s) -> bool:
        return _as_mask(s) in self.simplices

    def __iter__(self) -> Iterator[int]:
        for bucket in self.simplices_by_size:
            yield from bucket

    def __len__(self) -> int:
        return len(self.simplices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.m == other.m and self.facets == other.facets

    def __hash__(self) -> int:
        return hash((self.m, self.facets))

    def __repr__(self) -> str:
        shown = " ".join(fmt_set(f) for f in self.facets[:8])
        more = " ..." if len(self.facets) > 8 else ""
        return f"SimplicialComplex(m={self.m}, n={self.n}, facets=[{shown}{more}])"

    def facet_lists(self) -> list[tuple[int, ...]]:
        return [vertices_of(f) for f in self.facets]

    # -- invariants --------------------------------------------------------

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.simplices_by_size[1:])

    def h_vector(self) -> tuple[int, ...]:
        h = h_from_f(self.f_vector())
        if h != h_from_f_alternating(self.f_vector()):
            raise AssertionError("h-vector expansions disagree")
        return h

    def euler_number(self) -> int:
        f = self.f_vector()
        chi = sum((-1) ** i * fi for i, fi in enumerate(f))
        h = h_from_f(f)
        n = len(f)
        if chi != 1 + (-1) ** ((n - 1) % 2) * h[n]:
            raise AssertionError("Euler number disagrees with h_n")
        return chi

    def full_subcomplex(self, w: int) -> list[int]:
        """Simplices of K contained in the vertex set ``w`` (as bitmasks)."""
        return [s for s in self.simplices if s & w == s]

    def minimal_nonfaces(self) -> tuple[int, ...]:
        """Inclusion-minimal subsets of [m] that are not simplices."""
        out = []
        simp = self.simplices
        # A minimal non-face is sigma + {v} with every codim-1 face in K.
        cands: set[int] = set()
        for s in simp:
            for v in range(self.m):
                bit = 1 << v
                if not s & bit and (s | bit) not in simp:
                    cands.add(s | bit)
        for c in cands:
            if all((c & ~(1 << b)) in simp for b in bits_of(c)):
                out.append(c)
        return tuple(sorted(out, key=lambda x: (popcount(x), vertices_of(x))))


# ---------------------------------------------------------------------------
# f- and h-vector algebra

def _f_ext(f: Sequence[int]) -> list[int]:
    """f-vector with the f_{-1} = 1 entry prepended."""
    return [1, *f]


def h_from_f(f: Sequence[int]) -> tuple[int, ...]:
    """h-vector from the polynomial identity

        h_0 t^n + ... + h_n = (t-1)^n + f_0 (t-1)^{n-1} + ... + f_{n-1}.
    """
    n = len(f)
    fe = _f_ext(f)
    # coefficient list indexed by power of t
    coeffs = [0] * (n + 1)
    for i in range(n + 1):
        e = n - i
        for k in range(e + 1):
            coeffs[k] += fe[i] * comb(e, k) * (-1) ** (e - k)
    return tuple(coeffs[n - k] for k in range(n + 1))


def h_from_f_alternating(f: Sequence[int]) -> tuple[int, ...]:
    """h_k = sum_i (-1)^(k-i) C(n-i, k-i) f_{i-1}."""
    n = len(f)
    fe = _f_ext(f)
    return tuple(
        sum((-1) ** (k - i) * comb(n - i, k - i) * fe[i] for i in range(k + 1))
        for k in range(n + 1))


def f_from_h(h: Sequence[int]) -> tuple[int, ...]:
    """Inverse transform: f_{k-1} = sum_i C(n-i, k-i) h_i."""
    n = len(h) - 1
    return tuple(sum(comb(n - i, k - i) * h[i] for i in range(k + 1))
                 for k in range(1, n + 1))


# ---------------------------------------------------------------------------
# construction and operations

def build_complex(facets: Iterable[int | Iterable[int]], m: int | None = None,
                  strict: bool = False) -> SimplicialComplex:
    """Build a complex from facets, dropping dominated ones.

    With ``strict=True`` the full simplex is rejected with
    :class:`FullSimplexError`; otherwise it only triggers a warning.
    """
    K = SimplicialComplex(facets, m)
    if K.is_full_simplex and K.m > 0:
        if strict:
            K.require_proper()
        warnings.warn("complex is the full simplex 2^[m]", stacklevel=2)
    return K


def f_vector(K: SimplicialComplex) -> tuple[int, ...]:
    return K.f_vector()


def h_vector(K: SimplicialComplex) -> tuple[int, ...]:
    return K.h_vector()


def euler_number(K: SimplicialComplex) -> int:
    return K.euler_number()


def link(K: SimplicialComplex, sigma: int | Iterable[int]) -> SimplicialComplex:
    """Link of ``sigma`` re-indexed onto the ground set [m] minus sigma.

    Vertex labels of the result record the original vertex numbers.
    """
    s = _as_mask(sigma)
    if s not in K.simplices:
        raise ComplexError(f"{fmt_set(s)} is not a simplex of K")
    if s == 0:
        return K
    keep = [b for b in range(K.m) if not s >> b & 1]
    relabel = {b: i for i, b in enumerate(keep)}

    def move(x: int) -> int:
        out = 0
        for b in bits_of(x):
            out |= 1 << relabel[b]
        return out

    faces = [move(f & ~s) for f in K.facets if f & s == s]
    base = K.labels or tuple(str(i + 1) for i in range(K.m))
    return SimplicialComplex(faces, len(keep), labels=[base[b] for b in keep])


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """Complex of chains of non-empty simplices of K.

    Vertices are numbered by the order of ``iter(K)`` (size, then lexicographic)
    with the empty simplex skipped; labels carry the simplex names.
    """
    verts = [s for s in K if s]
    index = {s: i for i, s in enumerate(verts)}
    facets = []
    for F in K.facets:
        if F == 0:
            continue
        for order in permutations(bits_of(F)):
            chain, acc = 0, 0
            for b in order:
                acc |= 1 << b
                chain |= 1 << index[acc]
            facets.append(chain)
    if not facets:
        raise ComplexError("barycentric subdivision of the void complex")
    return SimplicialComplex(facets, len(verts), labels=[fmt_set(s) for s in verts])


@dataclass(frozen=True)
class ManifoldStatus:
    is_pure: bool
    is_closed_pseudomanifold: bool
    is_strongly_connected: bool
    is_orientable: bool | None
    link_euler_numbers: dict[int, int] = field(default_factory=dict)
    user_attested_manifold: bool = False
    # per-facet orientation signs (+1/-1) when orientable
    orientation: dict[int, int] | None = None

    def as_dict(self) -> dict:
        return {
            "is_pure": self.is_pure,
            "is_closed_pseudomanifold": self.is_closed_pseudomanifold,
            "is_strongly_connected": self.is_strongly_connected,
            "is_orientable": self.is_orientable,
            "link_euler_numbers": {str(k): v for k, v in self.link_euler_numbers.items()},
            "user_attested_manifold": self.user_attested_manifold,
        }


def ridge_sign(facet: int, ridge: int) -> int:
    """Sign with which ``ridge`` appears in the boundary of sorted ``facet``."""
    missing = facet & ~ridge
    pos = popcount(facet & (missing - 1))
    return -1 if pos % 2 else 1


def ridge_adjacency(K: SimplicialComplex) -> dict[int, list[int]]:
    """Map each (n-1)-element subset of a facet to the facets containing it."""
    n = K.n
    incidence: dict[int, list[int]] = defaultdict(list)
    for F in K.facets:
        if popcount(F) != n:
            continue
        for b in bits_of(F):
            incidence[F & ~(1 << b)].append(F)
    return incidence


def orient(K: SimplicialComplex, start: int | None = None) -> dict[int, int] | None:
    """Propagate facet orientations across ridges.

    Returns a sign per facet such that every ridge receives opposite induced
    orientations from its two facets, or None when no such choice exists.
    Each strongly connected component is seeded with +1 at its first facet
    (or at ``start`` for the component containing it).
    """
    incidence = ridge_adjacency(K)
    nbrs: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for R, fs in incidence.items():
        if len(fs) == 2:
            a, b = fs
            nbrs[a].append((b, R))
            nbrs[b].append((a, R))
    sign: dict[int, int] = {}
    seeds = list(K.facets)
    if start is not None:
        seeds.remove(start)
        seeds.insert(0, start)
    for seed in seeds:
        if seed in sign:
            continue
        sign[seed] = 1
        queue = deque([seed])
        while queue:
            F = queue.popleft()
            for G, R in nbrs[F]:
                want = -sign[F] * ridge_sign(F, R) * ridge_sign(G, R)
                if G not in sign:
                    sign[G] = want
                    queue.append(G)
                elif sign[G] != want:
                    return None
    return sign


def manifold_status(K: SimplicialComplex, attested: bool = False) -> ManifoldStatus:
    n = K.n
    pure = all(popcount(F) == n for F in K.facets)
    incidence = ridge_adjacency(K)
    closed = pure and all(len(incidence.get(R, ())) == 2
                          for R in K.simplices_by_size[n - 1]) if n >= 1 else False
    # strong connectivity over shared ridges
    adj: dict[int, set[int]] = defaultdict(set)
    for fs in incidence.values():
        for a in fs:
            adj[a].update(x for x in fs if x != a)
    seen = {K.facets[0]}
    queue = deque(seen)
    while queue:
        F = queue.popleft()
        for G in adj[F]:
            if G not in seen:
                seen.add(G)
                queue.append(G)
    strongly = pure and len(seen) == len(K.facets)
    orientation = orient(K) if closed else None
    orientable = (orientation is not None) if closed else None
    links = {v: link(K, 1 << (v - 1)).euler_number() for v in vertices_of(K.vertex_mask)}
    return ManifoldStatus(pure, closed, strongly, orientable, links, attested,
                          orientation if orientable else None)


# ---------------------------------------------------------------------------
# text format

def parse_facets(text: str) -> SimplicialComplex:
    """Parse the facet text format.

    One facet per line as whitespace-separated 1-based vertices; an optional
    ``m <int>`` header fixes the ground set; ``#`` starts a comment line.
    """
    m = None
    facets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "m":
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise ParseError(f"bad header {line!r}", lineno)
            if m is not None or facets:
                raise ParseError("header must precede facets", lineno)
            m = int(tokens[1])
            continue
        try:
            verts = [int(t) for t in tokens]
        except ValueError:
            raise ParseError(f"non-integer vertex in {line!r}", lineno) from None
        if any(v < 1 for v in verts):
            raise ParseError("vertex indices are 1-based", lineno)
        if m is not None and any(v > m for v in verts):
            raise ParseError(f"vertex outside 1..{m}", lineno)
        if len(set(verts)) != len(verts):
            raise ParseError("repeated vertex in facet", lineno)
        facets.append(mask_of(verts))
    if not facets:
        raise ParseError("no facets found")
    return SimplicialComplex(facets, m)


def format_facets(K: SimplicialComplex) -> str:
    lines = [f"m {K.m}"]
    lines += [" ".join(map(str, f)) for f in K.facet_lists()]
    return "\n".join(lines) + "\n"
