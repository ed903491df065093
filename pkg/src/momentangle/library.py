"""Standard complexes used by tests, the acceptance suite and ``--example``."""

from __future__ import annotations

import random
from itertools import combinations

from .complex import ComplexError, SimplicialComplex, mask_of


def boundary_simplex(n: int) -> SimplicialComplex:
    """Boundary of the simplex on n + 1 vertices: all n-subsets of [n+1]."""
    if n < 1:
        raise ComplexError("boundary-simplex needs n >= 1")
    return SimplicialComplex(combinations(range(1, n + 2), n), n + 1)


def points(k: int) -> SimplicialComplex:
    """k disjoint vertices."""
    return SimplicialComplex([[i] for i in range(1, k + 1)], k)


def torus9() -> SimplicialComplex:
    """The 3x3 grid triangulation of the 2-torus, f = (9, 27, 18).

    Vertex (i, j) of the grid, i, j mod 3, is numbered 3*i + j + 1.  Each
    square is cut along the diagonal from (i, j) to (i+1, j+1).
    """
    def v(i: int, j: int) -> int:
        return 3 * (i % 3) + (j % 3) + 1

    facets = []
    for i in range(3):
        for j in range(3):
            facets.append((v(i, j), v(i + 1, j), v(i + 1, j + 1)))
            facets.append((v(i, j), v(i, j + 1), v(i + 1, j + 1)))
    return SimplicialComplex(facets, 9)


def cyclic_polytope_boundary(d: int, m: int) -> SimplicialComplex:
    """Boundary of the cyclic d-polytope with m vertices (Gale evenness)."""
    if not 2 <= d < m:
        raise ComplexError("cyclic polytope needs 2 <= d < m")
    facets = []
    for S in combinations(range(1, m + 1), d):
        s = set(S)
        outside = [x for x in range(1, m + 1) if x not in s]
        if all(sum(1 for k in S if a < k < b) % 2 == 0
               for a, b in combinations(outside, 2)):
            facets.append(S)
    return SimplicialComplex(facets, m)


def octahedron_boundary(k: int = 3) -> SimplicialComplex:
    """Boundary of the k-dimensional cross-polytope; vertices i and i+k are antipodal."""
    facets = []
    for choice in range(1 << k):
        facets.append([i + 1 + (k if choice >> i & 1 else 0) for i in range(k)])
    return SimplicialComplex(facets, 2 * k)


def rp2_6() -> SimplicialComplex:
    """Six-vertex real projective plane (non-orientable)."""
    faces = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
             (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6)]
    return SimplicialComplex(faces, 6)


def random_complex(m: int, rng: random.Random | int | None = None,
                   max_facets: int | None = None) -> SimplicialComplex:
    """A random downward-closed complex on [m] without ghost vertices.

    Facets are random non-empty proper subsets; vertices missed by every
    facet are added as isolated points.
    """
    if m < 2:
        raise ComplexError("random complex needs m >= 2")
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    count = rng.randint(1, max_facets or max(2, m))
    facets = []
    for _ in range(count):
        size = rng.randint(1, m - 1)
        facets.append(mask_of(rng.sample(range(1, m + 1), size)))
    covered = 0
    for f in facets:
        covered |= f
    facets += [1 << b for b in range(m) if not covered >> b & 1]
    return SimplicialComplex(facets, m)


def by_name(example: str) -> SimplicialComplex:
    """Resolve an ``--example`` name.

    Recognised: ``boundary-simplex:N``, ``points:K``, ``torus9``,
    ``cyclic:D:M``, ``cross-polytope:K``, ``rp2``, ``random:M:SEED``.
    """
    name, *args = example.split(":")
    try:
        nums = [int(a) for a in args]
    except ValueError:
        raise ComplexError(f"bad example arguments in {example!r}") from None
    table = {
        "boundary-simplex": (boundary_simplex, 1),
        "points": (points, 1),
        "torus9": (torus9, 0),
        "cyclic": (cyclic_polytope_boundary, 2),
        "cross-polytope": (octahedron_boundary, 1),
        "rp2": (rp2_6, 0),
        "random": (random_complex, 2),
    }
    if name not in table:
        raise ComplexError(f"unknown example {name!r}")
    fn, arity = table[name]
    if len(nums) != arity:
        raise ComplexError(f"example {name!r} takes {arity} argument(s)")
    return fn(*nums)


def suite(max_m: int = 8) -> dict[str, SimplicialComplex]:
    """Named test complexes with m <= max_m, ordered by size."""
    out = {
        "points:3": points(3),
        "points:4": points(4),
        "boundary-simplex:2": boundary_simplex(2),
        "boundary-simplex:3": boundary_simplex(3),
        "boundary-simplex:4": boundary_simplex(4),
        "boundary-simplex:5": boundary_simplex(5),
        "cross-polytope:3": octahedron_boundary(3),
        "rp2": rp2_6(),
        "cyclic:4:7": cyclic_polytope_boundary(4, 7),
        "torus9": torus9(),
    }
    for seed in range(6):
        m = 5 + seed % 3
        out[f"random:{m}:{seed}"] = random_complex(m, seed)
    return {k: K for k, K in out.items() if K.m <= max_m}
