"""Cubical subcomplexes cub(K) and cc(K) of the unit cube I^m.

A face F_{I<J} of I^m is the set of points with y_i = 0 for i in I and
y_j = 1 for j outside J; it has dimension |J| - |I|.  Faces are stored as
(I, J) bitmask pairs; coordinates are only produced for export.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple

from .complex import SimplicialComplex, bits_of, popcount, submasks


class CubicalFacePair(NamedTuple):
    I: int
    J: int

    @property
    def dimension(self) -> int:
        return popcount(self.J) - popcount(self.I)

    def subfaces(self) -> Iterator[CubicalFacePair]:
        """All F_{I'<J'} with I <= I' <= J' <= J (including the face itself)."""
        free = self.J & ~self.I
        for extra_zero in submasks(free):
            for drop in submasks(free & ~extra_zero):
                yield CubicalFacePair(self.I | extra_zero, self.J & ~drop)

    def vertices(self) -> list[int]:
        """The cube vertices v_S, I <= S <= J, as bitmasks S."""
        free = self.J & ~self.I
        return sorted(self.I | s for s in submasks(free))


def cube_vertex(I: int, m: int) -> tuple[int, ...]:
    """Coordinates of v_I: 0 in the positions of I, 1 elsewhere."""
    return tuple(0 if I >> b & 1 else 1 for b in range(m))


@dataclass(frozen=True)
class CubicalComplex:
    """Subface-closed family of faces of I^m, given by generating faces."""

    m: int
    generators: tuple[CubicalFacePair, ...]
    name: str = ""

    def __contains__(self, face) -> bool:
        I, J = face
        if I & ~J:
            return False
        return any(g.I & ~I == 0 and J & ~g.J == 0 for g in self.generators)

    @cached_property
    def faces(self) -> frozenset[CubicalFacePair]:
        out: set[CubicalFacePair] = set()
        for g in self.generators:
            out.update(g.subfaces())
        return frozenset(out)

    @property
    def dimension(self) -> int:
        return max(g.dimension for g in self.generators)

    def face_counts(self) -> list[int]:
        counts = [0] * (self.dimension + 1)
        for f in self.faces:
            counts[f.dimension] += 1
        return counts

    def euler_number(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.face_counts()))

    def to_off(self) -> str:
        """OFF-style dump: cube vertices in use, then every face of dimension >= 1.

        Square faces list their corners in cyclic order; higher faces list
        their corners in increasing bitmask order.
        """
        verts = sorted({v for f in self.faces for v in f.vertices()})
        index = {v: i for i, v in enumerate(verts)}
        faces = sorted((f for f in self.faces if f.dimension >= 1),
                       key=lambda f: (f.dimension, f.I, f.J))
        lines = ["OFF", f"{len(verts)} {len(faces)} 0"]
        for v in verts:
            lines.append(" ".join(map(str, cube_vertex(v, self.m))))
        for f in faces:
            corners = f.vertices()
            if f.dimension == 2:
                a, b = bits_of(f.J & ~f.I)
                corners = [f.I, f.I | 1 << a, f.I | 1 << a | 1 << b, f.I | 1 << b]
            lines.append(" ".join([str(len(corners))] + [str(index[c]) for c in corners]))
        return "\n".join(lines) + "\n"


def cub(K: SimplicialComplex) -> CubicalComplex:
    """Faces F_{I<J} with J a simplex and I non-empty; generated by F_{v<F}."""
    gens = tuple(CubicalFacePair(1 << b, F) for F in K.facets for b in bits_of(F))
    return CubicalComplex(K.m, gens, "cub")


def cc(K: SimplicialComplex) -> CubicalComplex:
    """Faces F_{I<J} with J a simplex, I arbitrary; generated by F_J = F_{0<J}."""
    return CubicalComplex(K.m, tuple(CubicalFacePair(0, F) for F in K.facets), "cc")
