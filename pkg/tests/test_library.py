from __future__ import annotations

import pytest

from momentangle.complex import ComplexError, manifold_status
from momentangle.library import (by_name, cyclic_polytope_boundary, octahedron_boundary,
                                 random_complex, suite)


def test_cyclic_polytope_boundary():
    K = cyclic_polytope_boundary(4, 7)
    assert K.f_vector() == (7, 21, 28, 14)
    assert K.h_vector() == (1, 3, 6, 3, 1)
    assert manifold_status(K).is_orientable


def test_cross_polytope():
    K = octahedron_boundary(3)
    assert K.f_vector() == (6, 12, 8)
    assert K.h_vector() == (1, 3, 3, 1)


@pytest.mark.parametrize("example,m", [("boundary-simplex:3", 4), ("points:5", 5), ("torus9", 9),
                                    ("cyclic:4:7", 7), ("cross-polytope:4", 8), ("rp2", 6),
                                    ("random:6:2", 6)])
def test_by_name(example, m):
    assert by_name(example).m == m


@pytest.mark.parametrize("example", ["nothing", "points", "points:x", "torus9:3"])
def test_by_name_errors(example):
    with pytest.raises(ComplexError):
        by_name(example)


def test_random_complexes_are_proper_and_reproducible():
    for seed in range(50):
        K = random_complex(6, seed)
        assert not K.is_full_simplex
        assert not K.ghost_vertices
        assert K == random_complex(6, seed)


def test_suite_respects_bound():
    assert all(K.m <= 7 for K in suite(7).values())
    assert "torus9" in suite(9) and "torus9" not in suite(8)
