from __future__ import annotations

import random
import warnings
from math import comb

import pytest

from momentangle.complex import (ComplexError, FullSimplexError, ParseError, SimplicialComplex,
                                 barycentric_subdivision, build_complex, f_from_h, format_facets,
                                 h_from_f, h_from_f_alternating, link, manifold_status, mask_of,
                                 orient, parse_facets, ridge_adjacency, ridge_sign, submasks)
from momentangle.library import (boundary_simplex, cyclic_polytope_boundary, octahedron_boundary,
                                 points, random_complex, rp2_6, suite, torus9)


def test_build_single_facet_is_full_simplex():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        K = build_complex([{1, 2, 3}], 3)
    assert K.n == 3 and K.is_full_simplex
    assert caught
    with pytest.raises(FullSimplexError):
        build_complex([{1, 2, 3}], 3, strict=True)


def test_build_boundary_triangle():
    K = build_complex([{1, 2}, {1, 3}, {2, 3}], 3)
    assert K.n == 2
    assert K.f_vector() == (3, 3)


def test_dominated_facet_dropped():
    with pytest.warns(UserWarning):
        K = build_complex([{1, 2}, {1, 2, 3}], 3)
    assert K.facet_lists() == [(1, 2, 3)]


def test_build_errors():
    with pytest.raises(ComplexError):
        build_complex([{1, 4}], 3)
    with pytest.raises(ComplexError):
        build_complex([], 3)
    with pytest.raises(ComplexError):
        build_complex([{0, 1}], 3)


def test_full_simplex_rejected_by_require_proper():
    K = SimplicialComplex([{1, 2}], 2)
    with pytest.raises(FullSimplexError):
        K.require_proper()
    boundary_simplex(3).require_proper()


def test_f_vectors():
    assert boundary_simplex(3).f_vector() == (4, 6, 4)
    assert torus9().f_vector() == (9, 27, 18)
    assert SimplicialComplex([{1}], 1).f_vector() == (1,)


def test_h_vectors():
    assert torus9().h_vector() == (1, 6, 12, -1)
    assert boundary_simplex(3).h_vector() == (1, 1, 1, 1)
    assert SimplicialComplex([{1}], 1).h_vector() == (1, 0)


def test_euler_numbers():
    assert torus9().euler_number() == 0
    assert boundary_simplex(3).euler_number() == 2
    assert boundary_simplex(2).euler_number() == 0
    assert SimplicialComplex([{1}], 1).euler_number() == 1
    assert rp2_6().euler_number() == 1


def test_downward_closure():
    for K in suite(9).values():
        S = K.simplices
        assert 0 in S
        for s in S:
            assert all(t in S for t in submasks(s))


def test_h_formulas_agree_on_random_complexes():
    rng = random.Random(2024)
    for _ in range(1000):
        K = random_complex(rng.randint(2, 8), rng)
        f = K.f_vector()
        assert h_from_f(f) == h_from_f_alternating(f)
        assert f_from_h(h_from_f(f)) == f


def test_euler_number_from_h():
    rng = random.Random(7)
    for _ in range(200):
        K = random_complex(rng.randint(2, 8), rng)
        n = K.n
        assert K.euler_number() == 1 + (-1) ** (n - 1) * K.h_vector()[n]


def test_h_zero_is_one_and_sum_is_top_face_count():
    for K in suite(9).values():
        h = K.h_vector()
        assert h[0] == 1
        assert sum(h) == K.f_vector()[-1]


def test_link_of_vertex_in_triangle_boundary():
    L = link(boundary_simplex(2), {1})
    assert L.m == 2 and L.f_vector() == (2,)
    assert L.labels == ("2", "3")


def test_link_of_edge_in_tetrahedron_boundary():
    L = link(boundary_simplex(3), {1, 2})
    assert L.f_vector() == (2,)
    assert L.n == 1


def test_link_of_empty_simplex_is_k():
    K = torus9()
    assert link(K, set()) == K


def test_link_requires_simplex():
    with pytest.raises(ComplexError):
        link(boundary_simplex(2), {1, 2, 3})


def test_torus_vertex_links_are_hexagons():
    K = torus9()
    for v in range(1, 10):
        L = link(K, {v})
        assert L.f_vector() == (6, 6)


def test_barycentric_subdivision_examples():
    assert barycentric_subdivision(boundary_simplex(2)).f_vector() == (6, 6)
    assert barycentric_subdivision(SimplicialComplex([{1}], 1)).f_vector() == (1,)
    assert barycentric_subdivision(SimplicialComplex([{1, 2}], 2)).f_vector() == (3, 2)


@pytest.mark.parametrize("name", ["boundary-simplex:3", "torus9", "points:3", "rp2"])
def test_barycentric_vertex_count_and_dimension(name):
    K = suite(9)[name]
    B = barycentric_subdivision(K)
    assert B.f_vector()[0] == sum(K.f_vector())
    assert B.dim == K.dim
    assert B.euler_number() == K.euler_number()


def test_manifold_status_tetrahedron():
    st = manifold_status(boundary_simplex(3))
    assert st.is_pure and st.is_closed_pseudomanifold
    assert st.is_strongly_connected and st.is_orientable


def test_manifold_status_torus():
    st = manifold_status(torus9(), attested=True)
    assert st.is_closed_pseudomanifold and st.is_orientable
    assert set(st.link_euler_numbers.values()) == {0}
    assert st.user_attested_manifold


def test_manifold_status_points():
    st = manifold_status(points(3))
    assert not st.is_closed_pseudomanifold
    assert st.is_orientable is None


def test_manifold_status_projective_plane():
    st = manifold_status(rp2_6())
    assert st.is_closed_pseudomanifold and st.is_orientable is False


def test_non_pure_complex():
    st = manifold_status(SimplicialComplex([{1, 2, 3}, {4}], 4))
    assert not st.is_pure and not st.is_closed_pseudomanifold


@pytest.mark.parametrize("K", [boundary_simplex(3), torus9(), cyclic_polytope_boundary(4, 7),
                               octahedron_boundary(3)], ids=str)
def test_orientation_independent_of_start_facet(K):
    base = orient(K)
    assert base is not None
    for F in K.facets:
        other = orient(K, start=F)
        s = other[K.facets[0]] * base[K.facets[0]]
        assert all(other[G] == s * base[G] for G in K.facets)


def test_orientation_is_coherent():
    K = torus9()
    sign = orient(K)
    for R, fs in ridge_adjacency(K).items():
        a, b = fs
        assert sign[a] * ridge_sign(a, R) == -sign[b] * ridge_sign(b, R)


def test_parse_header_and_comments():
    K = parse_facets("# a comment\nm 5\n1 2\n\n2 3\n")
    assert K.m == 5 and K.ghost_vertices == (4, 5)
    assert parse_facets(format_facets(K)) == K


@pytest.mark.parametrize("text,line", [("1 2\n2 a\n", 2), ("m x\n1 2\n", 1),
                                       ("m 3\n1 4\n", 2), ("1 1\n", 1), ("0 1\n", 1),
                                       ("1 2\nm 3\n", 2)])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_facets(text)
    assert exc.value.lineno == line
    assert f"line {line}" in str(exc.value)


def test_parse_empty_input():
    with pytest.raises(ParseError):
        parse_facets("# nothing\n")


def test_minimal_nonfaces_points():
    K = points(3)
    assert sorted(K.minimal_nonfaces()) == sorted(mask_of(s) for s in ({1, 2}, {1, 3}, {2, 3}))


def test_f_vector_binomial_bound():
    for K in suite(9).values():
        for i, fi in enumerate(K.f_vector()):
            assert 0 < fi <= comb(K.m, i + 1)
