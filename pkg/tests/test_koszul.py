from __future__ import annotations

import pytest

from momentangle.cells import bigraded_betti, build_zk_complex, zk_dimension_formula
from momentangle.complex import SimplicialComplex, mask_of
from momentangle.koszul import (FundamentalClassError, KoszulMonomial, betti_table,
                                build_koszul_complex, full_koszul_crosscheck,
                                fundamental_class, gorenstein_star_check, koszul_differential,
                                minimal_nonfaces, monomial_product, tor_dimensions)
from momentangle.library import boundary_simplex, points, suite, torus9

SMALL = suite(8)


def mono(I=(), J=()):
    return KoszulMonomial(mask_of(I), mask_of(J))


def test_minimal_nonfaces():
    assert minimal_nonfaces(boundary_simplex(2)).minimal_nonfaces == (mask_of({1, 2, 3}),)
    assert minimal_nonfaces(boundary_simplex(2)).generators() == ["v123"]
    assert sorted(minimal_nonfaces(points(3)).minimal_nonfaces) == sorted(
        [mask_of({1, 2}), mask_of({1, 3}), mask_of({2, 3})])
    assert minimal_nonfaces(SimplicialComplex([{1, 2, 3}], 3)).minimal_nonfaces == ()


def test_differential_examples():
    K = points(3)
    d = koszul_differential(K)
    # v_1 u_2 is a cocycle because {1,2} is not an edge
    assert d(mono({1}, {2})) == []
    assert sorted(d(mono((), {1, 2}))) == sorted([(mono({1}, {2}), 1), (mono({2}, {1}), -1)])
    assert d(mono()) == []
    K = boundary_simplex(2)
    assert koszul_differential(K)(mono({1}, {2})) == [(mono({1, 2}), 1)]


@pytest.mark.parametrize("name", sorted(SMALL))
def test_koszul_square_zero_and_dims(name):
    K = SMALL[name]
    C = build_koszul_complex(K)
    C.check_square_zero()
    f = K.f_vector()
    for bd in C.bases:
        assert C.target(bd) == (bd[0] + 1, bd[1])
        q, p = -bd[0], bd[1] // 2
        assert C.dim(bd) == zk_dimension_formula(f, K.m, q, p)


def test_tor_examples():
    assert tor_dimensions(build_koszul_complex(points(3)))[(-1, 4)] == 3
    for K in SMALL.values():
        assert tor_dimensions(build_koszul_complex(K))[(0, 0)] == 1
    assert tor_dimensions(build_koszul_complex(boundary_simplex(2)))[(-1, 6)] == 1


@pytest.mark.parametrize("name", sorted(SMALL))
def test_three_pipelines_agree(name):
    K = SMALL[name]
    cell = betti_table(K, "cellular")
    assert betti_table(K, "koszul") == cell
    assert betti_table(K, "hochster") == cell


def test_unknown_method():
    with pytest.raises(ValueError):
        betti_table(points(3), "magic")


def test_monomial_product_examples():
    K = boundary_simplex(3)
    assert monomial_product(mono({1}), mono({1}), K) is None
    assert monomial_product(mono((), {1}), mono((), {2}), K) == (1, mono((), {1, 2}))
    assert monomial_product(mono((), {2}), mono((), {1}), K) == (-1, mono((), {1, 2}))
    # v-part leaves K
    assert monomial_product(mono({1, 2}), mono({3, 4}), K) is None
    # v and u parts overlap
    assert monomial_product(mono({1}), mono((), {1}), K) is None


def test_product_graded_commutative():
    K = boundary_simplex(4)
    monos = [m for cells in build_koszul_complex(K).bases.values() for m in cells]
    monos = monos[::7]
    for a in monos:
        for b in monos:
            ab, ba = monomial_product(a, b, K), monomial_product(b, a, K)
            if ab is None:
                assert ba is None
                continue
            assert ab[1] == ba[1]
            assert ab[0] == (-1) ** (a.degree * b.degree) * ba[0]


def test_fundamental_class_examples():
    fc = fundamental_class(boundary_simplex(2))
    assert fc.monomial == mono({1, 2}, {3})
    assert fc.bidegree == (-1, 6)
    fc = fundamental_class(torus9())
    assert fc.bidegree == (-6, 18)
    assert fc.total_degree == 12
    assert set(fc.relative_signs.values()) <= {1, -1}
    assert len(fc.relative_signs) == 18
    with pytest.raises(FundamentalClassError):
        fundamental_class(points(3))
    with pytest.raises(FundamentalClassError):
        fundamental_class(SMALL["rp2"])


def test_full_koszul_crosscheck_examples():
    T = full_koszul_crosscheck(points(3), 2)
    assert T[(0, 0)] == 1 and T[(-1, 4)] == 3
    K = boundary_simplex(2)
    ref = betti_table(K, "koszul")
    assert full_koszul_crosscheck(K, 3) == ref


@pytest.mark.parametrize("name", ["points:4", "boundary-simplex:3", "random:5:0", "random:5:3"])
def test_full_koszul_agrees_in_range(name):
    K = SMALL[name]
    p_max = 3
    full = full_koszul_crosscheck(K, p_max)
    ref = betti_table(K, "koszul")
    keys = set(full.values) | {bd for bd in ref.values if bd[1] <= 2 * p_max}
    assert all(full[bd] == ref[bd] for bd in keys)


def test_gorenstein_examples():
    assert gorenstein_star_check(boundary_simplex(3))
    assert not gorenstein_star_check(points(3))
    assert not gorenstein_star_check(torus9())
