from fractions import Fraction

import numpy as np
import pytest

from gf import linalg
from gf.field import get_field
from pg.geometry import AmbientMismatchError, GeometryError, Subspace, gauss, hyperplanes, point_index, \
    subspaces_of_dim
from pg.multiset import (NegativeMultiplicityError, PointMultiset, add, direct_sum, embed, format_multiset,
                         gamma, gamma1, hyperplane_multiplicities, is_divisible, max_divisor, multiplicity,
                         parse_multiset, point_distribution, project, restrict, scale, span, spectrum,
                         standard_equations_check, sub_checked, to_span, transform)
from pg.structure import (StructureKind, build_from_tag, classify_structure, complement, desarguesian_spread,
                          disjoint, elliptic_quadric, field_reduction, glue, lower_bound_space_mult,
                          projective_base, special_point_mult)


# ---------------------------------------------------------
# 工具
# ---------------------------------------------------------
def random_multiset(rng, q, k, support=6, max_mult=3):
    size = gauss(k, q)
    idx = rng.choice(size, size=min(support, size), replace=False)
    return PointMultiset.from_counts(q, k, {int(i): int(rng.integers(1, max_mult + 1)) for i in idx})


def random_subspace(rng, q, k, dim):
    while True:
        s = Subspace.span(list(rng.integers(0, q, size=(dim, k))), q, k)
        if s.dim == dim:
            return s


def random_divisible(rng, q, k, dim, count):
    """若干 dim 维子空间特征函数之和，q^(dim-1)-可整除"""
    m = PointMultiset.empty(q, k)
    for _ in range(count):
        m = add(m, PointMultiset.chi(random_subspace(rng, q, k, dim)))
    return m


# ---------------------------------------------------------
# 几何
# ---------------------------------------------------------
def test_gaussian_coefficients():
    assert [gauss(k, 2) for k in range(1, 6)] == [1, 3, 7, 15, 31]
    assert gauss(3, 4) == 21
    with pytest.raises(GeometryError):
        gauss(-1, 2)


def test_point_list_and_index():
    pts = hyperplanes(3, 3)
    assert len(pts) == 13
    for i, v in enumerate(pts):
        assert point_index(v, 3) == i
        assert point_index((2 * v) % 3, 3) == i


def test_subspace_meet_and_join():
    a = Subspace.span([[1, 0, 0, 0], [0, 1, 0, 0]], 2)
    b = Subspace.span([[0, 0, 1, 0], [0, 1, 0, 0]], 2)
    assert a.meet(b).dim == 1
    assert a.join(b).dim == 3
    assert len(a.points()) == 3
    with pytest.raises(AmbientMismatchError):
        a.meet(Subspace.ambient(3, 2))


def test_subspaces_of_dim_count():
    # PG(3,2) 中 35 条直线
    assert len(subspaces_of_dim(4, 2, 2)) == 35


# ---------------------------------------------------------
# 多重集演算
# ---------------------------------------------------------
@pytest.mark.parametrize("q,k", [(2, 3), (2, 4), (2, 5), (3, 3), (3, 4), (4, 3)])
def test_standard_equations_random(q, k):
    rng = np.random.default_rng(1000 + 10 * q + k)
    for _ in range(170):
        m = random_multiset(rng, q, k, support=int(rng.integers(1, 9)))
        assert standard_equations_check(m)


def test_divisible_examples():
    plane = PointMultiset.chi(Subspace.ambient(3, 2))
    assert is_divisible(plane, 4)
    assert max_divisor(plane) == 4
    assert spectrum(plane).as_dict() == {3: 7}
    assert is_divisible(PointMultiset.empty(2, 3), 64)
    assert not is_divisible(PointMultiset.from_vectors(2, [[1, 0], [0, 1]]), 2)
    assert is_divisible(projective_base(5, 2), 2)


@pytest.mark.parametrize("q,k,dim", [(2, 5, 3), (2, 6, 4), (3, 4, 2), (4, 4, 2)])
def test_restriction_to_hyperplane_keeps_divisibility(q, k, dim):
    rng = np.random.default_rng(2000 + k)
    delta = q ** (dim - 1)
    for _ in range(125):
        m = random_divisible(rng, q, k, dim, int(rng.integers(1, 4)))
        assert is_divisible(m, delta)
        normal = hyperplanes(k, q)[int(rng.integers(0, gauss(k, q)))].reshape(1, -1)
        h = Subspace.span(list(linalg.kernel(normal, get_field(q))), q, k)
        assert h.dim == k - 1
        assert is_divisible(restrict(m, h), delta // q)


@pytest.mark.parametrize("q,k,dim", [(2, 5, 3), (2, 5, 4), (3, 4, 3), (4, 3, 2)])
def test_projection_contract(q, k, dim):
    rng = np.random.default_rng(3000 + q * k)
    delta = q ** (dim - 1)
    for _ in range(125):
        m = random_divisible(rng, q, k, dim, int(rng.integers(1, 4)))
        qpt = hyperplanes(k, q)[int(rng.integers(0, gauss(k, q)))]
        image = project(m, qpt)
        assert image.k == k - 1
        assert image.cardinality == m.cardinality - m.mult_at(qpt)
        assert is_divisible(image, delta)


def test_point_distribution_and_gammas():
    line = PointMultiset.chi(Subspace.span([[1, 0, 0], [0, 1, 0]], 2), 2)
    m = add(line, PointMultiset.from_vectors(2, [[0, 0, 1]], [5]))
    assert gamma1(m) == 5
    assert point_distribution(m).vector(5) == (0, 3, 0, 0, 1)
    assert point_distribution(m)[0] == 3
    # 过 e3 的直线与 L 交于一点
    assert gamma(m, 2) == 7
    assert gamma(m, 3) == 11
    s = Subspace.span([[0, 0, 1], [1, 0, 0]], 2)
    assert multiplicity(m, s) == 7


def test_gamma_brute_force_small():
    rng = np.random.default_rng(5)
    for _ in range(30):
        m = random_multiset(rng, 2, 4, support=5)
        for i in (2, 3):
            best = max(multiplicity(m, s) for s in subspaces_of_dim(4, 2, i))
            assert gamma(m, i) == best


def test_span_and_to_span():
    m = PointMultiset.from_vectors(2, [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0]], [1, 2, 3])
    assert span(m).dim == 2
    t = to_span(m)
    assert t.k == 2 and t.cardinality == 6
    assert sorted(c for _, c in t.items) == [1, 2, 3]


def test_embed_and_direct_sum():
    p = PointMultiset.from_vectors(2, [[1]], [4])
    line = PointMultiset.chi(Subspace.ambient(2, 2), 2)
    s = direct_sum(p, line)
    assert s.k == 3 and s.cardinality == 10
    assert is_divisible(s, 2)
    assert embed(p, 3).k == 3
    with pytest.raises(GeometryError):
        embed(s, 2)


def test_sub_checked_reports_point():
    plane = PointMultiset.chi(Subspace.ambient(3, 2))
    with pytest.raises(NegativeMultiplicityError) as err:
        sub_checked(plane, scale(plane, 2))
    assert len(err.value.point) == 3


def test_transform_preserves_spectrum():
    rng = np.random.default_rng(17)
    f = get_field(3)
    for _ in range(20):
        m = random_multiset(rng, 3, 3)
        a = linalg.random_invertible(3, f, rng)
        assert spectrum(transform(m, a)) == spectrum(m)


def test_text_format_round_trip():
    m = PointMultiset.from_vectors(4, [[1, 2, 3], [0, 1, 1]], [2, 1])
    text = format_multiset(m)
    assert text.splitlines()[0] == "4 3"
    assert parse_multiset(text) == m
    with pytest.raises(GeometryError):
        parse_multiset("2 3\n10:1\n")


# ---------------------------------------------------------
# 结构识别与构造
# ---------------------------------------------------------
def test_classify_simplex_affine_base():
    solid = Subspace.ambient(4, 2)
    tag = classify_structure(PointMultiset.chi(solid, 3))
    assert tag.kind is StructureKind.SIMPLEX_MULTIPLE and tag.multiplier == 3 and tag.dim == 4

    plane = Subspace.span([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]], 2)
    affine = sub_checked(PointMultiset.chi(solid), PointMultiset.chi(plane))
    tag = classify_structure(scale(affine, 2))
    assert tag.kind is StructureKind.AFFINE_MULTIPLE and tag.multiplier == 2 and tag.hyperplane.dim == 3
    assert build_from_tag(tag) == scale(affine, 2)

    tag = classify_structure(projective_base(6, 2))
    assert tag.kind is StructureKind.PROJECTIVE_BASE and tag.size == 6

    other = PointMultiset.from_vectors(2, [[1, 0, 0], [0, 1, 0]], [1, 2])
    assert classify_structure(other).kind is StructureKind.OTHER


def test_binary_projective_bases_are_even():
    for n in range(3, 8):
        b = projective_base(n, 2)
        assert b.cardinality == n and b.k == n - 1
        assert is_divisible(b, 2)


def test_complement_of_base_in_plane():
    plane = Subspace.ambient(3, 2)
    c = complement(projective_base(4, 2), plane, 1)
    assert c.cardinality == 3
    assert classify_structure(c).kind is StructureKind.SIMPLEX_MULTIPLE


def test_glue_keeps_divisibility():
    solid = PointMultiset.chi(Subspace.ambient(4, 2), 2)
    line = Subspace.span([[1, 0, 0, 0], [0, 1, 0, 0]], 2)
    g = glue(solid, line, extra=1)
    assert g.k == 5
    assert g.cardinality == 30 + 7 - 6
    assert is_divisible(g, 4)


def test_field_reduction_of_quadric():
    ovoid = elliptic_quadric(4)
    assert ovoid.cardinality == 17
    assert is_divisible(ovoid, 4)
    reduced = field_reduction(ovoid)
    assert reduced.q == 2 and reduced.k == 8
    assert reduced.cardinality == 51
    assert is_divisible(reduced, 8)


@pytest.mark.parametrize("t,e", [(2, 2), (3, 2), (2, 3), (2, 4)])
def test_desarguesian_spread_partitions_points(t, e):
    spread = desarguesian_spread(t, e)
    assert len(spread) == gauss(t, 2 ** e)
    assert all(s.dim == e for s in spread)
    assert disjoint(spread)
    covered = set()
    for s in spread:
        covered.update(int(i) for i in s.points())
    assert len(covered) == gauss(t * e, 2)


def test_disjoint_detects_overlap():
    plane = Subspace.span([[1, 0, 0, 0], [0, 1, 0, 0]], 2, 4)
    other = Subspace.span([[0, 1, 0, 0], [0, 0, 1, 0]], 2, 4)
    assert not disjoint([plane, other])


def test_desarguesian_spread_rejects_overlap(monkeypatch):
    monkeypatch.setattr("pg.structure.disjoint", lambda subspaces: False)
    with pytest.raises(GeometryError):
        desarguesian_spread(2, 2)


def test_closed_form_bounds():
    # 超平面重数均为 s 时的直线重数
    assert lower_bound_space_mult(2, 4, 2, 15, 7) == Fraction(3)
    first, second = special_point_mult(2, 2, 1, 4)
    assert first == 2
    assert second == 4 - (2 - 1)
    with pytest.raises(GeometryError):
        special_point_mult(2, 2, 2, 4)


def test_hyperplane_multiplicities_sum():
    rng = np.random.default_rng(23)
    m = random_multiset(rng, 3, 3)
    assert int(hyperplane_multiplicities(m).sum()) == m.cardinality * gauss(2, 3)
