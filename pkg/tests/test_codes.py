import math

import numpy as np
import pytest

from census.claims import CARD17_LINE123_MATRIX
from codes.canonical import (automorphism_group_order, canonical_form, canonical_key, canonize, equivalent,
                             permutation_group_order)
from codes.matrix import (GeneratorMatrix, MatrixError, NonSpanningError, format_matrix, from_multiset,
                          parse_matrix, repeat, to_multiset)
from codes.weights import (INDECOMPOSABLE_A8_BLOCKS, BudgetExceededError, WeightEnumerator, a8_reachable_set,
                           is_divisible_code, we_product, weight_distribution)
from gf import linalg
from gf.field import frobenius_table, get_field
from pg.geometry import Subspace, hyperplanes, projective_points
from pg.multiset import PointMultiset, hyperplane_multiplicities, is_divisible, spectrum

SIMPLEX_3 = GeneratorMatrix.from_array(2, projective_points(3, 2).T)


def random_semilinear(g: GeneratorMatrix, rng) -> GeneratorMatrix:
    """随机的列置换、列缩放、基变换与 Frobenius 作用"""
    f = get_field(g.q)
    arr = g.array()
    arr = linalg.apply_field_map(arr, frobenius_table(int(rng.integers(0, f.e)), f))
    arr = linalg.matmul(linalg.random_invertible(g.k, f, rng), arr, f)
    arr = arr[:, rng.permutation(arr.shape[1])]
    scalars = rng.integers(1, g.q, size=arr.shape[1])
    arr = f.mul_table[scalars[None, :], arr]
    return GeneratorMatrix.from_array(g.q, arr)


def random_code(rng, q, k, n):
    f = get_field(q)
    while True:
        arr = rng.integers(0, q, size=(k, n))
        if linalg.rank(arr, f) == k and arr.any(axis=0).all():
            return GeneratorMatrix.from_array(q, arr)


# ---------------------------------------------------------
# 生成矩阵与文本格式
# ---------------------------------------------------------
def test_matrix_validation():
    with pytest.raises(MatrixError):
        GeneratorMatrix.from_array(2, [[1, 0], [1, 0]])
    with pytest.raises(MatrixError):
        GeneratorMatrix.from_array(2, [[1, 0, 0], [0, 1, 0]])
    g = GeneratorMatrix.from_array(2, [[1, 0, 0], [0, 1, 0]], allow_zero_columns=True)
    assert g.n == 3 and g.effective_length == 2
    with pytest.raises(MatrixError):
        GeneratorMatrix.from_array(3, [[1, 3]])


def test_text_format():
    g = GeneratorMatrix.from_array(4, [[1, 0, 2, 3], [0, 1, 1, 2]])
    text = format_matrix(g)
    assert text.splitlines()[0] == "4 2 4"
    assert "a" in text
    assert parse_matrix("# comment\n" + text).entries == g.entries
    with pytest.raises(MatrixError):
        parse_matrix("2 2 3\n101\n")
    with pytest.raises(MatrixError):
        parse_matrix("")


def test_multiset_conversion():
    m = to_multiset(repeat(SIMPLEX_3, 2))
    assert m.cardinality == 14
    assert set(c for _, c in m.items) == {2}
    back = from_multiset(m)
    assert back.k == 3 and back.n == 14
    with pytest.raises(NonSpanningError):
        from_multiset(PointMultiset.from_vectors(2, [[1, 0, 0]]))
    with pytest.raises(MatrixError):
        repeat(SIMPLEX_3, 0)


# ---------------------------------------------------------
# 重量分布
# ---------------------------------------------------------
def test_simplex_weights():
    w = weight_distribution(SIMPLEX_3)
    assert w.as_dict() == {0: 1, 4: 7}
    assert is_divisible_code(SIMPLEX_3, 4)


def test_small_weight_examples():
    assert weight_distribution(GeneratorMatrix.from_array(2, [[1, 1]]))[2] == 1
    line = GeneratorMatrix.from_array(2, [[1, 0, 1], [0, 1, 1]])
    assert is_divisible_code(line, 2)
    assert not is_divisible_code(GeneratorMatrix.from_array(2, [[1, 0], [0, 1]]), 2)


def test_card17_matrix_weights():
    g = parse_matrix(CARD17_LINE123_MATRIX)
    w = weight_distribution(g)
    assert set(w.nonzero_weights()) == {4, 8, 12}
    # w = n - 𝓜(H)
    a = spectrum(to_multiset(g))
    assert (w[12], w[8], w[4]) == (a[5], a[9], a[13]) == (9, 19, 3)


def test_hyperplane_scan_matches_enumeration():
    rng = np.random.default_rng(31)
    for _ in range(10):
        g = random_code(rng, 3, 4, 9)
        assert weight_distribution(g, cap=50) == weight_distribution(g)


def test_enumeration_cap():
    with pytest.raises(BudgetExceededError):
        weight_distribution(random_code(np.random.default_rng(2), 2, 6, 10), cap=8)


@pytest.mark.parametrize("q,delta", [(2, 2), (2, 4), (3, 3), (4, 2)])
def test_code_and_geometric_divisibility_agree(q, delta):
    rng = np.random.default_rng(40 + q + delta)
    f = get_field(q)
    for _ in range(125):
        k = int(rng.integers(2, 5))
        g = random_code(rng, q, k, int(rng.integers(k, 11)))
        m = to_multiset(g)
        arr = g.array()
        mults = hyperplane_multiplicities(m)
        for h, mult in zip(hyperplanes(k, q), mults):
            word = linalg.matmul(h[None, :], arr, f)[0]
            assert int(np.count_nonzero(word)) == g.effective_length - int(mult)
        assert is_divisible_code(g, delta) == is_divisible(m, delta)
    plane = from_multiset(PointMultiset.chi(Subspace.ambient(3, q), delta))
    assert is_divisible_code(plane, delta)


def test_we_product():
    b = WeightEnumerator.from_dict({0: 1, 8: 7})
    assert we_product(b, b).as_dict() == {0: 1, 8: 14, 16: 49}
    one = WeightEnumerator.from_dict({0: 1})
    assert we_product(b, one) == b
    w = we_product(WeightEnumerator.from_dict({0: 1, 8: 15}), INDECOMPOSABLE_A8_BLOCKS[8])
    assert w[8] == 30


def test_a8_reachable_set():
    assert a8_reachable_set() == {0, 1, 2, 3, 4, 6, 7, 8, 9, 10, 11, 13, 14, 15, 16, 17, 18, 21, 22, 25, 29, 30,
                                  31, 33, 37, 45}
    assert 0 in a8_reachable_set(max_blocks=0)
    assert 15 in a8_reachable_set(max_blocks=1)
    assert {5, 19, 23} <= a8_reachable_set(max_blocks=3)


# ---------------------------------------------------------
# 规范形
# ---------------------------------------------------------
def assert_invariant_under_transforms(q, k, n, bases, transforms, seed):
    rng = np.random.default_rng(seed)
    for _ in range(bases):
        g = random_code(rng, q, k, n)
        key = canonical_form(g).key
        for _ in range(transforms):
            h = random_semilinear(g, rng)
            assert canonical_form(h).key == key


@pytest.mark.parametrize("q,k,n", [(2, 3, 7), (2, 4, 10), (3, 3, 8), (4, 3, 7)])
def test_canonical_form_invariance(q, k, n):
    assert_invariant_under_transforms(q, k, n, bases=3, transforms=40, seed=500 + 10 * q + k)
    rng = np.random.default_rng(7 * q + n)
    g = random_code(rng, q, k, n)
    assert equivalent(g, random_semilinear(g, rng))


@pytest.mark.slow
@pytest.mark.parametrize("q,k,n", [(2, 3, 7), (2, 4, 10), (3, 3, 8), (3, 4, 9), (4, 3, 7), (4, 3, 9)])
def test_canonical_form_invariance_many_transforms(q, k, n):
    assert_invariant_under_transforms(q, k, n, bases=5, transforms=500, seed=900 + 10 * q + k + n)


def test_canonical_form_separates_even_codes():
    a = GeneratorMatrix.from_array(2, [[1, 1, 0, 0, 1, 1], [0, 0, 1, 1, 1, 1]])
    b = GeneratorMatrix.from_array(2, [[1, 1, 1, 1, 0, 0], [0, 0, 0, 0, 1, 1]])
    assert is_divisible_code(a, 2) and is_divisible_code(b, 2)
    assert canonical_form(a).key != canonical_form(b).key
    assert not equivalent(a, b)


def test_canonical_witness_reproduces_matrix():
    rng = np.random.default_rng(77)
    for q in (2, 3, 4):
        g = random_code(rng, q, 3, 8)
        cf = canonical_form(g)
        assert cf.apply_witness(g) == cf.matrix


def test_automorphism_group_order():
    assert automorphism_group_order(SIMPLEX_3) == 168
    assert canonize(to_multiset(SIMPLEX_3)).same_orbit(0, 6)
    simplex_6 = GeneratorMatrix.from_array(2, projective_points(6, 2).T)
    assert automorphism_group_order(simplex_6) == 20158709760
    assert canonical_form(simplex_6).aut_order == 20158709760


@pytest.mark.slow
def test_automorphism_group_order_beyond_float_precision():
    simplex_8 = GeneratorMatrix.from_array(2, projective_points(8, 2).T)
    assert automorphism_group_order(simplex_8) == 5348063769211699200


def test_permutation_group_order_is_exact():
    n = 25
    transposition = (1, 0) + tuple(range(2, n))
    cycle = tuple((i + 1) % n for i in range(n))
    assert permutation_group_order([transposition, cycle]) == math.factorial(n)
    assert permutation_group_order([cycle]) == n
    assert permutation_group_order([tuple(range(4))]) == 1
    assert permutation_group_order([]) == 1


def test_canonical_key_of_multiset():
    m = PointMultiset.chi(Subspace.ambient(2, 3))
    assert canonical_key(m) == canonical_key(to_multiset(random_semilinear(from_multiset(m),
                                                                           np.random.default_rng(3))))
