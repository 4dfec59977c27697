import numpy as np
import pytest

from gf import linalg
from gf.field import (FieldError, add, frobenius, from_vector, get_field, inv, mul, neg, parse_symbol, power,
                      sub, symbol, to_vector)

FIELDS = [2, 3, 4, 5, 7, 8, 9, 16]


# ---------------------------------------------------------
# 域公理
# ---------------------------------------------------------
@pytest.mark.parametrize("q", FIELDS)
def test_inverses_and_identities(q):
    f = get_field(q)
    for a in f.elements:
        assert add(a, 0, f) == a
        assert mul(a, 1, f) == a
        assert mul(a, 0, f) == 0
        assert add(a, neg(a, f), f) == 0
        assert sub(a, a, f) == 0
    for a in f.nonzero:
        assert mul(a, inv(a, f), f) == 1


@pytest.mark.parametrize("q", [4, 8, 9])
def test_distributivity(q):
    f = get_field(q)
    for a in f.elements:
        for b in f.elements:
            for c in f.elements:
                assert mul(a, add(b, c, f), f) == add(mul(a, b, f), mul(a, c, f), f)


@pytest.mark.parametrize("q", FIELDS)
def test_multiplicative_group_order(q):
    f = get_field(q)
    for a in f.nonzero:
        assert power(a, q - 1, f) == 1
    assert power(0, 0, f) == 1


def test_f4_labelling():
    f = get_field(4)
    a, b = 2, 3
    # a^2 = a + 1 = b
    assert mul(a, a, f) == b
    assert add(a, 1, f) == b
    assert symbol(a, f) == "a" and symbol(b, f) == "b"
    assert parse_symbol("B", f) == b


def test_frobenius_is_automorphism():
    f = get_field(8)
    for a in f.elements:
        for b in f.elements:
            assert frobenius(mul(a, b, f), 1, f) == mul(frobenius(a, 1, f), frobenius(b, 1, f), f)
            assert frobenius(add(a, b, f), 1, f) == add(frobenius(a, 1, f), frobenius(b, 1, f), f)


@pytest.mark.parametrize("q", [4, 9, 16])
def test_vector_coordinates_round_trip(q):
    f = get_field(q)
    for a in f.elements:
        assert from_vector(to_vector(a, f), f) == a


# ---------------------------------------------------------
# 错误处理
# ---------------------------------------------------------
@pytest.mark.parametrize("q", [1, 6, 12, 32])
def test_unsupported_orders(q):
    with pytest.raises(FieldError):
        get_field(q)


def test_zero_has_no_inverse():
    with pytest.raises(FieldError):
        inv(0, get_field(5))


def test_foreign_element_rejected():
    with pytest.raises(FieldError):
        add(3, 1, get_field(3))


# ---------------------------------------------------------
# 线性代数
# ---------------------------------------------------------
@pytest.mark.parametrize("q", [2, 3, 4])
def test_inverse_matrix(q):
    f = get_field(q)
    rng = np.random.default_rng(7)
    for _ in range(20):
        m = linalg.random_invertible(4, f, rng)
        assert np.array_equal(linalg.matmul(m, linalg.inverse(m, f), f), np.eye(4, dtype=np.int64))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_rank_nullity(q):
    f = get_field(q)
    rng = np.random.default_rng(11)
    for _ in range(20):
        m = rng.integers(0, q, size=(3, 6))
        ker = linalg.kernel(m, f)
        assert linalg.rank(m, f) + ker.shape[0] == 6
        if ker.shape[0]:
            assert not linalg.matmul(m, ker.T, f).any()


def test_normalize_first_nonzero_is_one():
    f = get_field(5)
    v = linalg.normalize(np.array([0, 3, 1]), f)
    assert v[1] == 1
    with pytest.raises(FieldError):
        linalg.normalize(np.zeros(3, dtype=np.int64), f)


def test_coordinates_outside_span():
    f = get_field(2)
    basis, pivots = linalg.rref(np.array([[1, 1, 0]]), f)
    assert linalg.coordinates(basis, pivots, np.array([1, 1, 0]), f).tolist() == [[1]]
    with pytest.raises(FieldError):
        linalg.coordinates(basis, pivots, np.array([0, 0, 1]), f)
