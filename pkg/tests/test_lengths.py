import pytest

from codes.matrix import to_multiset
from lengths.constructions import (ORBIT_REPS_50, atom, atom_sizes, decompose, distinct_points,
                                   glued_minus_affine, singer_orbits)
from lengths.expansion import (ExpansionError, base_sequence, infeasible_lengths, is_length_feasible,
                               power_exponent, sqr_adic_expansion, ward_reduce)
from lengths.gamma import (INFINITY, WITNESS_EMPTY, WITNESS_NONE, WITNESS_OK, WITNESS_UNCONSTRUCTED,
                           RequiresCensusError, binary_gamma, construct_witness, gamma_lookup, gamma_table)
from pg.multiset import gamma1, is_divisible, spectrum

INF = INFINITY

EXPECTED_4 = {**{n: INF for n in (1, 2, 3, 5, 9)}, 4: 4, 11: 4, **{n: 2 for n in (6, 10, 12, 13)}}
EXPECTED_8 = {
    **{n: INF for n in (1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 13, 17, 18, 19, 21, 25, 33)},
    **{n: 8 for n in (8, 22, 23, 37)},
    **{n: 4 for n in (12, 20, 24, 26, 27, 35, 39, 41)},
    **{n: 2 for n in (14, 28, 29, 34, 36, 38, 40, 42, 43, 44, *range(52, 60))},
}


# ---------------------------------------------------------
# q^r-进展开
# ---------------------------------------------------------
def test_base_sequence():
    assert base_sequence(2, 2).s == (7, 6, 4)
    assert base_sequence(3, 1).s == (4, 3)
    with pytest.raises(ValueError):
        base_sequence(2, -1)


def test_expansion_of_nine():
    e = sqr_adic_expansion(9, 2, 2)
    assert e.coefficients == (1, 1, -1)
    assert not e.feasible
    assert e.value() == 9
    assert e.to_json()["digits"] == [1, 1, -1]


def test_expansion_of_feasible_length():
    e = sqr_adic_expansion(14, 2, 2)
    assert e.feasible and e.value() == 14
    assert sqr_adic_expansion(0, 2, 3).coefficients == (0, 0, 0, 0)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_expansion_reproduces_n(q):
    for r in range(5):
        for n in range(-40, 400):
            e = sqr_adic_expansion(n, q, r)
            assert e.value() == n
            assert all(0 <= d < q for d in e.digits)


def test_expansion_mismatch_raises(monkeypatch):
    monkeypatch.setattr("lengths.expansion.gauss", lambda k, q: q + 2)
    with pytest.raises(ExpansionError):
        sqr_adic_expansion(1, 2, 1)


@pytest.mark.parametrize("r,expected", [
    (1, [1]),
    (2, [1, 2, 3, 5, 9]),
    (3, [1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 13, 17, 18, 19, 21, 25, 33]),
])
def test_binary_infeasible_lengths(r, expected):
    assert infeasible_lengths(2, r, 60) == expected


def test_ternary_infeasible_lengths():
    # 3-可整除：只有 1, 2, 5 不可行
    assert infeasible_lengths(3, 1, 30) == [1, 2, 5]
    assert is_length_feasible(8, 3, 1)


def test_ward_reduce_and_exponent():
    assert ward_reduce(2, 12) == (4, 3)
    assert ward_reduce(3, 6) == (3, 2)
    assert ward_reduce(4, 8) == (8, 1)
    assert power_exponent(4, 8) == (1, 2)
    assert power_exponent(2, 8) == (3, 1)
    with pytest.raises(ValueError):
        ward_reduce(2, 0)


# ---------------------------------------------------------
# Γ_2 表
# ---------------------------------------------------------
def test_gamma_even():
    table = gamma_table(2, 60)
    assert table[1] == INF and table[2] == 2
    assert all(v == 1 for n, v in table.items() if n > 2)


@pytest.mark.parametrize("delta,expected", [(4, EXPECTED_4), (8, EXPECTED_8)])
def test_gamma_tables(delta, expected):
    for n, value in gamma_table(delta, 60).items():
        assert value == expected.get(n, 1), n


def test_gamma_trivial_and_unsupported():
    assert binary_gamma(1, 5) == 1
    with pytest.raises(ValueError):
        binary_gamma(2, 0)
    with pytest.raises(RequiresCensusError):
        binary_gamma(16, 40)


# ---------------------------------------------------------
# 查表与见证
# ---------------------------------------------------------
def check_witness(result, n):
    m = to_multiset(result.witness)
    assert m.cardinality == n
    assert gamma1(m) == result.value
    assert is_divisible(m, result.delta)


@pytest.mark.parametrize("delta", [2, 4])
def test_witnesses_small_delta(delta):
    for n in range(1, 61):
        result = gamma_lookup(2, delta, n)
        if result.is_infinite:
            assert result.witness is None and result.witness_status == WITNESS_NONE
            continue
        assert result.witness_status == WITNESS_OK
        check_witness(result, n)


def test_witnesses_triply_even_small():
    for n in range(1, 41):
        result = gamma_lookup(2, 8, n)
        if not result.is_infinite:
            check_witness(result, n)


@pytest.mark.slow
def test_witnesses_triply_even_large():
    for n in range(41, 61):
        check_witness(gamma_lookup(2, 8, n), n)


@pytest.mark.parametrize("n", [49, 50])
def test_witnesses_between_atoms(n):
    result = gamma_lookup(2, 8, n)
    assert result.value == 1 and result.witness_status == WITNESS_OK
    check_witness(result, n)


def test_unconstructed_witness_without_search(monkeypatch):
    monkeypatch.setattr("lengths.gamma.decompose", lambda delta, n, gamma: [])
    result = gamma_lookup(2, 8, 49)
    assert result.value == 1
    assert result.witness is None
    assert result.witness_status == WITNESS_UNCONSTRUCTED


def test_fallback_search_is_called(monkeypatch):
    monkeypatch.setattr("lengths.gamma.decompose", lambda delta, n, gamma: [])
    calls = []

    def search(q, delta, n, g):
        calls.append((q, delta, n, g))
        return None

    result = gamma_lookup(2, 8, 50, search)
    assert calls == [(2, 8, 50, 1)]
    assert result.value == 1 and result.witness is None


def test_infeasible_certificate():
    result = gamma_lookup(2, 4, 9)
    assert result.is_infinite
    assert result.source == "expansion"
    assert result.certificate.coefficients == (1, 1, -1)
    assert result.to_json()["value"] == "inf"


def test_ward_reduction():
    # Δ = 12 = 4·3
    assert gamma_lookup(2, 12, 10).is_infinite
    result = gamma_lookup(2, 12, 33)
    assert result.value == 12 and result.source == "ward"
    check_witness(result, 33)
    result = gamma_lookup(3, 2, 6)
    assert result.value == 2
    check_witness(result, 6)
    assert gamma_lookup(3, 2, 5).is_infinite


def test_trivial_lengths():
    result = gamma_lookup(2, 4, 0)
    assert result.value == 0 and result.witness_status == WITNESS_EMPTY
    assert gamma_lookup(2, 4, -3).is_infinite


def test_lookup_defers_to_census():
    with pytest.raises(RequiresCensusError):
        gamma_lookup(3, 3, 7)
    with pytest.raises(RequiresCensusError):
        gamma_lookup(2, 16, 40)
    with pytest.raises(RequiresCensusError):
        gamma_lookup(4, 2, 12)


# ---------------------------------------------------------
# 构造
# ---------------------------------------------------------
def test_distinct_points():
    m = distinct_points(5, 3)
    assert m.k == 3 and m.cardinality == 5
    assert distinct_points(4, 3).k == 2
    assert gamma1(m) == 1
    assert distinct_points(7).k == 3


@pytest.mark.parametrize("delta", [4, 8])
def test_atoms_are_projective_and_divisible(delta):
    for size in atom_sizes(delta, 35):
        m = atom(delta, size)
        assert m.cardinality == size
        assert gamma1(m) == 1
        assert is_divisible(m, delta)


@pytest.mark.parametrize("builder,size,expected", [
    (glued_minus_affine, 49, {41: 2, 33: 5, 25: 220, 17: 28}),
    (lambda: singer_orbits(ORBIT_REPS_50), 50, {34: 5, 26: 210, 18: 40}),
])
def test_triply_even_atoms_49_50(builder, size, expected):
    m = builder()
    assert m.k == 8 and m.cardinality == size
    assert gamma1(m) == 1
    assert is_divisible(m, 8)
    assert spectrum(m).as_dict() == expected


def test_singer_orbits_rejects_bad_order():
    with pytest.raises(ValueError):
        singer_orbits([1], order=7)
    assert singer_orbits([1], order=3).cardinality == 3


def test_missing_atom():
    with pytest.raises(KeyError):
        atom(8, 17)


def test_decompose():
    parts = decompose(4, 14, 2)
    assert sum(mult * size for mult, _, size in parts) == 14
    assert decompose(4, 9, 4) == []
    assert decompose(8, 22, 8) and not decompose(8, 22, 4)


def test_construct_witness_rejects_impossible():
    assert construct_witness(4, 9, 4) is None
    m = construct_witness(8, 51, 1)
    assert m.cardinality == 51 and is_divisible(m, 8)
