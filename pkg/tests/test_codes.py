import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from codequiv import linalg
from codequiv.codes import (
    Conic,
    LinearCode,
    all_columns_weight_one,
    column_weights,
    columns_in_general_position,
    conic_space,
    distance_distribution,
    hamming_distance,
    is_mds,
    is_mds_code,
    minimum_distance,
    same_word_set,
    standard_form,
    weight_distribution,
)
from codequiv.field import field_make
from codequiv.planted import random_code


def mds_weight_distribution(n, k, q):
    # closed form for MDS codes, used as an oracle independent of enumeration
    d = n - k + 1
    dist = [1] + [0] * n
    for w in range(d, n + 1):
        dist[w] = comb(n, w) * sum((-1) ** j * comb(w, j) * (q ** (w - d + 1 - j) - 1) for j in range(w - d + 1))
    return tuple(dist)


def pairwise_min_distance(words):
    return min(hamming_distance(u, v) for u, v in itertools.combinations(words.tolist(), 2))


def test_code_rejects_bad_generators(f4):
    with pytest.raises(ValueError):
        LinearCode(f4, [[1, 1], [1, 1]])
    with pytest.raises(ValueError):
        LinearCode(f4, [[1, 4]])
    with pytest.raises(ValueError):
        LinearCode(f4, [[1, 0], [0, 1], [1, 1]])


def test_standard_form_identity_when_already_systematic(c1):
    form, cols = standard_form(c1)
    assert cols == list(range(8))
    assert np.array_equal(form.generator, c1.generator)


def test_standard_form_preserves_code(f4, rng):
    for _ in range(20):
        code = random_code(f4, 2, 4, rng)
        form, cols = standard_form(code)
        assert np.array_equal(form.generator[:, :2], np.eye(2, dtype=int))
        moved = code.generator[:, cols]
        assert same_word_set(LinearCode(f4, moved).words(), form.words(), 4)


def test_standard_form_pivot_order(f4):
    code = LinearCode(f4, [[0, 1, 0, 1], [0, 0, 1, 1]])
    form, cols = standard_form(code)
    assert cols == [1, 2, 0, 3]
    assert form.generator.tolist() == [[1, 0, 0, 1], [0, 1, 0, 1]]


def test_hamming_distance(f9):
    assert hamming_distance([0, 0, 0], [0, 0, 0]) == 0
    assert hamming_distance([0, 0, 0], [1, f9.e, 0]) == 2
    with pytest.raises(ValueError):
        hamming_distance([0], [0, 1])


def test_minimum_distance_example_codes(c1, c2):
    assert minimum_distance(c1) == 6
    assert minimum_distance(c2) == 6
    assert c1.size == 729


def test_mds_weight_distribution_matches_closed_form(c1, c2):
    expect = mds_weight_distribution(8, 3, 9)
    assert weight_distribution(c1) == expect
    assert weight_distribution(c2) == expect


def test_full_space_is_mds(f4):
    full = LinearCode(f4, np.eye(3, dtype=int))
    assert minimum_distance(full) == 1
    assert is_mds_code(full)


def test_non_mds_example(f4):
    code = LinearCode(f4, [[1, 0, 1, 1], [0, 1, 0, 1]])
    assert minimum_distance(code) == 2
    assert not is_mds(16, 4, 2, 4)
    assert not is_mds_code(code)


def test_is_mds_arithmetic():
    assert is_mds(729, 8, 6, 9)
    assert not is_mds(729, 8, 5, 9)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_minimum_distance_equals_pairwise_oracle(seed):
    f4 = field_make(2, 2)
    code = random_code(f4, 2, 4, np.random.default_rng(seed))
    words = code.words()
    assert minimum_distance(code) == pairwise_min_distance(words)
    for u in words[:5]:
        for v in words:
            assert hamming_distance(u, v) == np.count_nonzero(f4.sub(u, v))


def test_distance_distribution_counts_pairs(f4, rng):
    code = random_code(f4, 2, 5, rng)
    words = code.words()
    dd = distance_distribution(words)
    assert sum(dd) == len(words) ** 2
    assert dd[0] == len(words)
    # linear code: every word sees the same weight distribution
    assert tuple(x // len(words) for x in dd) == weight_distribution(code)


def test_mds_columns_in_general_position(c1, c2, f4):
    assert columns_in_general_position(c1)
    assert columns_in_general_position(c2)
    assert not columns_in_general_position(LinearCode(f4, [[1, 0, 1, 1], [0, 1, 0, 1]]))


def test_column_weights(c1, f4):
    assert column_weights(np.eye(3, dtype=int)) == [1, 1, 1]
    assert column_weights(c1.generator)[3] == 3
    rep = np.array([[1, 1, 0, 0], [0, 0, 1, 1]])
    assert all_columns_weight_one(rep, rep)
    assert not all_columns_weight_one(rep, c1.generator)


def test_conic_space_example_codes(c1, c2, f9):
    target = Conic(f9, (0, 0, 0, 1, f9.power(f9.e, 3), 1)).normalized()
    space = conic_space(f9, c2.generator.T)
    assert space == [target]
    assert conic_space(f9, c1.generator.T) == []


def test_conic_space_properties(f9, rng):
    assert len(conic_space(f9, [])) == 6
    pts = rng.integers(0, 9, size=(4, 3))
    space = conic_space(f9, pts)
    assert len(space) >= 2
    for conic in space:
        assert all(conic(pt) == 0 for pt in pts)
    # basis elements are independent
    assert linalg.rank(f9, np.array([c.coeffs for c in space])) == len(space)


def test_words_budget(c1):
    with pytest.raises(ValueError):
        c1.words(budget=100)
