import numpy as np
import pytest

from codequiv.codes import LinearCode
from codequiv.equivalence.search import (
    search_block_monomial,
    search_general,
    search_linear,
    search_semilinear,
)
from codequiv.equivalence.witnesses import (
    AdditiveWitness,
    GeneralWitness,
    SemiLinearWitness,
    apply_witness,
    is_equivalence,
    preserves_distance,
    translation_component,
)
from codequiv.additive import AdditiveCode
from codequiv.errors import BudgetExceeded, ExtractionError
from codequiv.planted import (
    image_code,
    planted_general,
    random_additive_witness,
    random_code,
    random_mds_code,
    random_semilinear,
    repetition_code,
)


def test_identity_witness(c1, f9):
    w = GeneralWitness.identity(f9, 8)
    assert is_equivalence(w, c1, c1)
    assert apply_witness(w, [1, 2, 3, 4, 5, 6, 7, 8]).tolist() == [1, 2, 3, 4, 5, 6, 7, 8]


def test_alpha_moves_coordinates(f4):
    w = SemiLinearWitness(f4, (2, 0, 1), (1, 1, 1))
    assert apply_witness(w, [1, 2, 3]).tolist() == [2, 3, 1]


def test_semilinear_t1_maps_to_cubed_code(c1, f9):
    w = SemiLinearWitness(f9, tuple(range(8)), (1,) * 8, t=1)
    cubed = LinearCode(f9, f9.power(c1.generator, 3))
    assert is_equivalence(w, c1, cubed)
    assert not np.array_equal(cubed.generator, c1.generator)


def test_witness_validation(f4):
    with pytest.raises(ValueError):
        GeneralWitness(f4, (0, 0), np.tile(np.arange(4), (2, 1)))
    with pytest.raises(ValueError):
        GeneralWitness(f4, (0, 1), np.array([[0, 0, 1, 2], [0, 1, 2, 3]]))
    with pytest.raises(ValueError):
        SemiLinearWitness(f4, (0, 1), (0, 1))
    with pytest.raises(ValueError):
        SemiLinearWitness(f4, (0, 1), (1, 1), t=2)


def test_valid_witnesses_preserve_distance(f9, c1, rng):
    w = random_semilinear(f9, 8, rng)
    b, g = planted_general(w, c1, rng)
    assert is_equivalence(g, c1, b)
    assert preserves_distance(g, c1)


def test_translation_component(f4, rng):
    a = random_mds_code(f4, 2, 4, rng)
    w = random_semilinear(f4, 4, rng)
    assert translation_component(w).v == (0, 0, 0, 0)
    b = image_code(w, a)
    c = b.words()[7]
    g = w.as_general().translated(c)
    assert is_equivalence(g, a, b)
    assert translation_component(g, b).v == tuple(c)
    # corrupt sigma_1 so that 0 goes somewhere no codeword pattern allows
    sig = g.sigmas.copy()
    zero_img = sig[0, 0]
    other = next(x for x in range(4) if x != zero_img)
    j = int(np.where(sig[0] == other)[0][0])
    sig[0, 0], sig[0, j] = other, zero_img
    bad = GeneralWitness(f4, g.alpha, sig)
    # d = 3, so a word one coordinate away from a codeword is not a codeword
    with pytest.raises(ExtractionError):
        translation_component(bad, b)


def test_search_general_identity_and_planted(f4, rng):
    a = random_mds_code(f4, 2, 5, rng)
    w = search_general(a, a)
    assert w is not None and is_equivalence(w, a, a)
    planted = random_semilinear(f4, 5, rng)
    b = image_code(planted, a)
    found = search_general(a, b)
    assert found is not None and is_equivalence(found, a, b)


def test_search_general_mds_vs_non_mds(f4):
    mds = LinearCode(f4, [[1, 0, 1, 1], [0, 1, 1, 2]])
    non = LinearCode(f4, [[1, 0, 1, 1], [0, 1, 0, 1]])
    assert search_general(mds, non) is None


def test_search_general_budget(c1, c2):
    with pytest.raises(BudgetExceeded):
        search_general(c1, c2, budget=50)


def test_search_semilinear_example_codes(c1, c2):
    assert search_semilinear(c1, c2) is None
    assert search_linear(c1, c2) is None


def test_search_semilinear_self(c1, f9):
    w = search_semilinear(c1, c1)
    assert w.t == 0
    assert w.alpha == tuple(range(8)) and w.lambdas == (1,) * 8


def test_search_semilinear_planted_cube(c1, f9, rng):
    planted = random_semilinear(f9, 8, rng, t=1)
    b = image_code(planted, c1)
    w = search_semilinear(c1, b)
    assert w is not None and is_equivalence(w, c1, b)
    only_t1 = search_semilinear(c1, b, exponents=[1])
    assert only_t1.t == 1 and is_equivalence(only_t1, c1, b)


def test_c1_is_linearly_equivalent_to_its_conjugate(c1):
    # explains why a planted t = 1 map on C1 is also found with t = 0
    assert search_linear(c1, c1.frobenius(1)) is not None


def test_search_semilinear_repetition_codes(f4, rng):
    for _ in range(10):
        a = repetition_code(f4, [3, 2, 1], rng)
        b = repetition_code(f4, [1, 3, 2], rng)
        w = search_semilinear(a, b)
        assert w is not None and is_equivalence(w, a, b)
        c = repetition_code(f4, [2, 2, 2], rng)
        assert search_semilinear(a, c) is None


def test_search_semilinear_budget(c1, c2):
    with pytest.raises(BudgetExceeded):
        search_semilinear(c1, c2, budget=10)


def test_cross_searcher_sample(f4, rng):
    for _ in range(40):
        a = random_code(f4, 2, 4, rng)
        b = random_code(f4, 2, 4, rng)
        assert (search_general(a, b) is None) == (search_semilinear(a, b) is None)


def test_search_block_monomial_planted(f4, rng):
    for _ in range(10):
        a = AdditiveCode.from_linear(random_mds_code(f4, 2, 4, rng))
        w = random_additive_witness(f4, 4, rng)
        b = image_code(w, a)
        found = search_block_monomial(a, b)
        assert isinstance(found, AdditiveWitness) and is_equivalence(found, a, b)


def test_additive_search_covers_semilinear(f4, rng):
    for _ in range(15):
        a = random_code(f4, 2, 4, rng)
        b = image_code(random_semilinear(f4, 4, rng), a)
        assert search_semilinear(a, b) is not None
        assert search_block_monomial(AdditiveCode.from_linear(a), AdditiveCode.from_linear(b)) is not None
