import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from codequiv.codes import LinearCode
from codequiv.equivalence.extract import (
    components,
    extract_semilinear,
    normalize,
    normalize_to_additive,
    weight_one_profile,
)
from codequiv.equivalence.search import search_semilinear
from codequiv.equivalence.witnesses import GeneralWitness, SemiLinearWitness, is_equivalence
from codequiv.errors import ComponentConflict, ExtractionError, WeightOneHypothesis
from codequiv.field import field_make
from codequiv.planted import (
    image_code,
    planted_general,
    random_code,
    random_mds_code,
    random_semilinear,
    repetition_code,
    row_scramble,
    then,
    with_translation,
)


def test_normalize_additive_witness_is_unchanged(f4, rng):
    a = random_mds_code(f4, 2, 4, rng)
    w = random_semilinear(f4, 4, rng)
    b = image_code(w, a)
    out = normalize_to_additive(w.as_general(), a, b)
    assert np.array_equal(out.tables(), w.tables())


def test_normalize_strips_translation_exactly(f4, rng):
    for _ in range(10):
        a = random_mds_code(f4, 2, 4, rng)
        w = random_semilinear(f4, 4, rng)
        b, g = planted_general(w, a, rng)
        out = normalize_to_additive(g, a, b)
        assert out.alpha == w.alpha
        assert np.array_equal(out.tables(), w.tables())
        assert is_equivalence(out, a, b)


def test_normalize_identity_holds(f9, c1, rng):
    w = random_semilinear(f9, 8, rng)
    b, g = planted_general(w, c1, rng)
    norm = normalize(g, c1, b)
    f = f9
    k = len(norm.pivots)
    msgs = rng.integers(0, 9, size=(50, k))
    for r in range(8):
        if r in norm.pivots:
            continue
        tau = norm.taus[r]
        for a in msgs:
            lhs = 0
            inner = 0
            for j in range(k):
                lhs = f.add(lhs, tau(f.mul(norm.a_blocks[j][r], int(a[j]))))
                inner = f.add(inner, f.mul(norm.a_blocks[j][r], int(a[j])))
            assert lhs == tau(inner)


def test_weight_one_hypothesis_reported(f4, rng):
    a = repetition_code(f4, [2, 2], rng)
    b = repetition_code(f4, [2, 2], rng)
    w = search_semilinear(a, b)
    with pytest.raises(WeightOneHypothesis):
        normalize_to_additive(w, a, b)


def test_extract_recovers_frobenius_power(f9, c1, rng):
    planted = random_semilinear(f9, 8, rng, t=1)
    b, g = planted_general(planted, c1, rng)
    out = extract_semilinear(g, c1, b)
    assert out.t == 1
    assert out.alpha == planted.alpha
    # scalars agree up to one global factor (which fixes every linear code)
    ratios = {f9.div(x, y) for x, y in zip(out.lambdas, planted.lambdas)}
    assert len(ratios) == 1
    assert is_equivalence(out, c1, b)
    assert out.info_set == (0, 1, 2)


def test_extract_linear_plus_translation(f4, rng):
    for _ in range(10):
        a = random_code(f4, 2, 5, rng)
        planted = random_semilinear(f4, 5, rng, t=0)
        b, g = planted_general(planted, a, rng)
        out = extract_semilinear(g, a, b)
        assert out.t == 0 and is_equivalence(out, a, b)


def test_weight_one_branch_with_arbitrary_row_maps(f4, rng):
    # words (x, x, y, y); the same arbitrary permutation on both copies of a row
    a = LinearCode(f4, [[1, 1, 0, 0], [0, 0, 1, 1]])
    theta1 = rng.permutation(4)
    theta2 = rng.permutation(4)
    w = GeneralWitness(f4, (0, 1, 2, 3), np.array([theta1, theta1, theta2, theta2]))
    assert is_equivalence(w, a, a)
    out = extract_semilinear(w, a, a)
    assert out.t == 0 and is_equivalence(out, a, a)
    prof = weight_one_profile(normalize(w, a, a))
    assert prof.multiplicities == (2, 2)
    assert prof.f == (0, 0, 1, 1)


def test_weight_one_scaled_copies(f9, rng):
    for _ in range(10):
        a = repetition_code(f9, [3, 1, 2], rng)
        b = repetition_code(f9, [2, 3, 1], rng)
        w = then(search_semilinear(a, b), row_scramble(b, rng))
        assert is_equivalence(w, a, b)
        out = extract_semilinear(w, a, b)
        assert out.t == 0 and is_equivalence(out, a, b)


def test_components_of_direct_sum(f4):
    g = np.array([[1, 0, 0, 1, 1, 0], [0, 1, 0, 1, 0, 0], [0, 0, 1, 0, 1, 0]])
    code = LinearCode(f4, g)
    blocks, piv = code.block_form()
    comps = components(blocks, piv, code.scalars)
    kinds = sorted(c.kind for c in comps)
    assert kinds == ["block", "zero"]
    block = next(c for c in comps if c.kind == "block")
    assert block.rows == (0, 1, 2) and block.coords == (0, 1, 2, 3, 4)


def chiral_pair():
    """Direct sums where the two blocks need different Frobenius powers.

    A1 has four distinct projective points with multiplicities 1, 2, 3, 4;
    its only symmetries under GL(2, 4) are even permutations of PG(1, 4), so A1
    is not linearly equivalent to its conjugate A1^(2).
    """
    f = field_make(2, 2)
    pts = [(1, 0), (0, 1), (1, 1), (1, 2)]
    cols = [pt for m, pt in zip((1, 2, 3, 4), pts) for _ in range(m)]
    a1 = LinearCode(f, np.array(cols).T)
    a1c = a1.frobenius(1)
    z = np.zeros((2, 10), dtype=np.int64)
    a = LinearCode(f, np.block([[a1.generator, z], [z, a1c.generator]]))
    b = LinearCode(f, np.block([[a1c.generator, z], [z, a1c.generator]]))
    frob = f.frobenius(np.arange(4), 1)
    w = GeneralWitness(f, tuple(range(20)), np.array([frob] * 10 + [np.arange(4)] * 10))
    return a1, a, b, w


def test_chiral_block_is_not_self_conjugate():
    a1, *_ = chiral_pair()
    assert search_semilinear(a1, a1.frobenius(1), exponents=[0]) is None


def test_direct_sum_needs_two_frobenius_powers():
    _, a, b, w = chiral_pair()
    assert is_equivalence(w, a, b)
    with pytest.raises(ComponentConflict) as exc:
        extract_semilinear(w, a, b)
    assert sorted(map(sorted, exc.value.exponents)) == [[0], [1]]
    # and no semi-linear map exists at all
    assert search_semilinear(a, b) is None
    # the additive normalization still goes through
    assert is_equivalence(normalize_to_additive(w, a, b), a, b)


def test_invalid_witness_rejected(f4, rng):
    a = random_mds_code(f4, 2, 4, rng)
    w = random_semilinear(f4, 4, rng)
    b = image_code(w, a)
    sig = w.tables().copy()
    sig[1, [1, 2]] = sig[1, [2, 1]]
    with pytest.raises(ExtractionError):
        extract_semilinear(GeneralWitness(f4, w.alpha, sig), a, b)
    with pytest.raises(ExtractionError):
        extract_semilinear(w, a, LinearCode(f4, [[1, 0, 1, 1], [0, 1, 0, 1]]))


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([(2, 2), (3, 2), (2, 3)]),
    st.integers(2, 3),
    st.integers(0, 4),
    st.booleans(),
    st.integers(0, 2**32 - 1),
)
def test_extract_roundtrip_property(ph, k, extra, translate, seed):
    f = field_make(*ph)
    rng = np.random.default_rng(seed)
    n = k + 2 + extra
    a = random_code(f, k, n, rng)
    planted = random_semilinear(f, n, rng)
    b, g = planted_general(planted, a, rng, translate=translate)
    out = extract_semilinear(g, a, b)
    assert isinstance(out, SemiLinearWitness)
    assert is_equivalence(out, a, b)


def test_with_translation_composes(f4, rng):
    a = random_mds_code(f4, 2, 4, rng)
    w = random_semilinear(f4, 4, rng)
    b = image_code(w, a)
    v = b.words()[3]
    g = with_translation(w, v)
    assert np.array_equal(g.tables()[:, 0], v)
    assert is_equivalence(g, a, b)
