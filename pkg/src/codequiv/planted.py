"""Random codes and planted witnesses for roundtrip testing."""

from __future__ import annotations

import numpy as np

from . import linalg
from .additive import AdditiveCode
from .codes import LinearCode
from .equivalence.witnesses import AdditiveWitness, GeneralWitness, SemiLinearWitness
from .field import FieldSpec, LinearizedMap, field_make


def random_generator(field: FieldSpec, k: int, n: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        g = rng.integers(0, field.q, size=(k, n))
        if linalg.rank(field, g) == k:
            return g


def random_code(field: FieldSpec, k: int, n: int, rng: np.random.Generator) -> LinearCode:
    return LinearCode(field, random_generator(field, k, n, rng))


def random_mds_code(field: FieldSpec, k: int, n: int, rng: np.random.Generator, tries: int = 10_000) -> LinearCode:
    from .codes import is_mds_code

    for _ in range(tries):
        c = random_code(field, k, n, rng)
        if is_mds_code(c):
            return c
    raise RuntimeError(f"no [{n},{k}] MDS code over GF({field.q}) found in {tries} tries")


def repetition_code(field: FieldSpec, multiplicities, rng: np.random.Generator) -> LinearCode:
    """Row j repeats one symbol on its own block of m_j coordinates (random nonzero scalars)."""
    k, n = len(multiplicities), sum(multiplicities)
    g = np.zeros((k, n), dtype=np.int64)
    start = 0
    for j, m in enumerate(multiplicities):
        g[j, start : start + m] = rng.integers(1, field.q, size=m)
        start += m
    perm = rng.permutation(n)
    return LinearCode(field, g[:, perm])


def random_additive_mds(field: FieldSpec, k: int, n: int, rng: np.random.Generator, tries: int = 10_000) -> AdditiveCode:
    """Additive MDS code sampled from systematic forms with invertible h x h blocks."""
    from .additive import is_additive_mds

    h, p = field.h, field.p
    for _ in range(tries):
        mat = np.zeros((k * h, n * h), dtype=np.int64)
        mat[:, : k * h] = np.eye(k * h, dtype=np.int64)
        for j in range(k):
            for r in range(k, n):
                while True:
                    blk = rng.integers(0, p, size=(h, h))
                    if linalg.rank(field_make(p), blk) == h:
                        break
                mat[j * h : (j + 1) * h, r * h : (r + 1) * h] = blk
        code = AdditiveCode.from_expanded(field, mat[:, _column_shuffle(n, h, rng)])
        if is_additive_mds(code):
            return code
    raise RuntimeError(f"no additive MDS code of length {n} found in {tries} tries")


def _column_shuffle(n: int, h: int, rng: np.random.Generator) -> list[int]:
    return [c * h + i for c in rng.permutation(n) for i in range(h)]


def random_perm(n: int, rng: np.random.Generator) -> tuple[int, ...]:
    return tuple(int(x) for x in rng.permutation(n))


def random_semilinear(field: FieldSpec, n: int, rng: np.random.Generator, t: int | None = None) -> SemiLinearWitness:
    if t is None:
        t = int(rng.integers(0, field.h))
    lam = tuple(int(x) for x in rng.integers(1, field.q, size=n))
    return SemiLinearWitness(field, random_perm(n, rng), lam, t)


def random_invertible_linmap(field: FieldSpec, rng: np.random.Generator) -> LinearizedMap:
    while True:
        m = rng.integers(0, field.p, size=(field.h, field.h))
        lm = LinearizedMap.from_matrix(field, m)
        if lm.is_permutation():
            return lm


def random_additive_witness(field: FieldSpec, n: int, rng: np.random.Generator) -> AdditiveWitness:
    maps = tuple(random_invertible_linmap(field, rng) for _ in range(n))
    return AdditiveWitness(field, random_perm(n, rng), maps)


def image_code(w, code):
    """The code that ``w`` maps ``code`` onto (structured witnesses only)."""
    g = code.generator if isinstance(code, LinearCode) else code.gens
    img = w.apply(g)
    if isinstance(code, LinearCode):
        if not isinstance(w, SemiLinearWitness):
            raise TypeError("a linear code's image is only linear under a semi-linear witness")
        return LinearCode(code.field, img)
    return AdditiveCode(code.field, img)


def with_translation(w, v) -> GeneralWitness:
    """General witness: ``w`` followed by translation by ``v`` in the target."""
    return w.as_general().translated(v)


def random_codeword(code, rng: np.random.Generator) -> np.ndarray:
    words = code.words()
    return words[int(rng.integers(0, len(words)))]


def planted_general(w, code, rng: np.random.Generator, translate: bool = True):
    """(target code, general witness) obtained from ``w`` plus a random target codeword shift."""
    target = image_code(w, code)
    if not translate:
        return target, w.as_general()
    return target, with_translation(w, random_codeword(target, rng))


def row_scramble(code: LinearCode, rng: np.random.Generator) -> GeneralWitness:
    """Symmetry of a code whose columns all have weight one.

    Row j's value y is replaced by theta_j(y) for a random permutation theta_j
    of the field, so coordinate c with entry g_c maps z to g_c theta_j(z / g_c).
    The maps are generally not additive.
    """
    f = code.field
    g = code.generator
    if any(np.count_nonzero(g[:, c]) != 1 for c in range(code.n)):
        raise ValueError("every column must have weight one")
    thetas = [rng.permutation(f.q) for _ in range(code.k)]
    xs = np.arange(f.q)
    tabs = []
    for c in range(code.n):
        j = int(np.nonzero(g[:, c])[0][0])
        gc = int(g[j, c])
        tabs.append(f.mul(gc, thetas[j][f.div(xs, gc)]))
    return GeneralWitness(f, tuple(range(code.n)), np.array(tabs))


def then(w, v) -> GeneralWitness:
    """``w`` followed by ``v``, where ``v`` keeps every coordinate in place."""
    if v.alpha != tuple(range(v.n)):
        raise ValueError("second witness must not move coordinates")
    tw, tv = w.tables(), v.tables()
    return GeneralWitness(w.field, w.alpha, np.array([tv[c][tw[c]] for c in range(w.n)]))
