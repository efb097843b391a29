"""Linear codes over GF(q): generator matrices, enumeration and distances."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg
from .field import FieldSpec
from .scalars import FieldScalars

DEFAULT_BUDGET = 10**6


def message_space(q: int, k: int) -> np.ndarray:
    """All vectors of GF(q)^k, lexicographic in element encodings."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((q,) * k, dtype=np.int64)
    return grids.reshape(k, -1).T.copy()


def _keys(words: np.ndarray, q: int):
    n = words.shape[1]
    if n * np.log2(max(q, 2)) < 62:
        return words @ (q ** np.arange(n, dtype=np.int64))
    return None


def same_word_set(a: np.ndarray, b: np.ndarray, q: int) -> bool:
    """Whether two word arrays hold the same set of rows (each without repeats)."""
    if a.shape != b.shape:
        return False
    ka, kb = _keys(a, q), _keys(b, q)
    if ka is not None:
        return bool(np.array_equal(np.sort(ka), np.sort(kb)))
    return set(map(tuple, a.tolist())) == set(map(tuple, b.tolist()))


class WordSet:
    """Membership oracle for a fixed list of words."""

    def __init__(self, words: np.ndarray, q: int):
        self.q = q
        self._keys = _keys(words, q)
        if self._keys is not None:
            self._sorted = np.sort(self._keys)
        else:
            self._set = set(map(tuple, words.tolist()))

    def contains(self, words) -> np.ndarray:
        words = np.atleast_2d(np.asarray(words, dtype=np.int64))
        if self._keys is not None:
            k = _keys(words, self.q)
            idx = np.clip(np.searchsorted(self._sorted, k), 0, len(self._sorted) - 1)
            return self._sorted[idx] == k
        return np.array([tuple(w) in self._set for w in words.tolist()])

    def __contains__(self, word) -> bool:
        return bool(self.contains(word)[0])


class LinearCode:
    """The row space of a full-rank k x n generator matrix over GF(q)."""

    def __init__(self, field: FieldSpec, generator):
        g = np.array(generator, dtype=np.int64, ndmin=2)
        if g.ndim != 2 or g.shape[0] < 1 or g.shape[0] > g.shape[1]:
            raise ValueError(f"generator must be k x n with 1 <= k <= n, got shape {g.shape}")
        if g.min() < 0 or g.max() >= field.q:
            raise ValueError("generator entries are not element encodings")
        if linalg.rank(field, g) != g.shape[0]:
            raise ValueError("generator rows are linearly dependent")
        g.setflags(write=False)
        self.field = field
        self.generator = g

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def size(self) -> int:
        return self.field.q**self.k

    def __repr__(self) -> str:
        return f"LinearCode(q={self.field.q}, n={self.n}, k={self.k})"

    def encode(self, messages) -> np.ndarray:
        f = self.field
        m = np.atleast_2d(np.asarray(messages, dtype=np.int64))
        out = np.zeros((m.shape[0], self.n), dtype=np.int64)
        for j in range(self.k):
            out = f.add(out, f.mul(m[:, j, None], self.generator[None, j, :]))
        return np.asarray(out)

    def words(self, budget: int = DEFAULT_BUDGET) -> np.ndarray:
        if self.size > budget:
            raise ValueError(f"code has {self.size} words, over the enumeration budget {budget}")
        return self._words

    @cached_property
    def _words(self) -> np.ndarray:
        w = self.encode(message_space(self.field.q, self.k))
        w.setflags(write=False)
        return w

    @cached_property
    def word_set(self) -> WordSet:
        return WordSet(self.words(), self.field.q)

    def __contains__(self, word) -> bool:
        return word in self.word_set

    def permuted(self, alpha) -> "LinearCode":
        """Move coordinate ``i`` to position ``alpha[i]`` (0-based image list)."""
        g = np.empty_like(self.generator)
        g[:, list(alpha)] = self.generator
        return LinearCode(self.field, g)

    def frobenius(self, t: int) -> "LinearCode":
        return LinearCode(self.field, self.field.frobenius(self.generator, t))

    def systematic(self, pivots=None) -> tuple[np.ndarray, list[int]]:
        return systematic(self.field, self.generator, pivots)

    @cached_property
    def scalars(self) -> FieldScalars:
        return FieldScalars(self.field)

    def block_form(self, pivots=None) -> tuple[list[list[int]], list[int]]:
        """Systematic generator as a k x n grid of scalars, plus its pivots."""
        s, piv = self.systematic(pivots)
        return s.tolist(), piv


def systematic(f: FieldSpec, g, pivots=None) -> tuple[np.ndarray, list[int]]:
    """Row-reduce ``g`` to carry the identity on ``pivots`` without moving columns.

    With ``pivots=None`` the leftmost information set is used.  Raises
    ``ZeroDivisionError`` when the given columns are not an information set.
    """
    g = np.asarray(g, dtype=np.int64)
    if pivots is None:
        r_mat, piv = linalg.rref(f, g)
        return r_mat[: len(piv)], piv
    pivots = list(pivots)
    return linalg.matmul(f, linalg.inverse(f, g[:, pivots]), g), pivots


def standard_form(code: LinearCode) -> tuple[LinearCode, list[int]]:
    """Generator ``(I_k | M)`` and the column order used.

    Position ``c`` of the result holds column ``columns[c]`` of the input:
    pivot columns first (leftmost-first), then the rest in their original order.
    """
    s, piv = code.systematic()
    rest = [c for c in range(code.n) if c not in piv]
    columns = piv + rest
    return LinearCode(code.field, s[:, columns]), columns


def hamming_distance(u, v) -> int:
    u = [getattr(x, "value", x) for x in u]
    v = [getattr(x, "value", x) for x in v]
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum(a != b for a, b in zip(u, v))


def weights(words: np.ndarray) -> np.ndarray:
    return np.count_nonzero(words, axis=1)


def minimum_distance(code, budget: int = DEFAULT_BUDGET) -> int:
    """Minimum weight of a nonzero word; valid for any additively closed code."""
    w = weights(code.words(budget))
    nz = w[w > 0]
    if nz.size == 0:
        raise ValueError("code has no nonzero word")
    return int(nz.min())


def weight_distribution(code, budget: int = DEFAULT_BUDGET) -> tuple[int, ...]:
    w = weights(code.words(budget))
    return tuple(int(c) for c in np.bincount(w, minlength=code.n + 1))


def distance_distribution(words: np.ndarray) -> tuple[int, ...]:
    """Counts of ordered pairs at each distance; invariant under any equivalence."""
    n = words.shape[1]
    counts = np.zeros(n + 1, dtype=np.int64)
    for start in range(0, len(words), 256):
        block = words[start : start + 256]
        d = np.count_nonzero(block[:, None, :] != words[None, :, :], axis=2)
        counts += np.bincount(d.ravel(), minlength=n + 1)
    return tuple(int(c) for c in counts)


def is_mds(size: int, n: int, d: int, alphabet: int) -> bool:
    """Singleton bound met with equality: ``size == alphabet^(n - d + 1)``."""
    return size == alphabet ** (n - d + 1)


def is_mds_code(code, budget: int = DEFAULT_BUDGET) -> bool:
    return is_mds(code.size, code.n, minimum_distance(code, budget), code.field.q)


def columns_in_general_position(code: LinearCode) -> bool:
    """Every k columns independent; equivalent to MDS for linear codes."""
    g = code.generator
    return all(
        linalg.is_invertible(code.field, g[:, list(cols)])
        for cols in itertools.combinations(range(code.n), code.k)
    )


def column_weights(generator) -> list[int]:
    return [int(c) for c in np.count_nonzero(np.asarray(generator), axis=0)]


def all_columns_weight_one(ga, gb) -> bool:
    return all(w == 1 for w in column_weights(ga) + column_weights(gb))


# -- conics ---------------------------------------------------------------

MONOMIALS = ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))


@dataclass(frozen=True)
class Conic:
    """Quadratic form in x1, x2, x3; coefficient order as in ``MONOMIALS``."""

    field: FieldSpec
    coeffs: tuple[int, ...]

    def __call__(self, point) -> int:
        f = self.field
        acc = 0
        for c, (i, j) in zip(self.coeffs, MONOMIALS):
            acc = f.add(acc, f.mul(c, f.mul(int(point[i]), int(point[j]))))
        return int(acc)

    def normalized(self) -> "Conic":
        lead = next(c for c in self.coeffs if c)
        inv = self.field.inv(lead)
        return Conic(self.field, tuple(int(self.field.mul(inv, c)) for c in self.coeffs))

    def __str__(self) -> str:
        names = ["x1^2", "x2^2", "x3^2", "x1x2", "x1x3", "x2x3"]
        terms = []
        for c, name in zip(self.coeffs, names):
            if c:
                terms.append(name if c == 1 else f"{self.field.format(c)}{name}")
        return " + ".join(terms) or "0"


def conic_space(field: FieldSpec, points) -> list[Conic]:
    """Basis of the quadratic forms vanishing on every point of GF(q)^3."""
    pts = np.asarray(points, dtype=np.int64).reshape(-1, 3)
    rows = np.array(
        [[field.mul(int(pt[i]), int(pt[j])) for i, j in MONOMIALS] for pt in pts], dtype=np.int64
    ).reshape(-1, 6)
    basis = linalg.nullspace(field, rows)
    return [Conic(field, tuple(int(c) for c in row)).normalized() for row in basis]
