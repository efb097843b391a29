"""Additive codes: GF(p)-linear subsets of GF(q)^n, q = p^h.

An additive code is kept as K generators over GF(q) whose GF(p)-span is the
code.  Viewing each symbol as its coefficient row vector in GF(p)^h turns the
generators into a K x nh matrix over GF(p) (the expanded view).  Distances are
always counted in GF(q) symbols, never in expanded positions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg
from .codes import DEFAULT_BUDGET, LinearCode, WordSet, is_mds, message_space, minimum_distance
from .errors import ExtractionError
from .field import FieldSpec, field_make
from .scalars import MatrixScalars


class AdditiveCode:
    def __init__(self, field: FieldSpec, gens):
        g = np.array(gens, dtype=np.int64, ndmin=2)
        if g.ndim != 2 or g.shape[0] < 1:
            raise ValueError(f"generators must be a nonempty K x n matrix, got shape {g.shape}")
        if g.min() < 0 or g.max() >= field.q:
            raise ValueError("generator entries are not element encodings")
        g.setflags(write=False)
        self.field = field
        self.gens = g

    @classmethod
    def from_expanded(cls, field: FieldSpec, expanded) -> "AdditiveCode":
        """Regroup a K x nh matrix over GF(p), h columns per symbol."""
        e = np.asarray(expanded, dtype=np.int64)
        h = field.h
        if e.ndim != 2 or e.shape[1] % h:
            raise ValueError(f"expanded matrix width must be a multiple of {h}")
        if e.min() < 0 or e.max() >= field.p:
            raise ValueError(f"expanded entries must lie in GF({field.p})")
        return cls(field, e.reshape(e.shape[0], -1, h) @ field.weights)

    @classmethod
    def from_linear(cls, code: LinearCode) -> "AdditiveCode":
        """Rows ``e^i g_j``: block j of the expanded view is the message block j."""
        f = code.field
        rows = [f.mul(f.power(f.e, i), code.generator[j]) for j in range(code.k) for i in range(f.h)]
        return cls(f, np.array(rows))

    @property
    def n(self) -> int:
        return self.gens.shape[1]

    @property
    def num_gens(self) -> int:
        return self.gens.shape[0]

    @cached_property
    def prime_field(self) -> FieldSpec:
        return field_make(self.field.p)

    def expanded(self) -> np.ndarray:
        return self.field.digits[self.gens].reshape(self.num_gens, -1)

    @cached_property
    def rank(self) -> int:
        """Dimension over GF(p)."""
        return linalg.rank(self.prime_field, self.expanded())

    @property
    def size(self) -> int:
        return self.field.p**self.rank

    @property
    def k(self) -> int:
        """Dimension in GF(q) symbols; rank must be a multiple of h."""
        if self.rank % self.field.h:
            raise ValueError(f"GF(p)-rank {self.rank} is not a multiple of h={self.field.h}")
        return self.rank // self.field.h

    def __repr__(self) -> str:
        return f"AdditiveCode(q={self.field.q}, n={self.n}, gens={self.num_gens}, rank={self.rank})"

    def words(self, budget: int = DEFAULT_BUDGET) -> np.ndarray:
        if self.field.p**self.num_gens > budget:
            raise ValueError(f"enumeration of {self.field.p ** self.num_gens} combinations exceeds budget {budget}")
        return self._words

    @cached_property
    def _words(self) -> np.ndarray:
        f = self.field
        coeffs = message_space(f.p, self.num_gens)
        flat = (coeffs @ self.expanded()) % f.p
        w = flat.reshape(len(coeffs), self.n, f.h) @ f.weights
        if self.rank < self.num_gens:
            w = np.unique(w, axis=0)
        w.setflags(write=False)
        return w

    @cached_property
    def word_set(self) -> WordSet:
        return WordSet(self.words(), self.field.q)

    def __contains__(self, word) -> bool:
        return word in self.word_set

    def permuted(self, alpha) -> "AdditiveCode":
        g = np.empty_like(self.gens)
        g[:, list(alpha)] = self.gens
        return AdditiveCode(self.field, g)

    def is_linear(self) -> bool:
        """Closed under multiplication by the primitive element."""
        return bool(self.non_linear_rows().size == 0)

    def non_linear_rows(self) -> np.ndarray:
        """Indices of generators g with e*g outside the code."""
        scaled = self.field.mul(self.field.e, self.gens)
        return np.nonzero(~self.word_set.contains(scaled))[0]

    # -- block structure ----------------------------------------------------

    @cached_property
    def scalars(self) -> MatrixScalars:
        return MatrixScalars(self.field)

    def _block_cols(self, coords) -> list[int]:
        h = self.field.h
        return [c * h + i for c in coords for i in range(h)]

    def leftmost_information_set(self) -> list[int]:
        """First k coordinates, greedily, whose expanded columns have full rank."""
        e = self.expanded()
        fp = self.prime_field
        chosen: list[int] = []
        for c in range(self.n):
            trial = chosen + [c]
            if linalg.rank(fp, e[:, self._block_cols(trial)]) == len(trial) * self.field.h:
                chosen = trial
            if len(chosen) * self.field.h == self.rank:
                break
        if len(chosen) * self.field.h != self.rank or self.rank != self.num_gens:
            raise ValueError("code has no block information set with independent generators")
        return chosen

    def systematic_expanded(self, pivots=None) -> tuple[np.ndarray, list[int]]:
        """Expanded generator carrying I_h blocks on ``pivots`` (columns unmoved)."""
        if pivots is None:
            pivots = self.leftmost_information_set()
        pivots = list(pivots)
        e = self.expanded()
        fp = self.prime_field
        sub = e[:, self._block_cols(pivots)]
        if sub.shape[0] != sub.shape[1]:
            raise ZeroDivisionError("pivot blocks do not form a square system")
        return linalg.matmul(fp, linalg.inverse(fp, sub), e), pivots

    def block_form(self, pivots=None) -> tuple[list[list[tuple]], list[int]]:
        """Systematic form as a k x n grid of h x h blocks (row-major tuples)."""
        s, piv = self.systematic_expanded(pivots)
        h = self.field.h
        k = len(piv)
        blocks = [
            [tuple(s[j * h : (j + 1) * h, c * h : (c + 1) * h].ravel().tolist()) for c in range(self.n)]
            for j in range(k)
        ]
        return blocks, piv


@dataclass(frozen=True)
class AdditiveStandardForm:
    """Expanded generator ``(I_kh | blocks)`` of an additive code."""

    field: FieldSpec
    matrix: np.ndarray  # kh x nh over GF(p)
    k: int
    n: int
    invertible_blocks: bool | None  # None: code not certified MDS

    def block(self, j: int, r: int) -> np.ndarray:
        h = self.field.h
        return self.matrix[j * h : (j + 1) * h, r * h : (r + 1) * h]

    def code(self) -> AdditiveCode:
        return AdditiveCode.from_expanded(self.field, self.matrix)


def expand_to_prime(code: AdditiveCode) -> np.ndarray:
    return code.expanded()


def additive_standard_form(code: AdditiveCode, certify: bool = True):
    """Block Gaussian elimination over GF(p) plus a coordinate permutation.

    Returns ``(form, columns, witness)``: position c of ``form`` holds input
    coordinate ``columns[c]`` and ``witness`` maps ``code`` onto ``form.code()``.
    ``form.invertible_blocks`` is only set when the code is certified additive MDS.
    """
    from .equivalence.witnesses import AdditiveWitness

    s, piv = code.systematic_expanded()
    rest = [c for c in range(code.n) if c not in piv]
    columns = piv + rest
    h = code.field.h
    cols = [c * h + i for c in columns for i in range(h)]
    mat = s[:, cols]
    k = len(piv)
    invertible = None
    if certify and is_additive_mds(code):
        fp = code.prime_field
        invertible = all(
            linalg.is_invertible(fp, mat[j * h : (j + 1) * h, r * h : (r + 1) * h])
            for j in range(k)
            for r in range(k, code.n)
        )
    form = AdditiveStandardForm(code.field, mat, k, code.n, invertible)
    alpha = [0] * code.n
    for pos, c in enumerate(columns):
        alpha[c] = pos
    return form, columns, AdditiveWitness.identity_maps(code.field, alpha)


def is_additive_mds(code: AdditiveCode, budget: int = DEFAULT_BUDGET) -> bool:
    d = minimum_distance(code, budget)
    return is_mds(code.size, code.n, d, code.field.q)


def extract_additive(w, a: AdditiveCode, b: AdditiveCode, check_mds: bool = True):
    """Reduce a general witness between additive MDS codes to an additive one."""
    from .equivalence.extract import normalize

    a, b = _as_additive(a), _as_additive(b)
    if check_mds and not (is_additive_mds(a) and is_additive_mds(b)):
        raise ExtractionError("both codes must be additive MDS")
    return normalize(w, a, b).witness


def search_additive(a, b, budget: int = 10**6):
    """Find an additive witness mapping ``a`` onto ``b``, or None if none exists."""
    from .equivalence.search import search_block_monomial

    return search_block_monomial(_as_additive(a), _as_additive(b), budget)


def _as_additive(code) -> AdditiveCode:
    return AdditiveCode.from_linear(code) if isinstance(code, LinearCode) else code


def block_information_sets(code: AdditiveCode):
    """All k-subsets of coordinates that carry a block information set."""
    for combo in itertools.combinations(range(code.n), code.k):
        try:
            code.systematic_expanded(combo)
        except ZeroDivisionError:
            continue
        yield combo
