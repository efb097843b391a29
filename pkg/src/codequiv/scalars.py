"""Coefficient rings for block-monomial maps.

A linear code over GF(q) is rescaled coordinatewise by nonzero field elements;
an additive code is rescaled by invertible h x h matrices over GF(p) acting on
coefficient row vectors.  Searches and witness normalization are written once
against the small interface below and specialized by one of these two classes.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from . import linalg
from .field import FieldSpec, LinearizedMap, field_make


class FieldScalars:
    """Nonzero elements of GF(q) (ints)."""

    def __init__(self, field: FieldSpec):
        self.field = field
        self.one = 1

    def mul(self, a: int, b: int) -> int:
        return self.field.mul(a, b)

    def inv(self, a: int) -> int | None:
        return None if a == 0 else self.field.inv(a)

    def is_zero(self, a: int) -> bool:
        return a == 0

    def signature(self, a: int) -> int:
        return int(a != 0)

    def units(self):
        return range(1, self.field.q)

    def center_reps(self):
        # every unit is central: the first pivot can be fixed to 1
        return [1]

    def to_linmap(self, a: int) -> LinearizedMap:
        return LinearizedMap.scalar(self.field, a)

    def act(self, x, a: int):
        """Image of the element(s) ``x`` under multiplication by ``a``."""
        return self.field.mul(x, a)


class MatrixScalars:
    """h x h matrices over GF(p), stored as row-major tuples."""

    def __init__(self, field: FieldSpec):
        self.field = field
        self.prime = field_make(field.p)
        self.h = field.h
        self.one = tuple(np.eye(self.h, dtype=np.int64).ravel().tolist())

    def _arr(self, a) -> np.ndarray:
        return np.array(a, dtype=np.int64).reshape(self.h, self.h)

    @staticmethod
    def _tup(m: np.ndarray) -> tuple:
        return tuple(int(x) for x in m.ravel())

    @functools.lru_cache(maxsize=1 << 16)
    def mul(self, a: tuple, b: tuple) -> tuple:
        return self._tup((self._arr(a) @ self._arr(b)) % self.field.p)

    @functools.lru_cache(maxsize=1 << 14)
    def inv(self, a: tuple) -> tuple | None:
        try:
            return self._tup(linalg.inverse(self.prime, self._arr(a)))
        except ZeroDivisionError:
            return None

    def is_zero(self, a: tuple) -> bool:
        return not any(a)

    @functools.lru_cache(maxsize=1 << 14)
    def signature(self, a: tuple) -> int:
        return linalg.rank(self.prime, self._arr(a))

    @functools.cached_property
    def _units(self) -> list[tuple]:
        p, h = self.field.p, self.h
        out = []
        for entries in itertools.product(range(p), repeat=h * h):
            if self.inv(entries) is not None:
                out.append(tuple(entries))
        return out

    def units(self):
        return self._units

    def center_reps(self):
        """One unit from each coset of the scalar matrices."""
        p = self.field.p
        seen = set()
        reps = []
        for u in self._units:
            if u in seen:
                continue
            reps.append(u)
            for c in range(1, p):
                seen.add(tuple((c * x) % p for x in u))
        return reps

    def to_linmap(self, a: tuple) -> LinearizedMap:
        return LinearizedMap.from_matrix(self.field, self._arr(a))

    def act(self, x, a: tuple):
        """Image of the element(s) ``x`` under the row-vector map ``v -> v a``."""
        f = self.field
        x = np.asarray(x, dtype=np.int64)
        return f.from_digits((f.digits[x] @ self._arr(a)) % f.p)

    def from_linmap(self, lm: LinearizedMap) -> tuple:
        return self._tup(lm.matrix())

    def from_element(self, x: int) -> tuple:
        """Matrix of multiplication by ``x``."""
        return self.from_linmap(LinearizedMap.scalar(self.field, x))
