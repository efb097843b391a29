"""Explicit equivalence maps between codes.

Every witness carries ``alpha``, a 0-based image list: coordinate ``i`` of a
source word moves to position ``alpha[i]``.  The per-coordinate symbol maps are
indexed by target position and applied after the move.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from ..codes import LinearCode, same_word_set
from ..errors import ExtractionError
from ..field import FieldSpec, LinearizedMap


def _check_perm(alpha, n: int) -> tuple[int, ...]:
    alpha = tuple(int(a) for a in alpha)
    if sorted(alpha) != list(range(n)):
        raise ValueError(f"alpha {alpha} is not a permutation of 0..{n - 1}")
    return alpha


class _Witness:
    field: FieldSpec
    alpha: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.alpha)

    def tables(self) -> np.ndarray:
        raise NotImplementedError

    def apply(self, words) -> np.ndarray:
        words = np.atleast_2d(np.asarray(words, dtype=np.int64))
        moved = np.empty_like(words)
        moved[:, list(self.alpha)] = words
        tab = self.tables()
        return tab[np.arange(self.n)[None, :], moved]

    def as_general(self) -> "GeneralWitness":
        return GeneralWitness(self.field, self.alpha, self.tables())


@dataclass(frozen=True, eq=False)
class GeneralWitness(_Witness):
    field: FieldSpec
    alpha: tuple[int, ...]
    sigmas: np.ndarray  # n x q, row j is the table of sigma_j

    def __post_init__(self):
        sig = np.array(self.sigmas, dtype=np.int64)
        q = self.field.q
        object.__setattr__(self, "alpha", _check_perm(self.alpha, len(self.alpha)))
        if sig.shape != (len(self.alpha), q):
            raise ValueError(f"need {len(self.alpha)} tables of length {q}")
        for j, row in enumerate(sig):
            if sorted(row.tolist()) != list(range(q)):
                raise ValueError(f"sigma_{j + 1} is not a permutation of the field")
        sig.setflags(write=False)
        object.__setattr__(self, "sigmas", sig)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "GeneralWitness":
        return cls(field, tuple(range(n)), np.tile(np.arange(field.q), (n, 1)))

    def tables(self) -> np.ndarray:
        return self.sigmas

    def translated(self, v) -> "GeneralWitness":
        """Follow every sigma_j by the translation ``x -> x + v_j``."""
        v = np.asarray(v, dtype=np.int64)
        return GeneralWitness(self.field, self.alpha, self.field.add(self.sigmas, v[:, None]))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GeneralWitness)
            and self.field == other.field
            and self.alpha == other.alpha
            and np.array_equal(self.sigmas, other.sigmas)
        )


@dataclass(frozen=True)
class SemiLinearWitness(_Witness):
    """sigma_j(x) = lambdas[j] * x^(p^t)."""

    field: FieldSpec
    alpha: tuple[int, ...]
    lambdas: tuple[int, ...]
    t: int = 0
    # pivot coordinates (after alpha) used when the witness was extracted
    info_set: tuple[int, ...] | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_perm(self.alpha, len(self.alpha)))
        object.__setattr__(self, "lambdas", tuple(int(x) for x in self.lambdas))
        if len(self.lambdas) != len(self.alpha):
            raise ValueError("need one scalar per coordinate")
        if any(not 0 < x < self.field.q for x in self.lambdas):
            raise ValueError("scalars must be nonzero field elements")
        if not 0 <= self.t < self.field.h:
            raise ValueError(f"Frobenius exponent must lie in 0..{self.field.h - 1}")

    def tables(self) -> np.ndarray:
        f = self.field
        fr = np.asarray(f.frobenius(np.arange(f.q), self.t))
        return np.asarray(f.mul(np.array(self.lambdas)[:, None], fr[None, :]))

    def maps(self) -> list[LinearizedMap]:
        return [LinearizedMap.scalar(self.field, lam, self.t) for lam in self.lambdas]


@dataclass(frozen=True)
class AdditiveWitness(_Witness):
    field: FieldSpec
    alpha: tuple[int, ...]
    maps: tuple[LinearizedMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_perm(self.alpha, len(self.alpha)))
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(self.maps) != len(self.alpha):
            raise ValueError("need one map per coordinate")
        for j, m in enumerate(self.maps):
            if not m.is_permutation():
                raise ValueError(f"map {j + 1} is not a permutation")

    @classmethod
    def identity_maps(cls, field: FieldSpec, alpha) -> "AdditiveWitness":
        return cls(field, tuple(alpha), tuple(LinearizedMap.identity(field) for _ in alpha))

    def tables(self) -> np.ndarray:
        return np.array([m.table() for m in self.maps])


def apply_witness(w, u) -> np.ndarray:
    out = w.apply(u)
    return out[0] if np.ndim(u) == 1 else out


def is_equivalence(w, a, b) -> bool:
    """Whether ``w`` maps the word set of ``a`` exactly onto that of ``b``."""
    if not (w.field == a.field == b.field):
        return False
    if not (w.n == a.n == b.n):
        return False
    wa, wb = a.words(), b.words()
    if len(wa) != len(wb):
        return False
    return same_word_set(w.apply(wa), wb, a.field.q)


def preserves_distance(w, code) -> bool:
    """d(u, v) == d(psi(u), psi(v)) for every pair of words of ``code``."""
    words = code.words()
    img = w.apply(words)
    for i in range(len(words)):
        d0 = np.count_nonzero(words[i] != words, axis=1)
        d1 = np.count_nonzero(img[i] != img, axis=1)
        if not np.array_equal(d0, d1):
            return False
    return True


@dataclass(frozen=True)
class TranslationVector:
    v: tuple[int, ...]


def translation_component(w, target: LinearCode | None = None) -> TranslationVector:
    """The images of zero, ``(sigma_1(0), ..., sigma_n(0))``.

    A valid witness sends the zero word to this vector, so with ``target``
    given, membership is checked and a miss raises :class:`ExtractionError`.
    """
    v = tuple(int(x) for x in w.tables()[:, 0])
    if target is not None and v not in target:
        raise ExtractionError(f"translation vector {v} is not a codeword of the target")
    return TranslationVector(v)


@dataclass(frozen=True, eq=False)
class WeightOneProfile:
    """Shape of a code whose standard-form columns all have weight one.

    ``f[c]`` is the generator row carrying coordinate c, ``multiplicities[j]``
    the number of coordinates on row j and ``thetas[c]`` the symbol map seen at
    coordinate c once row values are read off directly.
    """

    f: tuple[int, ...]
    multiplicities: tuple[int, ...]
    thetas: np.ndarray

    def validate(self) -> None:
        if sum(self.multiplicities) != len(self.f):
            raise ExtractionError("multiplicities do not sum to the length")
        for row in set(self.f):
            group = [c for c, r in enumerate(self.f) if r == row]
            for c in group[1:]:
                if not np.array_equal(self.thetas[c], self.thetas[group[0]]):
                    raise ExtractionError(f"coordinates {group[0]} and {c} on row {row} carry different maps")
