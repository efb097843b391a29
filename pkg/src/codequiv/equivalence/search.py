"""Exhaustive equivalence searches for desk-scale codes.

Two unrelated strategies live here.

* :func:`search_general` knows nothing about linearity.  It backtracks over
  coordinate matchings (pruned by column and column-pair statistics), then
  over codeword images, fixing symbol maps as it goes.
* :func:`search_block_monomial` handles maps that act by a unit coefficient
  per coordinate (field scalars or GF(p) matrices).  It picks the target of
  each pivot coordinate, which fixes a systematic form of the target code,
  then matches the remaining columns while propagating coefficients through
  ``alpha_jr * L_r == L_j * beta_js``.

Both return None only after an exhaustive run and raise
:class:`~codequiv.errors.BudgetExceeded` when the node budget runs out.
"""

from __future__ import annotations

import itertools
from collections import Counter

import numpy as np

from ..codes import distance_distribution, same_word_set
from ..errors import BudgetExceeded
from .witnesses import AdditiveWitness, GeneralWitness, SemiLinearWitness, is_equivalence

DEFAULT_BUDGET = 10**6


class Counter_:
    def __init__(self, budget: int):
        self.budget = budget
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.budget)


def _compatible(a, b) -> None:
    if a.field != b.field:
        raise ValueError("codes are over different fields")
    if a.n != b.n:
        raise ValueError("codes have different lengths")


# -- general equivalence ---------------------------------------------------


def _column_profile(words: np.ndarray, i: int) -> tuple:
    return tuple(sorted(np.unique(words[:, i], return_counts=True)[1].tolist()))


def _pair_profile(words: np.ndarray, i: int, j: int, q: int) -> tuple:
    joint = words[:, i] * q + words[:, j]
    return tuple(sorted(np.unique(joint, return_counts=True)[1].tolist()))


def search_general(a, b, budget: int = DEFAULT_BUDGET) -> GeneralWitness | None:
    """Any coordinate permutation plus per-coordinate symbol permutations."""
    _compatible(a, b)
    f = a.field
    q, n = f.q, a.n
    wa, wb = np.asarray(a.words()), np.asarray(b.words())
    if len(wa) != len(wb):
        return None
    if distance_distribution(wa) != distance_distribution(wb):
        return None
    counter = Counter_(budget)
    col_a = [_column_profile(wa, i) for i in range(n)]
    col_b = [_column_profile(wb, i) for i in range(n)]
    if sorted(col_a) != sorted(col_b):
        return None
    pair_a = {(i, j): _pair_profile(wa, i, j, q) for i in range(n) for j in range(n) if i != j}
    pair_b = {(i, j): _pair_profile(wb, i, j, q) for i in range(n) for j in range(n) if i != j}

    alpha = [-1] * n
    used = [False] * n

    def assign_coord(i: int):
        if i == n:
            return _match_words(wa, wb[:, alpha], q, counter)
        for s in range(n):
            if used[s] or col_a[i] != col_b[s]:
                continue
            if any(pair_a[(i2, i)] != pair_b[(alpha[i2], s)] for i2 in range(i)):
                continue
            counter.tick()
            alpha[i], used[s] = s, True
            sig = assign_coord(i + 1)
            if sig is not None:
                return sig
            alpha[i], used[s] = -1, False
        return None

    by_source = assign_coord(0)
    if by_source is None:
        return None
    sigmas = np.empty_like(by_source)
    sigmas[alpha] = by_source
    w = GeneralWitness(f, tuple(alpha), sigmas)
    if not is_equivalence(w, a, b):
        raise AssertionError("general search produced an invalid witness")
    return w


def _match_words(wa: np.ndarray, wb: np.ndarray, q: int, counter: Counter_) -> np.ndarray | None:
    """Symbol permutations sending the rows of ``wa`` onto those of ``wb``.

    Coordinates are already aligned.  Codewords of ``wa`` are visited in an
    order that pins down new symbols early; once every symbol that occurs has
    an image, the full image set is compared directly.
    """
    m, n = wa.shape
    fwd = np.full((n, q), -1, dtype=np.int64)
    back = np.full((n, q), -1, dtype=np.int64)
    needed = [set(wa[:, i].tolist()) for i in range(n)]
    order = []
    seen = [set() for _ in range(n)]
    remaining = list(range(m))
    while remaining and any(len(seen[i]) < len(needed[i]) for i in range(n)):
        best = max(remaining, key=lambda u: sum(wa[u, i] not in seen[i] for i in range(n)))
        order.append(best)
        remaining.remove(best)
        for i in range(n):
            seen[i].add(int(wa[best, i]))
    used_b = np.zeros(m, dtype=bool)
    cols = np.arange(n)

    def complete() -> np.ndarray | None:
        img = fwd[cols[None, :], wa]
        if not same_word_set(img, wb, q):
            return None
        full = fwd.copy()
        for i in range(n):
            free_src = [x for x in range(q) if full[i, x] < 0]
            free_dst = [y for y in range(q) if back[i, y] < 0]
            full[i, free_src] = free_dst
        return full

    def rec(idx: int) -> np.ndarray | None:
        if idx == len(order):
            return complete()
        u = wa[order[idx]]
        known = fwd[cols, u]
        mask = ~used_b
        det = known >= 0
        if det.any():
            mask &= np.all(wb[:, det] == known[det], axis=1)
        if (~det).any():
            mask &= np.all(back[cols[~det], wb[:, ~det]] < 0, axis=1)
        for v in np.nonzero(mask)[0]:
            counter.tick()
            new = [i for i in range(n) if not det[i]]
            for i in new:
                fwd[i, u[i]] = wb[v, i]
                back[i, wb[v, i]] = u[i]
            used_b[v] = True
            res = rec(idx + 1)
            if res is not None:
                return res
            used_b[v] = False
            for i in new:
                back[i, fwd[i, u[i]]] = -1
                fwd[i, u[i]] = -1
        return None

    return rec(0)


# -- block-monomial equivalence --------------------------------------------


def _column_signatures(blocks, cols, alg) -> dict:
    return {c: tuple(alg.signature(row[c]) for row in blocks) for c in cols}


def _block_forms(code, k: int):
    """Yield (ordered pivots, block form) for every ordered information set."""
    for combo in itertools.combinations(range(code.n), k):
        try:
            blocks, _ = code.block_form(combo)
        except ZeroDivisionError:
            continue
        for perm in itertools.permutations(range(k)):
            yield tuple(combo[i] for i in perm), [blocks[i] for i in perm]


def _solve_monomial(a_blocks, a_piv, b, alg, counter: Counter_):
    """Core search; returns (alpha, coefficients by source coordinate) or None."""
    k, n = len(a_piv), len(a_blocks[0])
    rest = [c for c in range(n) if c not in a_piv]
    a_sig = _column_signatures(a_blocks, rest, alg)
    a_multiset = Counter(a_sig.values())
    rest.sort(key=lambda c: -sum(1 for s in a_sig[c] if s))
    # identical source columns are interchangeable: match them in increasing target order
    twin_of: dict[int, int] = {}
    last_seen: dict[tuple, int] = {}
    for r in rest:
        col = tuple(row[r] for row in a_blocks)
        if col in last_seen:
            twin_of[r] = last_seen[col]
        last_seen[col] = r
    inv = alg.inv
    mul = alg.mul

    for s_piv, b_blocks in _block_forms(b, k):
        counter.tick()
        targets = [c for c in range(n) if c not in s_piv]
        b_sig = _column_signatures(b_blocks, targets, alg)
        if Counter(b_sig.values()) != a_multiset:
            continue
        match: dict[int, int] = {}
        coeff: dict[int, object] = {}
        used: set[int] = set()

        def consistent() -> bool:
            for r, s in match.items():
                for j in range(k):
                    pj = a_piv[j]
                    if pj in coeff and mul(a_blocks[j][r], coeff[r]) != mul(coeff[pj], b_blocks[j][s]):
                        return False
            return True

        def fill_pivots(j: int) -> bool:
            if j == k:
                return True
            pj = a_piv[j]
            if pj in coeff:
                return fill_pivots(j + 1)
            for u in alg.units():
                counter.tick()
                coeff[pj] = u
                if consistent() and fill_pivots(j + 1):
                    return True
                del coeff[pj]
            return False

        def rec(idx: int) -> bool:
            if idx == len(rest):
                return fill_pivots(0)
            r = rest[idx]
            floor = match[twin_of[r]] if r in twin_of else -1
            for s in targets:
                if s in used or s <= floor or b_sig[s] != a_sig[r]:
                    continue
                forced = None
                for j in range(k):
                    pj = a_piv[j]
                    ai = inv(a_blocks[j][r])
                    if pj in coeff and ai is not None:
                        forced = mul(ai, mul(coeff[pj], b_blocks[j][s]))
                        break
                options = [forced] if forced is not None else alg.units()
                for lr in options:
                    counter.tick()
                    if inv(lr) is None:
                        continue
                    coeff[r] = lr
                    match[r] = s
                    added = []
                    ok = True
                    for j in range(k):
                        pj = a_piv[j]
                        if pj in coeff:
                            continue
                        bi = inv(b_blocks[j][s])
                        if bi is None:
                            continue
                        lj = mul(mul(a_blocks[j][r], lr), bi)
                        if inv(lj) is None:
                            ok = False
                            break
                        coeff[pj] = lj
                        added.append(pj)
                    if ok and consistent():
                        used.add(s)
                        if rec(idx + 1):
                            return True
                        used.discard(s)
                    for pj in added:
                        del coeff[pj]
                    del coeff[r]
                    del match[r]
            return False

        for rep in alg.center_reps():
            coeff.clear()
            match.clear()
            used.clear()
            coeff[a_piv[0]] = rep
            if rec(0):
                alpha = [0] * n
                for j, pj in enumerate(a_piv):
                    alpha[pj] = s_piv[j]
                for r, s in match.items():
                    alpha[r] = s
                return tuple(alpha), dict(coeff)
    return None


def search_semilinear(a, b, budget: int = DEFAULT_BUDGET, exponents=None) -> SemiLinearWitness | None:
    """Coordinate permutation, nonzero scalars and one Frobenius power.

    ``exponents`` restricts the Frobenius powers tried; ``[0]`` searches for
    linear (monomial) equivalence only.
    """
    _compatible(a, b)
    if a.k != b.k:
        return None
    f = a.field
    counter = Counter_(budget)
    for t in exponents if exponents is not None else range(f.h):
        at = a.frobenius(t)
        a_blocks, a_piv = at.block_form()
        found = _solve_monomial(a_blocks, a_piv, b, at.scalars, counter)
        if found is None:
            continue
        alpha, coeff = found
        lambdas = [0] * a.n
        for i in range(a.n):
            lambdas[alpha[i]] = coeff[i]
        w = SemiLinearWitness(f, alpha, tuple(lambdas), t)
        if not is_equivalence(w, a, b):
            raise AssertionError("semi-linear search produced an invalid witness")
        return w
    return None


def search_linear(a, b, budget: int = DEFAULT_BUDGET) -> SemiLinearWitness | None:
    return search_semilinear(a, b, budget, exponents=[0])


def search_block_monomial(a, b, budget: int = DEFAULT_BUDGET) -> AdditiveWitness | None:
    """Coordinate permutation plus one invertible additive map per coordinate."""
    _compatible(a, b)
    if a.rank != b.rank:
        return None
    counter = Counter_(budget)
    a_blocks, a_piv = a.block_form()
    alg = a.scalars
    found = _solve_monomial(a_blocks, a_piv, b, alg, counter)
    if found is None:
        return None
    alpha, coeff = found
    maps = [None] * a.n
    for i in range(a.n):
        maps[alpha[i]] = alg.to_linmap(coeff[i])
    w = AdditiveWitness(a.field, alpha, tuple(maps))
    if not is_equivalence(w, a, b):
        raise AssertionError("additive search produced an invalid witness")
    return w
