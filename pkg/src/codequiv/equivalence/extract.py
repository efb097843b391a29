"""Turning an arbitrary equivalence into a structured one.

Given symbol permutations sigma_j that carry code A onto code B, subtracting
the images of zero leaves maps tau_j that are additive wherever a coordinate
is tied to a generator block of weight at least two.  For linear codes the
coefficients of those additive maps then expose a single Frobenius power and
per-coordinate scalars (a semi-linear map).

Codes here may be direct sums of independent blocks.  The analysis is run per
connected block of the systematic generator:

* ``block``: rows linked by columns of weight >= 2; tau is certified additive;
* ``repetition``: a single row and its weight-one copies; sigma is arbitrary
  there, so it is replaced by the obvious linear map;
* ``zero``: an all-zero column; any map fixing 0 will do.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..codes import LinearCode, all_columns_weight_one, message_space
from ..errors import ComponentConflict, ExtractionError, WeightOneHypothesis
from ..field import LinearizedMap, linmap_from_table
from .witnesses import (
    AdditiveWitness,
    SemiLinearWitness,
    WeightOneProfile,
    is_equivalence,
    translation_component,
)


@dataclass(frozen=True)
class Component:
    kind: str  # "block", "repetition" or "zero"
    rows: tuple[int, ...]
    coords: tuple[int, ...]


def components(blocks, pivots, alg) -> list[Component]:
    """Connected blocks of a systematic generator (rows linked through columns)."""
    k, n = len(pivots), len(blocks[0])
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    support = {}
    zero_cols = []
    for c in range(n):
        if c in pivots:
            continue
        rows = [j for j in range(k) if not alg.is_zero(blocks[j][c])]
        if not rows:
            zero_cols.append(c)
            continue
        support[c] = rows
        for j in rows[1:]:
            parent[find(j)] = find(rows[0])
    groups: dict[int, list[int]] = {}
    for j in range(k):
        groups.setdefault(find(j), []).append(j)
    out = []
    for rows in groups.values():
        cols = [pivots[j] for j in rows] + [c for c, rs in support.items() if find(rs[0]) == find(rows[0])]
        kind = "block" if len(rows) > 1 else "repetition"
        out.append(Component(kind, tuple(rows), tuple(sorted(cols))))
    out.extend(Component("zero", (), (c,)) for c in zero_cols)
    return out


def _encode(blocks, msgs: np.ndarray, alg, f) -> np.ndarray:
    k, n = len(blocks), len(blocks[0])
    out = np.zeros((len(msgs), n), dtype=np.int64)
    for c in range(n):
        col = np.zeros(len(msgs), dtype=np.int64)
        for j in range(k):
            if not alg.is_zero(blocks[j][c]):
                col = np.asarray(f.add(col, alg.act(msgs[:, j], blocks[j][c])))
        out[:, c] = col
    return out


@dataclass
class Normalized:
    """Result of stripping translations from a valid witness."""

    witness: AdditiveWitness
    pivots: list[int]
    a_blocks: list
    b_blocks: list
    components: list[Component]
    taus: dict[int, LinearizedMap]
    sigmas: np.ndarray

    def all_weight_one(self) -> bool:
        return all(c.kind == "repetition" for c in self.components)


def normalize(w, a, b) -> Normalized:
    """Strip the translation part of ``w`` block by block and certify additivity.

    Works for linear codes (field scalars) and additive codes (GF(p) matrix
    blocks) alike; ``a.scalars`` picks the arithmetic.
    """
    f = a.field
    if not (w.field == f == b.field) or not (w.n == a.n == b.n):
        raise ExtractionError("witness and codes disagree on field or length")
    if not is_equivalence(w, a, b):
        raise ExtractionError("witness does not map the first code onto the second")
    alg = a.scalars
    a1 = a.permuted(w.alpha)
    sig = w.tables()
    a_blocks, piv = a1.block_form()
    try:
        b_blocks, _ = b.block_form(piv)
    except ZeroDivisionError:
        raise ExtractionError(f"coordinates {piv} are not an information set of the target") from None
    k, n = len(piv), a.n
    zero_img = np.array(translation_component(w, b).v)

    # sigma_r(0) = sum_i beta_ir sigma_i(0) for every column
    rebuilt = _encode(b_blocks, zero_img[piv][None, :], alg, f)[0]
    if not np.array_equal(rebuilt, zero_img):
        raise ExtractionError("images of zero violate sum_i beta_ir sigma_i(0) = sigma_r(0)")

    # sum_j beta_jr sigma_j(a_j) = sigma_r(sum_j alpha_jr a_j) for every message
    msgs = message_space(f.q, k)
    a_words = _encode(a_blocks, msgs, alg, f)
    img = sig[np.arange(n)[None, :], a_words]
    if not np.array_equal(img, _encode(b_blocks, img[:, piv], alg, f)):
        raise ExtractionError("witness images do not follow the target's systematic form")

    comps = components(a_blocks, piv, alg)
    taus: dict[int, LinearizedMap] = {}
    maps: list[LinearizedMap | None] = [None] * n
    for comp in comps:
        if comp.kind == "block":
            for c in comp.coords:
                taus[c] = linmap_from_table(f, f.sub(sig[c], sig[c][0]))
                maps[c] = taus[c]
            # sum_j tau_r(alpha_jr a_j) = tau_r(sum_j alpha_jr a_j)
            for r in comp.coords:
                if r in piv:
                    continue
                tab = taus[r].table()
                lhs = np.zeros(len(msgs), dtype=np.int64)
                for j in comp.rows:
                    lhs = np.asarray(f.add(lhs, tab[alg.act(msgs[:, j], a_blocks[j][r])]))
                if not np.array_equal(lhs, tab[a_words[:, r]]):
                    raise ExtractionError(f"tau_{r + 1} fails additivity on the code")
        elif comp.kind == "repetition":
            (j,) = comp.rows
            for c in comp.coords:
                if c == piv[j]:
                    maps[c] = LinearizedMap.identity(f)
                    continue
                ai = alg.inv(a_blocks[j][c])
                if ai is None:
                    raise ExtractionError(f"singular block at row {j + 1}, column {c + 1}")
                maps[c] = alg.to_linmap(alg.mul(ai, b_blocks[j][c]))
        else:
            maps[comp.coords[0]] = LinearizedMap.identity(f)

    tw = AdditiveWitness(f, w.alpha, tuple(maps))
    if not is_equivalence(tw, a, b):
        raise ExtractionError("translation-free witness does not map the codes onto each other")
    return Normalized(tw, piv, a_blocks, b_blocks, comps, taus, sig)


def normalize_to_additive(w, a: LinearCode, b: LinearCode) -> AdditiveWitness:
    """Additive witness obtained by removing translations from ``w``.

    Raises :class:`WeightOneHypothesis` when every standard-form column of
    both codes has weight one; :func:`extract_semilinear` handles that case.
    """
    norm = normalize(w, a, b)
    a_sys = np.array(norm.a_blocks)
    b_sys = np.array(norm.b_blocks)
    if all_columns_weight_one(a_sys, b_sys):
        raise WeightOneHypothesis("all standard-form columns have weight one")
    return norm.witness


def weight_one_profile(norm: Normalized) -> WeightOneProfile:
    """Row assignment, multiplicities and row-level maps of a repetition code."""
    k = len(norm.pivots)
    n = len(norm.sigmas)
    row_of = [0] * n
    thetas = np.empty_like(norm.sigmas)
    f = norm.witness.field
    xs = np.arange(f.q)
    for comp in norm.components:
        if comp.kind != "repetition":
            raise ExtractionError("code has columns of weight other than one")
        (j,) = comp.rows
        for c in comp.coords:
            row_of[c] = j
            al, be = norm.a_blocks[j][c], norm.b_blocks[j][c]
            thetas[c] = f.div(norm.sigmas[c][f.mul(al, xs)], be)
    mult = tuple(row_of.count(j) for j in range(k))
    profile = WeightOneProfile(tuple(row_of), mult, thetas)
    profile.validate()
    return profile


def extract_semilinear(w, a: LinearCode, b: LinearCode) -> SemiLinearWitness:
    """Semi-linear witness between linear codes, built from any valid witness."""
    if a.k != b.k:
        raise ExtractionError("codes have different dimensions")
    norm = normalize(w, a, b)
    f = a.field
    piv = norm.pivots
    A, B = norm.a_blocks, norm.b_blocks
    n = a.n
    lam = [1] * n

    if norm.all_weight_one():
        weight_one_profile(norm)
    t = _common_exponent(norm, f)

    for comp in norm.components:
        if comp.kind == "block":
            _rescale_block(norm, comp, t, lam, f)
        elif comp.kind == "repetition":
            (j,) = comp.rows
            for c in comp.coords:
                if c != piv[j]:
                    lam[c] = f.div(B[j][c], f.frobenius(A[j][c], t))

    out = SemiLinearWitness(f, w.alpha, tuple(lam), t, info_set=tuple(piv))
    if not is_equivalence(out, a, b):
        raise ExtractionError("extracted semi-linear witness is not an equivalence")
    return out


def _coeffs(norm: Normalized, c: int) -> tuple[int, ...]:
    return norm.taus[c].coeffs


def _common_exponent(norm: Normalized, f) -> int:
    """Smallest Frobenius power usable in every block, after checking

    ``beta_jr c_ji == c_ri alpha_jr^(p^i)`` for all rows j, columns r, powers i.
    """
    piv = norm.pivots
    A, B = norm.a_blocks, norm.b_blocks
    supports = []
    for comp in norm.components:
        if comp.kind != "block":
            continue
        for j in comp.rows:
            cj = _coeffs(norm, piv[j])
            for r in comp.coords:
                if r in piv:
                    continue
                if A[j][r] == 0 and B[j][r] == 0:
                    continue
                cr = _coeffs(norm, r)
                for i in range(f.h):
                    if f.mul(B[j][r], cj[i]) != f.mul(cr[i], f.frobenius(A[j][r], i)):
                        raise ExtractionError(
                            f"coefficient identity fails at row {j + 1}, column {r + 1}, power {i}"
                        )
        comp_support = None
        for c in comp.coords:
            s = {i for i, x in enumerate(_coeffs(norm, c)) if x}
            if not s:
                raise ExtractionError(f"tau_{c + 1} vanishes identically")
            comp_support = s if comp_support is None else comp_support & s
        supports.append(comp_support)
    if not supports:
        # only repetition and zero columns: every sigma can be taken linear
        return 0
    common = set.intersection(*supports)
    if not common:
        raise ComponentConflict(supports)
    return min(common)


def _rescale_block(norm: Normalized, comp: Component, t: int, lam: list[int], f) -> None:
    """Rescale rows and columns of B's block until it equals A^(p^t); record scalars.

    Row j is multiplied by c_jt / c_{j*}t and column r by
    alpha_{j_r r}^(p^t) c_{j*}t / (beta_{j_r r} c_{j_r}t), where j* is the first row
    with c_{j*}t != 0 and j_r the reference row of column r (j* when it meets r).
    """
    piv = norm.pivots
    A, B = norm.a_blocks, norm.b_blocks
    ct = {c: _coeffs(norm, c)[t] for c in comp.coords}
    j_star = next(j for j in comp.rows if ct[piv[j]])
    c_star = ct[piv[j_star]]
    rho = {j: f.div(ct[piv[j]], c_star) for j in comp.rows}
    for r in comp.coords:
        if r in piv:
            continue
        jr = j_star if A[j_star][r] else next(j for j in comp.rows if A[j][r])
        kappa = f.div(
            f.mul(f.frobenius(A[jr][r], t), c_star),
            f.mul(B[jr][r], ct[piv[jr]]),
        )
        for j in comp.rows:
            if f.mul(f.mul(rho[j], B[j][r]), kappa) != f.frobenius(A[j][r], t):
                raise ExtractionError(f"rescaled target differs from A^(p^{t}) at row {j + 1}, column {r + 1}")
        lam[r] = f.inv(kappa)
    for j in comp.rows:
        lam[piv[j]] = rho[j]
    for c in comp.coords:
        if lam[c] != f.div(ct[c], c_star):
            raise AssertionError("rescaling scalars disagree with the tau coefficients")
