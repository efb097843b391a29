"""Dense linear algebra over a :class:`~codequiv.field.FieldSpec`.

Matrices are integer numpy arrays of element encodings.
"""

from __future__ import annotations

import numpy as np

from .field import FieldSpec


def matmul(f: FieldSpec, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        out = f.add(out, f.mul(a[:, k, None], b[None, k, :]))
    return np.asarray(out).reshape(a.shape[0], b.shape[1])


def rref(f: FieldSpec, m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; pivots are taken leftmost-first."""
    r_mat = np.array(m, dtype=np.int64, copy=True)
    if r_mat.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = r_mat.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(r_mat[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            r_mat[[r, i]] = r_mat[[i, r]]
        r_mat[r] = f.mul(f.inv(int(r_mat[r, c])), r_mat[r])
        others = np.nonzero(r_mat[:, c])[0]
        others = others[others != r]
        if others.size:
            r_mat[others] = f.sub(r_mat[others], f.mul(r_mat[others, c][:, None], r_mat[r][None, :]))
        pivots.append(c)
        r += 1
    return r_mat, pivots


def rank(f: FieldSpec, m) -> int:
    return len(rref(f, m)[1])


def inverse(f: FieldSpec, m) -> np.ndarray:
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("matrix is not square")
    r_mat, piv = rref(f, np.hstack([m, np.eye(n, dtype=np.int64)]))
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return r_mat[:, n:]


def is_invertible(f: FieldSpec, m) -> bool:
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and rank(f, m) == m.shape[0]


def solve(f: FieldSpec, a, b) -> np.ndarray:
    """Solve ``a x = b`` for square invertible ``a``."""
    b = np.asarray(b, dtype=np.int64)
    x = matmul(f, inverse(f, a), b.reshape(len(b), -1))
    return x.reshape(b.shape)


def nullspace(f: FieldSpec, m) -> np.ndarray:
    """Rows form a basis of ``{x : m x = 0}`` (right kernel)."""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r_mat, piv = rref(f, m)
    free = [c for c in range(cols) if c not in piv]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for idx, c in enumerate(free):
        basis[idx, c] = 1
        for row, pc in enumerate(piv):
            basis[idx, pc] = f.neg(int(r_mat[row, c]))
    return basis


def row_space_equal(f: FieldSpec, a, b) -> bool:
    ra, pa = rref(f, a)
    rb, pb = rref(f, b)
    return pa == pb and np.array_equal(ra[: len(pa)], rb[: len(pb)])
