"""Dense linear algebra over a prime field, vectorised with numpy.

Used where systems get large (the curve-extension solver); the generic
tuple-based routines in :mod:`pi1.fields` cover extension fields, whose
matrices stay small.  Matrices are int64 arrays with entries in [0, p).
"""

from __future__ import annotations

import numpy as np


def _inv(x: int, p: int) -> int:
    return pow(int(x), p - 2, p)


def rref_mod(a: np.ndarray, p: int):
    """Reduced row echelon form mod p; returns (array, pivot columns)."""
    m = np.array(a, dtype=np.int64) % p
    nrows, ncols = m.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        sel = r + int(nz[0])
        if sel != r:
            m[[r, sel]] = m[[sel, r]]
        m[r] = (m[r] * _inv(m[r, c], p)) % p
        col = m[:, c].copy()
        col[r] = 0
        m -= np.outer(col, m[r])
        m %= p
        pivots.append(c)
        r += 1
    return m[: len(pivots)], pivots


def nullspace_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (rows) of the right kernel of a mod p."""
    a = np.array(a, dtype=np.int64) % p
    nrows, ncols = a.shape
    if nrows == 0:
        return np.eye(ncols, dtype=np.int64)
    red, pivots = rref_mod(a, p)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, j in enumerate(free):
        basis[i, j] = 1
        for row, pc in zip(red, pivots):
            basis[i, pc] = (-row[j]) % p
    return basis


def solve_mod(a: np.ndarray, b: np.ndarray, p: int):
    """One solution of a x = b mod p, or None when inconsistent."""
    a = np.array(a, dtype=np.int64) % p
    b = np.array(b, dtype=np.int64) % p
    nrows, ncols = a.shape
    aug = np.concatenate([a, b.reshape(nrows, 1)], axis=1)
    red, pivots = rref_mod(aug, p)
    x = np.zeros(ncols, dtype=np.int64)
    for row, pc in zip(red, pivots):
        if pc == ncols:
            return None
        x[pc] = row[ncols]
    return x


def lex_reduce_mod(x0: np.ndarray, basis: np.ndarray, p: int, maximize: bool = False):
    """Lexicographically extreme element of the coset x0 + row span of basis.

    Coordinates are compared left to right with 0 < 1 < ... < p-1.  The
    pivot coordinates of the span are the only adjustable ones, and they are
    driven to 0 (or p-1 when maximizing) in order.
    """
    x = np.array(x0, dtype=np.int64) % p
    if basis.size == 0:
        return x
    red, pivots = rref_mod(basis, p)
    target = (p - 1) if maximize else 0
    for row, pc in zip(red, pivots):
        delta = (x[pc] - target) % p
        if delta:
            x = (x - delta * row) % p
    return x
