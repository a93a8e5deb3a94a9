"""Dense exact linear algebra over the prime field GF(p).

Plain Gaussian elimination, plus a batched variant that decides invertibility
for many small matrices at once (the unit-enumeration hot path).
"""

from __future__ import annotations

import numpy as np


def work_dtype(p: int):
    # products of residues must not overflow before the reduction mod p
    return np.int64 if (p - 1) * (p - 1) >= 2**31 else np.int32


def inverse_table(p: int) -> np.ndarray:
    """inv[x] = x^-1 mod p for 1 <= x < p; inv[0] = 0."""
    tab = np.zeros(p, dtype=work_dtype(p))
    for x in range(1, p):
        tab[x] = pow(x, p - 2, p)
    return tab


def solve_mod_p(mat: np.ndarray, rhs: np.ndarray, p: int) -> np.ndarray | None:
    """Solve mat @ x = rhs over GF(p); None if inconsistent.

    When the matrix is rank-deficient but the system is consistent, one
    solution is returned (free variables set to zero).
    """
    dt = work_dtype(p)
    n = mat.shape[0]
    aug = np.concatenate([np.asarray(mat, dtype=dt) % p,
                          (np.asarray(rhs, dtype=dt) % p)[:, None]], axis=1)
    pivots: list[int] = []
    row = 0
    for col in range(n):
        hit = np.nonzero(aug[row:, col])[0]
        if hit.size == 0:
            continue
        r = row + hit[0]
        if r != row:
            aug[[row, r]] = aug[[r, row]]
        pinv = pow(int(aug[row, col]), p - 2, p)
        aug[row] = (aug[row] * pinv) % p
        others = np.nonzero(aug[:, col])[0]
        others = others[others != row]
        if others.size:
            aug[others] = (aug[others] - np.outer(aug[others, col], aug[row])) % p
        pivots.append(col)
        row += 1
        if row == n:
            break
    if np.any(aug[row:, n]):
        return None
    x = np.zeros(n, dtype=dt)
    for r, col in enumerate(pivots):
        x[col] = aug[r, n]
    return x


def batch_invertible_mask(mats: np.ndarray, p: int) -> np.ndarray:
    """Invertibility over GF(p) of a stack of matrices, shape (N, n, n) -> (N,) bool."""
    N = mats.shape[0]
    if N == 0:
        return np.zeros(0, dtype=bool)
    n = mats.shape[1]
    dt = work_dtype(p)
    R = np.asarray(mats, dtype=dt) % p
    if R is mats or not R.flags.owndata:
        R = R.copy()
    inv_tab = inverse_table(p)
    alive = np.ones(N, dtype=bool)
    ar = np.arange(N)
    for col in range(n):
        nz = R[:, col:, col] != 0
        alive &= nz.any(axis=1)
        pr = col + nz.argmax(axis=1)  # first nonzero at/below the diagonal
        tmp = R[ar, pr].copy()
        R[ar, pr] = R[ar, col]
        R[ar, col] = tmp
        pinv = inv_tab[R[:, col, col]]
        R[:, col, col:] = (R[:, col, col:] * pinv[:, None]) % p
        below = R[:, col + 1:, col]
        if below.size:
            R[:, col + 1:, col:] = (R[:, col + 1:, col:]
                                    - below[:, :, None] * R[:, col, None, col:]) % p
    return alive
