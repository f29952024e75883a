"""Batched resultants modulo a 31-bit prime.

All evaluation points of a grid are processed together, one numpy row per
point.  After every remainder step the rows are regrouped by the actual
degree of their remainder, so abnormal remainder sequences (which the
multiplier resultants have structurally) stay vectorised.  Tiny groups are
finished by the scalar routine.
"""

from __future__ import annotations

import numpy as np

from .resultant import resultant_mod_p

_SCALAR_GROUP = 4


def _vpow(base: np.ndarray, exponent: int, p: int) -> np.ndarray:
    result = np.ones_like(base)
    b = base % p
    while exponent:
        if exponent & 1:
            result = result * b % p
        exponent >>= 1
        if exponent:
            b = b * b % p
    return result


def _vinv(values: np.ndarray, p: int) -> np.ndarray:
    return _vpow(values, p - 2, p)


def _degrees(rows: np.ndarray) -> np.ndarray:
    """Index of the last nonzero entry per row; -1 for zero rows."""
    nz = rows != 0
    width = rows.shape[1]
    last = width - 1 - np.argmax(nz[:, ::-1], axis=1)
    return np.where(nz.any(axis=1), last, -1)


def batched_resultant_mod_p(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Res(A_i, B_i) mod p for every row i (formal degrees = row length - 1).

    ``a`` has shape (npts, m+1), ``b`` shape (npts, n+1).
    """
    if p >= 2 ** 31:
        raise ValueError("batched resultants need p < 2**31")
    a = np.array(a, dtype=np.int64) % p
    b = np.array(b, dtype=np.int64) % p
    npts = a.shape[0]
    out = np.zeros(npts, dtype=np.int64)
    regular = (a[:, -1] != 0) & (b[:, -1] != 0)
    for i in np.nonzero(~regular)[0]:
        out[i] = resultant_mod_p(a[i].tolist(), b[i].tolist(), p)
    idx = np.nonzero(regular)[0]
    if idx.size == 0:
        return out
    # each task: (row indices, F, G, accumulated factor); value = acc * Res(F, G)
    tasks = [(idx, a[idx], b[idx], np.ones(idx.size, dtype=np.int64))]
    while tasks:
        rows, f, g, acc = tasks.pop()
        if rows.size <= _SCALAR_GROUP:
            for r, fi, gi, ai in zip(rows, f, g, acc):
                out[r] = int(ai) * resultant_mod_p(fi.tolist(), gi.tolist(), p) % p
            continue
        df, dg = f.shape[1] - 1, g.shape[1] - 1
        if df > dg:
            if (df * dg) % 2:
                acc = (p - acc) % p
            f, g, df, dg = g, f, dg, df
        if df == 0:
            out[rows] = acc * _vpow(f[:, 0], dg, p) % p
            continue
        lc = f[:, -1]
        inv = _vinv(lc, p)
        g = g.copy()
        for k in range(dg, df - 1, -1):
            q = g[:, k] * inv % p
            g[:, k - df:k + 1] = (g[:, k - df:k + 1] - q[:, None] * f) % p
        rem = g[:, :df]
        deg = _degrees(rem)
        zero = deg < 0
        if zero.any():
            out[rows[zero]] = 0
        for d in np.unique(deg[~zero]):
            sel = deg == d
            factor = acc[sel] * _vpow(lc[sel], dg - int(d), p) % p
            tasks.append((rows[sel], f[sel], rem[sel, :int(d) + 1], factor))
    return out
