"""Numba-compiled twins of the kernels in ``_numpy``."""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _mul(a, b, n):
    if a == 0 or b == 0:
        return 0
    return (a + b - 2) % n + 1


@njit(cache=True, inline="always")
def _add(a, b, zech, n):
    if a == 0:
        return b
    if b == 0:
        return a
    z = zech[(b - a) % n]
    if z < 0:
        return 0
    return (a - 1 + z) % n + 1


@njit(cache=True, inline="always")
def _inv(a, n):
    return (-(a - 1)) % n + 1


@njit(cache=True)
def _rref(A, zech, n, mone):
    rows, cols = A.shape
    piv = np.empty(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        sel = -1
        for i in range(r, rows):
            if A[i, c] != 0:
                sel = i
                break
        if sel < 0:
            continue
        if sel != r:
            for j in range(cols):
                t = A[r, j]
                A[r, j] = A[sel, j]
                A[sel, j] = t
        s = _inv(A[r, c], n)
        for j in range(c, cols):
            A[r, j] = _mul(A[r, j], s, n)
        for i in range(rows):
            if i != r and A[i, c] != 0:
                f = _mul(A[i, c], mone, n)
                for j in range(c, cols):
                    if A[r, j] != 0:
                        A[i, j] = _add(A[i, j], _mul(f, A[r, j], n), zech, n)
        piv[r] = c
        r += 1
    return piv[:r]


def rref(mat, zech, n, mone):
    A = np.array(mat, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    piv = _rref(A, zech, n, mone)
    return A, piv


@njit(cache=True)
def _reduce_in_place(basis, pivots, rank, v, zech, n, mone):
    for i in range(rank):
        c = v[pivots[i]]
        if c != 0:
            f = _mul(c, mone, n)
            row = basis[i]
            for j in range(v.shape[0]):
                if row[j] != 0:
                    v[j] = _add(v[j], _mul(f, row[j], n), zech, n)


def reduce_vec(basis, pivots, rank, v, zech, n, mone):
    v = np.array(v, dtype=np.int64, copy=True)
    _reduce_in_place(basis, pivots, rank, v, zech, n, mone)
    return v


@njit(cache=True)
def reduce_insert(basis, pivots, rank, v, zech, n, mone):
    _reduce_in_place(basis, pivots, rank, v, zech, n, mone)
    c = -1
    for j in range(v.shape[0]):
        if v[j] != 0:
            c = j
            break
    if c < 0:
        return rank
    s = _inv(v[c], n)
    for j in range(c, v.shape[0]):
        v[j] = _mul(v[j], s, n)
    for i in range(rank):
        if basis[i, c] != 0:
            f = _mul(basis[i, c], mone, n)
            for j in range(c, v.shape[0]):
                if v[j] != 0:
                    basis[i, j] = _add(basis[i, j], _mul(f, v[j], n), zech, n)
    for j in range(v.shape[0]):
        basis[rank, j] = v[j]
    pivots[rank] = c
    return rank + 1


@njit(cache=True)
def _matmul(A, B, zech, n):
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for i in range(A.shape[0]):
        for t in range(A.shape[1]):
            a = A[i, t]
            if a == 0:
                continue
            for j in range(B.shape[1]):
                b = B[t, j]
                if b != 0:
                    out[i, j] = _add(out[i, j], _mul(a, b, n), zech, n)
    return out


def matmul(A, B, zech, n):
    return _matmul(np.ascontiguousarray(A, dtype=np.int64),
                   np.ascontiguousarray(B, dtype=np.int64), zech, n)


@njit(cache=True)
def _canon(M, add, mul, neg, inv):
    nb, d, _ = M.shape
    piv = np.empty(d, dtype=np.int64)
    for b in range(nb):
        for j in range(d):
            for i in range(j):
                c = M[b, piv[i], j]
                if c != 0:
                    f = neg[c]
                    for r in range(d):
                        M[b, r, j] = add[M[b, r, j], mul[f, M[b, r, i]]]
            r = d - 1
            while r >= 0 and M[b, r, j] == 0:
                r -= 1
            if r < 0:
                return False
            piv[j] = r
            s = inv[M[b, r, j]]
            for t in range(d):
                M[b, t, j] = mul[s, M[b, t, j]]
    return True


def canon_cosets(mats, add, mul, neg, inv):
    M = np.array(mats, dtype=np.int64, copy=True)
    if not _canon(M, add, mul, neg, inv):
        raise ValueError("singular matrix in coset canonicalisation")
    return M
