"""Pure-numpy kernels.

Coefficient-field arrays hold Zech-log codes (see ``fields``); every kernel
takes the Zech table ``zech``, the unit-group order ``n`` and the code
``mone`` of -1.  Structure-field kernels take the F_q lookup tables.
"""

from __future__ import annotations

import numpy as np


def kmul(a, b, n):
    r = (a + b - 2) % n + 1
    return np.where((a == 0) | (b == 0), 0, r)


def kadd(a, b, zech, n):
    z = zech[(b - a) % n]
    s = np.where(z < 0, 0, (a - 1 + z) % n + 1)
    return np.where(a == 0, b, np.where(b == 0, a, s))


def kinv(a, n):
    return (-(a - 1)) % n + 1


def rref(mat, zech, n, mone):
    A = np.array(mat, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        sel = r + nz[0]
        if sel != r:
            A[[r, sel]] = A[[sel, r]]
        A[r, c:] = kmul(A[r, c:], kinv(A[r, c], n), n)
        f = kmul(A[:, c], mone, n)
        f[r] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            A[hit, c:] = kadd(A[hit, c:], kmul(f[hit, None], A[r, c:][None, :], n), zech, n)
        pivots.append(c)
        r += 1
    return A, np.array(pivots, dtype=np.int64)


def reduce_vec(basis, pivots, rank, v, zech, n, mone):
    """Reduce ``v`` against the first ``rank`` rows; returns a new array.

    The rows need not be sorted, but each row must be 0 at every other row's
    pivot and 1 at its own.
    """
    v = np.array(v, dtype=np.int64, copy=True)
    for i in range(rank):
        c = v[pivots[i]]
        if c:
            v = kadd(v, kmul(kmul(c, mone, n), basis[i], n), zech, n)
    return v


def reduce_insert(basis, pivots, rank, v, zech, n, mone):
    """Add ``v`` to an incremental reduced basis held in ``basis``/``pivots``.

    Returns the new rank; ``v`` is overwritten with its reduced, normalised
    form (all zero when it was already in the span).
    """
    w = reduce_vec(basis, pivots, rank, v, zech, n, mone)
    v[:] = w
    nz = np.flatnonzero(w)
    if nz.size == 0:
        return rank
    c = nz[0]
    w = kmul(w, kinv(w[c], n), n)
    v[:] = w
    if rank:
        f = kmul(basis[:rank, c], mone, n)
        hit = np.flatnonzero(f)
        if hit.size:
            basis[hit] = kadd(basis[hit], kmul(f[hit, None], w[None, :], n), zech, n)
    basis[rank] = w
    pivots[rank] = c
    return rank + 1


def matmul(A, B, zech, n):
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for t in range(A.shape[1]):
        out = kadd(out, kmul(A[:, t, None], B[t, None, :], n), zech, n)
    return out


def canon_cosets(mats, add, mul, neg, inv):
    """Column-reduced representatives of the cosets gB for a batch (b, d, d).

    Columns are processed left to right; column j is cleared at the pivot
    rows of earlier columns, its pivot is its lowest nonzero row, and that
    entry is scaled to 1.
    """
    M = np.array(mats, dtype=np.int64, copy=True)
    nb, d, _ = M.shape
    idx = np.arange(nb)
    piv = np.zeros((nb, d), dtype=np.int64)
    for j in range(d):
        for i in range(j):
            c = M[idx, piv[:, i], j]
            M[:, :, j] = add[M[:, :, j], mul[neg[c][:, None], M[:, :, i]]]
        col = M[:, :, j]
        nzr = col[:, ::-1] != 0
        if not nzr.any(axis=1).all():
            raise ValueError("singular matrix in coset canonicalisation")
        r = d - 1 - np.argmax(nzr, axis=1)
        piv[:, j] = r
        s = inv[col[idx, r]]
        M[:, :, j] = mul[s[:, None], col]
    return M
