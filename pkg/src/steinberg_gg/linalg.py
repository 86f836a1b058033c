"""Exact linear algebra over a coefficient field.

Vectors are 1-d int64 arrays of Zech codes.  Subspaces are stored by their
reduced row-echelon basis (pivots chosen left to right, pivot entries 1,
pivot columns cleared), which is unique, so two subspaces are equal exactly
when their bases are.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .fields import CoeffField

Action = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    rows: np.ndarray
    pivots: np.ndarray
    field: CoeffField

    @property
    def dim(self) -> int:
        return int(self.rows.shape[0])

    @property
    def ambient(self) -> int:
        return int(self.rows.shape[1])

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return self.rows.shape == other.rows.shape and bool(np.array_equal(self.rows, other.rows))

    __hash__ = None


def _kargs(cf: CoeffField):
    return cf.zech, cf.unit_order, cf.minus_one


def _stack(vectors: Iterable[np.ndarray], N: int | None) -> np.ndarray:
    vs = [np.asarray(v, dtype=np.int64) for v in vectors]
    lengths = {v.shape[0] for v in vs}
    if len(lengths) > 1:
        raise ValueError(f"vectors of mixed lengths {sorted(lengths)}")
    if not vs:
        if N is None:
            raise ValueError("ambient dimension needed for an empty vector list")
        return np.zeros((0, N), dtype=np.int64)
    if N is not None and lengths != {N}:
        raise ValueError(f"expected vectors of length {N}")
    return np.vstack(vs)


def echelonize(vectors, cf: CoeffField, N: int | None = None) -> SubspaceBasis:
    """Canonical reduced echelon basis of the span of ``vectors``.

    ``vectors`` may be a 2-d array or any iterable of equal-length 1-d arrays.
    """
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        mat = vectors.astype(np.int64, copy=False)
        if N is not None and mat.shape[1] != N:
            raise ValueError(f"expected vectors of length {N}")
    else:
        mat = _stack(vectors, N)
    if mat.shape[0] == 0:
        return SubspaceBasis(mat.copy(), np.zeros(0, dtype=np.int64), cf)
    A, piv = kernels.rref(mat, *_kargs(cf))
    r = len(piv)
    return SubspaceBasis(np.ascontiguousarray(A[:r]), piv, cf)


def rank(mat, cf: CoeffField) -> int:
    mat = np.asarray(mat, dtype=np.int64)
    if mat.size == 0:
        return 0
    _, piv = kernels.rref(mat, *_kargs(cf))
    return len(piv)


def reduce(v: np.ndarray, b: SubspaceBasis) -> np.ndarray:
    return kernels.reduce_vec(b.rows, b.pivots, b.dim, v, *_kargs(b.field))


def member(v: np.ndarray, b: SubspaceBasis) -> bool:
    v = np.asarray(v, dtype=np.int64)
    if v.shape[0] != b.ambient:
        raise ValueError("vector and subspace live in different spaces")
    return not reduce(v, b).any()


def contains(big: SubspaceBasis, small: SubspaceBasis) -> bool:
    return all(member(r, big) for r in small.rows)


def full_space(N: int, cf: CoeffField) -> SubspaceBasis:
    return SubspaceBasis(np.eye(N, dtype=np.int64), np.arange(N, dtype=np.int64), cf)


def zero_space(N: int, cf: CoeffField) -> SubspaceBasis:
    return SubspaceBasis(np.zeros((0, N), dtype=np.int64), np.zeros(0, dtype=np.int64), cf)


def spin(
    seeds: Sequence[np.ndarray],
    actions: Sequence[Action],
    cf: CoeffField,
    N: int | None = None,
) -> SubspaceBasis:
    """Smallest subspace containing ``seeds`` and stable under every action.

    Work proceeds seed by seed; each newly found basis vector is queued and
    later pushed through the actions in their given order.  A final pass
    confirms closure.
    """
    seeds = [np.asarray(s, dtype=np.int64) for s in seeds]
    if N is None:
        if not seeds:
            raise ValueError("ambient dimension needed without seeds")
        N = seeds[0].shape[0]
    basis = np.zeros((N + 1, N), dtype=np.int64)
    pivots = np.zeros(N + 1, dtype=np.int64)
    r = 0
    kargs = _kargs(cf)
    queue: deque[np.ndarray] = deque()

    def push(v: np.ndarray) -> None:
        nonlocal r
        if r == N:
            return
        w = np.array(v, dtype=np.int64, copy=True)
        if w.shape[0] != N:
            raise ValueError("action changed the vector length")
        r_new = kernels.reduce_insert(basis, pivots, r, w, *kargs)
        if r_new > r:
            r = r_new
            queue.append(w)

    for s in seeds:
        push(s)
        while queue and r < N:
            v = queue.popleft()
            for g in actions:
                push(g(v))
    result = echelonize(basis[:r], cf)
    for row in result.rows:
        for g in actions:
            if not member(g(row), result):
                raise AssertionError("spin result not closed under the actions")
    return result


def pairing_matrix(a: SubspaceBasis, b: SubspaceBasis) -> np.ndarray:
    """Matrix of the standard dot product between the rows of ``a`` and ``b``."""
    cf = a.field
    if a.ambient != b.ambient:
        raise ValueError("subspaces live in different spaces")
    return kernels.matmul(a.rows, np.ascontiguousarray(b.rows.T), cf.zech, cf.unit_order)


def pairing_rank(a: SubspaceBasis, b: SubspaceBasis, gram: np.ndarray | None = None) -> int:
    """Rank of the pairing matrix between bases of ``a`` and ``b``.

    Without ``gram`` the standard (coset-orthonormal) form is used; otherwise
    ``gram`` is the form's matrix on the ambient basis.
    """
    cf = a.field
    if a.dim == 0 or b.dim == 0:
        return 0
    if gram is None:
        M = pairing_matrix(a, b)
    else:
        M = kernels.matmul(
            kernels.matmul(a.rows, gram, cf.zech, cf.unit_order),
            np.ascontiguousarray(b.rows.T), cf.zech, cf.unit_order,
        )
    return rank(M, cf)


def perp(b: SubspaceBasis, N: int | None = None) -> SubspaceBasis:
    """Orthogonal complement under the standard form: the null space of ``b``."""
    cf = b.field
    N = b.ambient if N is None else N
    if b.ambient != N:
        raise ValueError("ambient dimension mismatch")
    free = np.setdiff1d(np.arange(N), b.pivots)
    out = np.zeros((free.size, N), dtype=np.int64)
    for k, c in enumerate(free):
        out[k, c] = 1
        # x_pivot = -row[c] for each basis row
        out[k, b.pivots] = cf.neg(b.rows[:, c])
    return echelonize(out, cf, N)


def intersect(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """a ∩ b, computed as (a^perp + b^perp)^perp."""
    pa, pb = perp(a), perp(b)
    both = np.vstack([pa.rows, pb.rows])
    return perp(echelonize(both, a.field, a.ambient))


def span_sum(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    return echelonize(np.vstack([a.rows, b.rows]), a.field, a.ambient)


def perm_action(perm: np.ndarray) -> Action:
    """Linear map sending basis vector i to basis vector perm[i]."""
    perm = np.asarray(perm, dtype=np.int64)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(perm.size)

    def act(v: np.ndarray) -> np.ndarray:
        return v[inv]

    return act
