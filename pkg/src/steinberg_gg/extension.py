"""A quadratic extension k(t) of a coefficient field, for field-change checks.

Elements are pairs of ``k`` codes ``(a, b)`` meaning ``a + b t`` with
``t^2 = alpha t + beta`` irreducible over ``k``.  The last array axis holds
the pair.  This is only used to recompute dimensions over a field of degree
2m when ``ell^(2m)`` is too large for a Zech table, so the code favours
clarity over speed.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .fields import CoeffField


def _irreducible_quadratic(cf: CoeffField) -> tuple[int, int]:
    """Smallest (alpha, beta) with x^2 - alpha x - beta rootless in k."""
    x = cf.elements()
    x2 = cf.mul(x, x)
    for alpha in (0, 1):
        ax = cf.mul(alpha, x)
        for beta in range(1, cf.order):
            vals = cf.sub(cf.sub(x2, ax), beta)
            if np.all(vals != 0):
                return alpha, beta
    raise AssertionError("no irreducible quadratic found")  # pragma: no cover


class QuadraticExtension:
    def __init__(self, cf: CoeffField):
        self.base = cf
        self.alpha, self.beta = _irreducible_quadratic(cf)

    def __repr__(self) -> str:
        return f"QuadraticExtension(ell={self.base.ell}, degree={self.degree})"

    @property
    def degree(self) -> int:
        return 2 * self.base.m

    @property
    def t(self) -> np.ndarray:
        return np.array([0, 1], dtype=np.int64)

    def embed(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return np.stack([a, np.zeros_like(a)], axis=-1)

    def is_zero(self, x) -> np.ndarray:
        return (x[..., 0] == 0) & (x[..., 1] == 0)

    def add(self, x, y) -> np.ndarray:
        k = self.base
        return np.stack([k.add(x[..., 0], y[..., 0]), k.add(x[..., 1], y[..., 1])], axis=-1)

    def neg(self, x) -> np.ndarray:
        return np.stack([self.base.neg(x[..., 0]), self.base.neg(x[..., 1])], axis=-1)

    def mul(self, x, y) -> np.ndarray:
        k = self.base
        a, b, c, d = x[..., 0], x[..., 1], y[..., 0], y[..., 1]
        bd = k.mul(b, d)
        re = k.add(k.mul(a, c), k.mul(bd, self.beta))
        im = k.add(k.add(k.mul(a, d), k.mul(b, c)), k.mul(bd, self.alpha))
        return np.stack([re, im], axis=-1)

    def inv(self, x) -> np.ndarray:
        # conj(a + b t) = (a + alpha b) - b t, and x * conj(x) lies in k
        k = self.base
        a, b = x[..., 0], x[..., 1]
        ca = k.add(a, k.mul(self.alpha, b))
        norm = k.sub(k.add(k.mul(a, a), k.mul(self.alpha, k.mul(a, b))),
                     k.mul(self.beta, k.mul(b, b)))
        ninv = k.inv(norm)
        return np.stack([k.mul(ca, ninv), k.mul(k.neg(b), ninv)], axis=-1)

    def dot(self, A, B) -> np.ndarray:
        """Matrix of pairings between the rows of A (r, N, 2) and B (s, N, 2)."""
        prods = self.mul(A[:, None, :, :], B[None, :, :, :])
        out = prods[:, :, 0]
        for j in range(1, prods.shape[2]):
            out = self.add(out, prods[:, :, j])
        return out

    # elimination

    def rref(self, A) -> tuple[np.ndarray, list[int]]:
        A = np.array(A, dtype=np.int64, copy=True)
        rows, cols = A.shape[:2]
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(~self.is_zero(A[r:, c]))
            if nz.size == 0:
                continue
            sel = r + nz[0]
            if sel != r:
                A[[r, sel]] = A[[sel, r]]
            A[r] = self.mul(A[r], self.inv(A[r, c])[None])
            f = self.neg(A[:, c])
            f[r] = 0
            A = self.add(A, self.mul(f[:, None], A[r][None]))
            pivots.append(c)
            r += 1
        return A[:r], pivots

    def rank(self, A) -> int:
        A = np.asarray(A, dtype=np.int64)
        if A.shape[0] == 0:
            return 0
        return len(self.rref(A)[1])

    def spin(self, seeds: Sequence[np.ndarray], actions: Sequence[Callable]) -> np.ndarray:
        """Echelon basis (r, N, 2) of the smallest action-stable span of ``seeds``."""
        N = seeds[0].shape[0]
        basis = np.zeros((0, N, 2), dtype=np.int64)
        pivots: list[int] = []
        todo = list(seeds)
        while todo:
            v = todo.pop(0)
            for row, p in zip(basis, pivots):
                v = self.add(v, self.mul(self.neg(v[p])[None], row))
            nz = np.flatnonzero(~self.is_zero(v))
            if nz.size == 0:
                continue
            v = self.mul(v, self.inv(v[nz[0]])[None])
            basis = np.concatenate([basis, v[None]])
            pivots.append(int(nz[0]))
            todo.extend(g(v) for g in actions)
        return self.rref(basis)[0] if len(basis) else basis


def extension_dims(inst, sigma, twist=None) -> tuple[int, int]:
    """(dim S_sigma, dim D_sigma) recomputed over the quadratic extension of k.

    The seeds are scaled by ``twist`` (default ``1 + t``), an element outside
    k, so the elimination really runs in the larger field.
    """
    from .steinberg import sigma_star

    E = QuadraticExtension(inst.cf)
    twist = np.array([1, 1], dtype=np.int64) if twist is None else np.asarray(twist)
    acts = [lambda v, p=p: v[np.argsort(p)] for p in inst.module.generator_perms]

    def span(s):
        seed = E.mul(E.embed(inst.seed(s)), twist[None])
        return E.spin([seed], acts)

    S, Ss = span(sigma), span(sigma_star(sigma))
    if len(S) == 0 or len(Ss) == 0:
        return len(S), 0
    return len(S), E.rank(E.dot(S, Ss))
