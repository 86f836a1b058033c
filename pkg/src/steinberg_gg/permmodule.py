"""The permutation module k[G/B] on the coset basis.

A vector is a length-N array of coefficient codes, one per coset label of
the provider.  Group elements act by permuting labels; the invariant form is
the one making the coset basis orthonormal.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .bnpair import GLProvider, WeylElem
from .fields import CoeffField
from .linalg import SubspaceBasis, echelonize, perm_action


class PermModule:
    def __init__(self, provider: GLProvider, cf: CoeffField):
        if cf.p != provider.F.p:
            raise ValueError(
                f"coefficient field built for p = {cf.p}, group has p = {provider.F.p}"
            )
        if cf.from_int(provider.U_order) == 0:
            raise ValueError("|U| is zero in the coefficient field")
        self.provider = provider
        self.cf = cf
        self.N = provider.N
        self.generator_perms = provider.generator_perms
        self.actions = [perm_action(p) for p in self.generator_perms]

    def __repr__(self) -> str:
        return f"PermModule({self.provider!r}, ell={self.cf.ell}, m={self.cf.m})"

    @cached_property
    def U_perms(self) -> np.ndarray:
        """Coset permutation of every u in the provider's U enumeration."""
        return self.provider.action_perms(self.provider.U)

    @cached_property
    def weyl_cosets(self) -> np.ndarray:
        return np.array([self.provider.coset_canonical(w.rep).id for w in self.provider.weyl])

    def zero(self) -> np.ndarray:
        return np.zeros(self.N, dtype=np.int64)

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.zero()
        v[i] = 1
        return v

    def coset_vector(self, g) -> np.ndarray:
        return self.basis_vector(self.provider.coset_canonical(g).id)

    def _check(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64)
        if v.shape != (self.N,):
            raise ValueError(f"expected a vector of length {self.N}, got shape {v.shape}")
        return v

    @staticmethod
    def permute(perm: np.ndarray, v: np.ndarray) -> np.ndarray:
        out = np.empty_like(v)
        out[perm] = v
        return out

    def act(self, g, v) -> np.ndarray:
        v = self._check(v)
        return self.permute(self.provider.action_perm(g), v)

    def form(self, v1, v2) -> int:
        v1, v2 = self._check(v1), self._check(v2)
        return int(self.cf.sum(self.cf.mul(v1, v2)))

    def scale(self, c, v) -> np.ndarray:
        return self.cf.mul(c, v)

    # distinguished vectors

    @cached_property
    def steinberg_e(self) -> np.ndarray:
        e = self.zero()
        mone = self.cf.minus_one
        for w, cid in zip(self.provider.weyl, self.weyl_cosets):
            e[cid] = self.cf.add(e[cid], mone if w.length % 2 else 1)
        e.setflags(write=False)
        return e

    @cached_property
    def st_vectors(self) -> np.ndarray:
        """u*e for u in the U enumeration, one row each."""
        e = self.steinberg_e
        return np.array([self.permute(p, e) for p in self.U_perms])

    @cached_property
    def st_basis(self) -> SubspaceBasis:
        return echelonize(self.st_vectors, self.cf, self.N)

    def gg_apply(self, sigma, v) -> np.ndarray:
        """u_sigma * v = sum over u in U of sigma(u) * (u . v)."""
        v = self._check(v)
        vals = np.asarray(sigma.values, dtype=np.int64)
        cf = self.cf
        contrib = np.zeros((len(vals), self.N), dtype=np.int64)
        rows = np.arange(len(vals))[:, None]
        contrib[rows, self.U_perms] = cf.mul(vals[:, None], v[None, :])
        return cf.sum(contrib, axis=0)

    def gg_applied(self, sigma, w: WeylElem) -> np.ndarray:
        """u_sigma n_w b as a vector."""
        cid = self.provider.coset_canonical(w.rep).id
        return self.gg_apply(sigma, self.basis_vector(cid))

    def gg_operator(self, sigma) -> np.ndarray:
        """Matrix whose row i is u_sigma applied to coset vector i."""
        vals = np.asarray(sigma.values, dtype=np.int64)
        cf = self.cf
        M = np.zeros((self.N, self.N), dtype=np.int64)
        ar = np.arange(self.N)
        for val, perm in zip(vals, self.U_perms):
            M[ar, perm] = cf.add(M[ar, perm], val)
        return M

    def gg_left_image(self, sigma) -> SubspaceBasis:
        """The subspace u_sigma * k[G/B]."""
        return echelonize(self.gg_operator(sigma), self.cf, self.N)
