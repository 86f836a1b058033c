"""Split BN-pair data for GL_n(q) and SL_2(q).

Matrices are int64 numpy arrays of F_q codes.  Conventions:

* ``B`` upper triangular, ``U`` upper unitriangular, ``H`` diagonal.
* a Weyl element is a permutation ``w`` of ``0..n-1``; its 0/1 matrix has a 1
  at ``(w[j], j)``, so conjugation gives ``(n_w^-1 x n_w)[i, j] = x[w[i], w[j]]``.
* ``U_w = U ∩ n_w^-1 V n_w`` is supported on positions ``(i, j)``, ``i < j``,
  ``w[i] > w[j]``.
* the coset ``gB`` is labelled by its column-reduced representative: column
  ``j`` is zero at the pivot rows of earlier columns, its pivot is its lowest
  nonzero entry, which is 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import gcd, prod
from typing import NamedTuple

import numpy as np

from . import kernels
from .fields import FieldDesc, make_structure_field


class GroupError(ValueError):
    """Invalid group parameters or an element outside the group."""


@dataclass(frozen=True, eq=False)
class WeylElem:
    perm: tuple[int, ...]
    length: int
    rep: np.ndarray

    def __repr__(self) -> str:
        return f"WeylElem({self.perm}, l={self.length})"


class CosetIndex(NamedTuple):
    id: int
    canonical_rep: np.ndarray


def inversions(perm) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])


def perm_matrix(perm) -> np.ndarray:
    n = len(perm)
    m = np.zeros((n, n), dtype=np.int64)
    m[list(perm), range(n)] = 1
    return m


# -- matrix arithmetic over F_q (batched on leading axes) ---------------------


def matmul(F: FieldDesc, A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    prods = F.mul_table[A[..., :, :, None], B[..., None, :, :]]
    acc = prods[..., :, 0, :]
    for t in range(1, A.shape[-1]):
        acc = F.add_table[acc, prods[..., :, t, :]]
    return acc


def matinv(F: FieldDesc, A) -> np.ndarray:
    A = np.array(A, dtype=np.int64)
    n = A.shape[0]
    M = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        nz = np.flatnonzero(M[c:, c])
        if nz.size == 0:
            raise GroupError("singular matrix")
        r = c + nz[0]
        M[[c, r]] = M[[r, c]]
        M[c] = F.mul_table[F.inv_table[M[c, c]], M[c]]
        for i in range(n):
            if i != c and M[i, c]:
                M[i] = F.add_table[M[i], F.mul_table[F.neg_table[M[i, c]], M[c]]]
    return M[:, n:].copy()


def det(F: FieldDesc, A) -> int:
    A = np.array(A, dtype=np.int64)
    n = A.shape[0]
    d = 1
    for c in range(n):
        nz = np.flatnonzero(A[c:, c])
        if nz.size == 0:
            return 0
        r = c + nz[0]
        if r != c:
            A[[c, r]] = A[[r, c]]
            d = int(F.neg_table[d])
        piv = int(A[c, c])
        d = int(F.mul_table[d, piv])
        s = F.inv_table[piv]
        for i in range(c + 1, n):
            if A[i, c]:
                f = F.neg_table[F.mul_table[A[i, c], s]]
                A[i] = F.add_table[A[i], F.mul_table[f, A[c]]]
    return d


def scalar_matrix(n: int, diag) -> np.ndarray:
    m = np.zeros((n, n), dtype=np.int64)
    m[range(n), range(n)] = diag
    return m


# -- providers ----------------------------------------------------------------


class GLProvider:
    """GL_n(q) with its standard split BN-pair."""

    group = "gl"

    def __init__(self, n: int, F: FieldDesc):
        if n < 2:
            raise GroupError(f"n must be at least 2, got {n}")
        self.n = n
        self.F = F
        self.q = F.q
        if self.q ** (n * n) >= 2**62:
            raise GroupError(f"GL_{n}({self.q}) is too large for coset keys")
        self._key_weights = self.q ** np.arange(n * n, dtype=np.int64)
        self._build_cosets()
        self._check_generators()

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, q={self.q})"

    # Weyl group

    @cached_property
    def weyl(self) -> list[WeylElem]:
        perms = sorted(itertools.permutations(range(self.n)), key=lambda w: (inversions(w), w))
        out = [WeylElem(w, inversions(w), self.weyl_rep(w)) for w in perms]
        for e in out:
            e.rep.setflags(write=False)
        return out

    def enumerate_weyl(self) -> list[WeylElem]:
        return list(self.weyl)

    def weyl_rep(self, perm) -> np.ndarray:
        return perm_matrix(perm)

    @property
    def w0(self) -> WeylElem:
        return self.weyl[-1]

    def weyl_elem(self, perm) -> WeylElem:
        perm = tuple(perm)
        for w in self.weyl:
            if w.perm == perm:
                return w
        raise GroupError(f"{perm} is not a permutation of 0..{self.n - 1}")

    # subgroups

    @cached_property
    def upper_positions(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n)]

    @cached_property
    def U(self) -> np.ndarray:
        """All of U, row-major on strict-upper entries, first entry slowest."""
        pos = self.upper_positions
        rows, cols = zip(*pos)
        vals = np.array(list(itertools.product(range(self.q), repeat=len(pos))), dtype=np.int64)
        out = np.broadcast_to(np.eye(self.n, dtype=np.int64), (len(vals), self.n, self.n)).copy()
        out[:, rows, cols] = vals
        out.setflags(write=False)
        return out

    def enumerate_U(self) -> np.ndarray:
        return self.U

    @cached_property
    def H(self) -> np.ndarray:
        diags = list(itertools.product(self.F.units(), repeat=self.n))
        out = np.array([scalar_matrix(self.n, d) for d in diags], dtype=np.int64)
        out.setflags(write=False)
        return out

    def enumerate_H(self) -> np.ndarray:
        return self.H

    @property
    def U_order(self) -> int:
        return self.q ** (self.n * (self.n - 1) // 2)

    @property
    def B_order(self) -> int:
        return self.U_order * (self.q - 1) ** self.n

    @property
    def order(self) -> int:
        q, n = self.q, self.n
        return q ** (n * (n - 1) // 2) * prod(q**i - 1 for i in range(1, n + 1))

    @property
    def center_order(self) -> int:
        return self.q - 1

    @property
    def index_GB(self) -> int:
        q = self.q
        return prod((q**i - 1) // (q - 1) for i in range(1, self.n + 1))

    def is_upper(self, g) -> bool:
        g = np.asarray(g)
        return not np.any(np.tril(g, -1)) and bool(np.all(np.diagonal(g) != 0))

    def in_B(self, g) -> bool:
        return self.is_upper(g)

    def in_U(self, g) -> bool:
        g = np.asarray(g)
        return not np.any(np.tril(g, -1)) and bool(np.all(np.diagonal(g) == 1))

    def in_H(self, g) -> bool:
        g = np.asarray(g)
        return not np.any(g - np.diag(np.diagonal(g))) and bool(np.all(np.diagonal(g) != 0))

    def in_group(self, g) -> bool:
        return det(self.F, g) != 0

    def U_w_contains(self, u, w: WeylElem) -> bool:
        if not self.in_U(u):
            return False
        p = w.perm
        return all(u[i, j] == 0 or p[i] > p[j] for i, j in self.upper_positions)

    def U_w(self, w: WeylElem) -> np.ndarray:
        keep = [k for k, u in enumerate(self.U) if self.U_w_contains(u, w)]
        return self.U[keep]

    # group operations

    def mul(self, a, b) -> np.ndarray:
        return matmul(self.F, a, b)

    def inv(self, a) -> np.ndarray:
        return matinv(self.F, a)

    def identity(self) -> np.ndarray:
        return np.eye(self.n, dtype=np.int64)

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        while True:
            g = rng.integers(0, self.q, size=(self.n, self.n))
            if det(self.F, g):
                return g.astype(np.int64)

    # cosets G/B

    def _key(self, mats: np.ndarray) -> np.ndarray:
        return mats.reshape(mats.shape[0], -1) @ self._key_weights

    def _build_cosets(self) -> None:
        reps = []
        for w in self.weyl:
            p = w.perm
            base = perm_matrix(p)
            taken: set[int] = set()
            free = []
            for j in range(self.n):
                free += [(r, j) for r in range(p[j]) if r not in taken]
                taken.add(p[j])
            free.sort()
            for vals in itertools.product(range(self.q), repeat=len(free)):
                c = base.copy()
                for (r, j), v in zip(free, vals):
                    c[r, j] = v
                reps.append(c)
        reps = np.array(reps, dtype=np.int64)
        if len(reps) != self.index_GB:
            raise AssertionError("coset enumeration has the wrong size")
        keys = self._key(reps)
        order = np.argsort(keys)
        self._sorted_keys = keys[order]
        self._sorted_ids = order
        reps.setflags(write=False)
        self.coset_reps = reps
        self.N = len(reps)

    def canonicalize(self, mats) -> np.ndarray:
        mats = np.asarray(mats, dtype=np.int64)
        single = mats.ndim == 2
        batch = mats[None] if single else mats
        F = self.F
        out = kernels.canon_cosets(batch, F.add_table, F.mul_table, F.neg_table, F.inv_table)
        return out[0] if single else out

    def coset_ids(self, mats) -> np.ndarray:
        """Coset labels of a batch of invertible matrices, shape (b, n, n)."""
        canon = self.canonicalize(np.asarray(mats, dtype=np.int64).reshape(-1, self.n, self.n))
        keys = self._key(canon)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, self.N - 1)
        if np.any(self._sorted_keys[pos] != keys):
            raise GroupError("matrix outside the group (coset not found)")
        return self._sorted_ids[pos]

    def coset_canonical(self, g) -> CosetIndex:
        g = np.asarray(g, dtype=np.int64)
        if det(self.F, g) == 0:
            raise GroupError("singular matrix")
        cid = int(self.coset_ids(g[None])[0])
        return CosetIndex(cid, self.coset_reps[cid])

    @cached_property
    def base_coset(self) -> int:
        return self.coset_canonical(self.identity()).id

    def action_perm(self, g) -> np.ndarray:
        """perm[i] = label of g * (coset i)."""
        return self.coset_ids(self.mul(g, self.coset_reps))

    def action_perms(self, gs) -> np.ndarray:
        gs = np.asarray(gs, dtype=np.int64)
        prods = self.mul(gs[:, None], self.coset_reps[None])
        return self.coset_ids(prods.reshape(-1, self.n, self.n)).reshape(len(gs), self.N)

    # Bruhat decomposition

    def bruhat_batch(self, gs):
        """Sharp Bruhat factors g = b * n_w * u for a batch of matrices.

        Returns (b, perms, u) with perms an int array of shape (batch, n).
        ``g`` is row reduced from the bottom by left multiplication with
        upper triangular matrices until it has the form n_w u, u in U_w;
        ``b`` accumulates the inverse operations.
        """
        F = self.F
        add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
        R = np.array(gs, dtype=np.int64, copy=True)
        nb, d, _ = R.shape
        idx = np.arange(nb)
        b = np.broadcast_to(np.eye(d, dtype=np.int64), R.shape).copy()
        rowof = np.full((nb, d), -1, dtype=np.int64)
        pivcol = np.zeros((nb, d), dtype=np.int64)
        for i in range(d - 1, -1, -1):
            for c in range(d):
                ip = rowof[:, c]
                t = np.where(ip > i, R[idx, i, c], 0)
                src = np.maximum(ip, 0)
                R[:, i, :] = add[R[:, i, :], mul[neg[t][:, None], R[idx, src, :]]]
                b[idx, :, src] = add[b[idx, :, src], mul[t[:, None], b[:, :, i]]]
            row = R[:, i, :]
            nzr = row != 0
            if not nzr.any(axis=1).all():
                raise GroupError("singular matrix in Bruhat decomposition")
            c = np.argmax(nzr, axis=1)
            s = row[idx, c]
            R[:, i, :] = mul[inv[s][:, None], row]
            b[:, :, i] = mul[s[:, None], b[:, :, i]]
            rowof[idx, c] = i
            pivcol[:, i] = c
        perms = np.empty((nb, d), dtype=np.int64)
        perms[idx[:, None], pivcol] = np.arange(d)[None, :]
        u = R[idx[:, None], perms, :]
        b = self._adjust_b(b, perms)
        return b, perms, u

    def _adjust_b(self, b, perms):
        return b

    def bruhat_decompose(self, g):
        g = np.asarray(g, dtype=np.int64)
        if det(self.F, g) == 0:
            raise GroupError("singular matrix")
        b, perms, u = self.bruhat_batch(g[None])
        return b[0], self.weyl_elem(perms[0]), u[0]

    # generators

    def generators(self) -> list[np.ndarray]:
        n = self.n
        cycle = perm_matrix([(j + 1) % n for j in range(n)])
        trans = self.identity()
        trans[0, 1] = 1
        gens = [cycle, trans]
        if self.q > 2:
            gens.append(scalar_matrix(n, [self.F.primitive] + [1] * (n - 1)))
        return gens

    def _orbit_size(self, perms: np.ndarray) -> int:
        seen = {self.base_coset}
        frontier = [self.base_coset]
        while frontier:
            nxt = []
            for c in frontier:
                for p in perms:
                    d = int(p[c])
                    if d not in seen:
                        seen.add(d)
                        nxt.append(d)
            frontier = nxt
        return len(seen)

    def _check_generators(self) -> None:
        gens = self.generators()
        self.generator_perms = self.action_perms(np.array(gens))
        if self._orbit_size(self.generator_perms) != self.N:
            raise AssertionError("generators do not act transitively on G/B")
        self._check_determinants(gens)

    def _check_determinants(self, gens) -> None:
        F = self.F
        dets = {det(F, g) for g in gens}
        reached = {1}
        frontier = [1]
        while frontier:
            nxt = []
            for x in frontier:
                for d in dets:
                    y = int(F.mul_table[x, d])
                    if y not in reached:
                        reached.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(reached) != self.q - 1:
            raise AssertionError("generator determinants do not fill F_q^x")

    def enumerate_group(self, limit: int = 100_000) -> np.ndarray:
        """All elements, by closure from the generators (small groups only)."""
        if self.order > limit:
            raise GroupError(f"group of order {self.order} is too large to enumerate")
        gens = np.array(self.generators())
        w = self._key_weights
        start = self.identity()
        seen = {int(start.reshape(-1) @ w): start}
        frontier = [start]
        while frontier:
            batch = np.array(frontier)
            prods = self.mul(gens[None], batch[:, None]).reshape(-1, self.n, self.n)
            keys = prods.reshape(len(prods), -1) @ w
            frontier = []
            for k, m in zip(keys.tolist(), prods):
                if k not in seen:
                    seen[k] = m
                    frontier.append(m)
        return np.array([seen[k] for k in sorted(seen)])


class SL2Provider(GLProvider):
    """SL_2(q): determinant-one B and H, Weyl representative [[0, -1], [1, 0]]."""

    group = "sl2"

    def __init__(self, F: FieldDesc):
        super().__init__(2, F)

    def weyl_rep(self, perm) -> np.ndarray:
        if tuple(perm) == (0, 1):
            return np.eye(2, dtype=np.int64)
        m = np.zeros((2, 2), dtype=np.int64)
        m[0, 1] = self.F.neg(1)
        m[1, 0] = 1
        return m

    @cached_property
    def H(self) -> np.ndarray:
        F = self.F
        out = np.array([scalar_matrix(2, [t, F.inv(t)]) for t in F.units()], dtype=np.int64)
        out.setflags(write=False)
        return out

    @property
    def B_order(self) -> int:
        return self.q * (self.q - 1)

    @property
    def order(self) -> int:
        return self.q * (self.q**2 - 1)

    @property
    def center_order(self) -> int:
        return gcd(2, self.q - 1)

    def in_B(self, g) -> bool:
        return self.is_upper(g) and det(self.F, g) == 1

    def in_H(self, g) -> bool:
        return super().in_H(g) and det(self.F, g) == 1

    def in_group(self, g) -> bool:
        return det(self.F, g) == 1

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        F = self.F
        while True:
            g = super().random_element(rng)
            d = det(F, g)
            g[0] = F.mul_table[F.inv_table[d], g[0]]
            return g

    def _adjust_b(self, b, perms):
        F = self.F
        out = b.copy()
        for k, p in enumerate(perms):
            if tuple(p) != (0, 1):
                # b * n'_w * rep(w)^-1 = b * diag(-1, 1)
                out[k, :, 0] = F.neg_table[b[k, :, 0]]
        return out

    def generators(self) -> list[np.ndarray]:
        F = self.F
        x = np.array([[1, 1], [0, 1]], dtype=np.int64)
        gens = [x, self.weyl_rep((1, 0))]
        g = F.primitive
        if F.mul(g, g) != 1:
            gens.append(scalar_matrix(2, [g, F.inv(g)]))
        return gens

    def _check_determinants(self, gens) -> None:
        if any(det(self.F, g) != 1 for g in gens):
            raise AssertionError("SL_2 generator with determinant != 1")


def _prime_power(q: int) -> tuple[int, int]:
    from sympy import factorint

    if q < 2:
        raise GroupError(f"q must be a prime power >= 2, got {q}")
    fac = factorint(q)
    if len(fac) != 1:
        raise GroupError(f"q must be a prime power, got {q}")
    (p, f), = fac.items()
    return int(p), int(f)


def make_provider(group: str, n: int, q: int) -> GLProvider:
    """Build a provider; ``group`` is 'gl' or 'sl2'."""
    p, f = _prime_power(q)
    F = make_structure_field(p, f)
    if group == "gl":
        return GLProvider(n, F)
    if group == "sl2":
        if n != 2:
            raise GroupError("the sl2 provider only supports n = 2")
        return SL2Provider(F)
    raise GroupError(f"unknown group {group!r}")
