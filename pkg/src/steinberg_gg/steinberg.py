"""Gelfand-Graev submodules of the Steinberg module and their top factor.

For a regular character sigma of U the submodule S_sigma is generated by
u_sigma n_0 b inside k[G/B].  Its distinguished composition factor is
S_sigma / (S_sigma ∩ S_{sigma*}^perp); only the dimension is computed, as
the rank of the pairing between S_sigma and S_{sigma*}.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np

from . import linalg
from .bnpair import GLProvider, GroupError, make_provider
from .extension import extension_dims
from .fields import (
    MAX_COEFF_ORDER,
    CoeffField,
    FieldError,
    additive_character,
    make_coeff_field,
    minimal_extension_degree,
)
from .linalg import SubspaceBasis
from .permmodule import PermModule


class DegenerateCharacterError(ValueError):
    """A character that is trivial on some simple root subgroup."""


class RegularCharacter:
    """sigma(u) = psi(sum_i a_i u[i, i+1]) with psi = zeta^Tr.

    ``params`` are F_q codes.  With ``check=True`` (the default) every
    parameter must be nonzero.
    """

    def __init__(self, provider: GLProvider, cf: CoeffField, params, check: bool = True):
        params = tuple(int(a) for a in params)
        if len(params) != provider.n - 1:
            raise ValueError(f"expected {provider.n - 1} parameters, got {len(params)}")
        if any(not 0 <= a < provider.q for a in params):
            raise ValueError(f"parameters {params} are not F_{provider.q} codes")
        if check and any(a == 0 for a in params):
            raise DegenerateCharacterError(f"parameters {params} give a degenerate character")
        self.provider = provider
        self.cf = cf
        self.params = params
        self.psi = additive_character(cf, provider.F)

    @property
    def is_regular(self) -> bool:
        return all(self.params)

    def __repr__(self) -> str:
        return f"RegularCharacter{self.params}"

    def __eq__(self, other) -> bool:
        return isinstance(other, RegularCharacter) and self.params == other.params

    def __hash__(self) -> int:
        return hash(self.params)

    def _arg(self, us: np.ndarray) -> np.ndarray:
        F = self.provider.F
        x = np.zeros(us.shape[:-2], dtype=np.int64)
        for i, a in enumerate(self.params):
            x = F.add(x, F.mul(a, us[..., i, i + 1]))
        return x

    @cached_property
    def values(self) -> np.ndarray:
        """sigma on the provider's U enumeration."""
        v = self.psi[self._arg(self.provider.U)]
        v.setflags(write=False)
        return v

    def __call__(self, u) -> int:
        u = np.asarray(u, dtype=np.int64)
        if not self.provider.in_U(u):
            raise GroupError("sigma is only defined on U")
        return int(self.psi[self._arg(u)])


def sigma_star(sigma: RegularCharacter) -> RegularCharacter:
    """sigma*(u) = sigma(u)^-1."""
    F = sigma.provider.F
    return RegularCharacter(sigma.provider, sigma.cf, [F.neg(a) for a in sigma.params],
                            check=sigma.is_regular)


def sigma_conj(sigma: RegularCharacter, h) -> RegularCharacter:
    """sigma^h(u) = sigma(h^-1 u h) for a diagonal h in H."""
    P = sigma.provider
    h = np.asarray(h, dtype=np.int64)
    if not P.in_H(h):
        raise GroupError("conjugating element must lie in H")
    F = P.F
    t = np.diagonal(h)
    params = [F.mul(a, F.mul(t[i + 1], F.inv(t[i]))) for i, a in enumerate(sigma.params)]
    return RegularCharacter(P, sigma.cf, params, check=sigma.is_regular)


@dataclass
class FactorReport:
    group: str
    n: int
    q: int
    p: int
    f: int
    ell: int
    m: int
    index_GB: int
    dim_St: int
    sigmas: list[dict[str, Any]]
    checks: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, Any] = field(default_factory=dict)
    elapsed_ms: int = 0

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict[str, Any]:
        return {
            "group": self.group,
            "n": self.n,
            "q": self.q,
            "p": self.p,
            "f": self.f,
            "ell": self.ell,
            "m": self.m,
            "index_GB": self.index_GB,
            "dim_St": self.dim_St,
            "sigmas": self.sigmas,
            "checks": dict(self.checks),
            "witnesses": self.witnesses,
            "elapsed_ms": self.elapsed_ms,
        }


class Instance:
    """A group with split BN-pair together with one coefficient field."""

    def __init__(self, provider: GLProvider, cf: CoeffField):
        self.provider = provider
        self.cf = cf
        self.module = PermModule(provider, cf)
        self._S: dict[tuple[int, ...], SubspaceBasis] = {}

    def __repr__(self) -> str:
        P = self.provider
        return f"Instance({P.group}, n={P.n}, q={P.q}, ell={self.cf.ell}, m={self.cf.m})"

    @property
    def is_gl(self) -> bool:
        return self.provider.group == "gl"

    # characters

    def character(self, params, check: bool = True) -> RegularCharacter:
        return RegularCharacter(self.provider, self.cf, params, check=check)

    @cached_property
    def characters(self) -> list[RegularCharacter]:
        P = self.provider
        return [self.character(a) for a in itertools.product(P.F.units(), repeat=P.n - 1)]

    def regular_characters(self) -> list[RegularCharacter]:
        return list(self.characters)

    def trivial_character(self) -> RegularCharacter:
        return self.character([0] * (self.provider.n - 1), check=False)

    @cached_property
    def orbits(self) -> list[list[RegularCharacter]]:
        """H-orbits of regular characters, in order of first appearance."""
        seen: dict[tuple[int, ...], int] = {}
        out: list[list[RegularCharacter]] = []
        for s in self.characters:
            if s.params in seen:
                continue
            orbit = {sigma_conj(s, h).params for h in self.provider.H}
            k = len(out)
            members = [c for c in self.characters if c.params in orbit]
            for c in members:
                seen[c.params] = k
            out.append(members)
        return out

    def orbit_of(self, sigma: RegularCharacter) -> int:
        for k, orb in enumerate(self.orbits):
            if sigma in orb:
                return k
        raise ValueError(f"{sigma} is not a regular character")

    # modules

    def seed(self, sigma: RegularCharacter) -> np.ndarray:
        return self.module.gg_applied(sigma, self.provider.w0)

    def compute_S_sigma(self, sigma: RegularCharacter) -> SubspaceBasis:
        """kG * u_sigma n_0 b, by spinning under the generators."""
        if not sigma.is_regular:
            raise DegenerateCharacterError(f"{sigma} is degenerate; S_sigma is not defined")
        key = sigma.params
        if key not in self._S:
            self._S[key] = linalg.spin([self.seed(sigma)], self.module.actions, self.cf,
                                       self.module.N)
        return self._S[key]

    def dim_D_sigma(self, sigma: RegularCharacter) -> int:
        return linalg.pairing_rank(self.compute_S_sigma(sigma),
                                   self.compute_S_sigma(sigma_star(sigma)))

    # c_W and the Steinberg Gram matrix

    def _u_index(self, us: np.ndarray) -> np.ndarray:
        P = self.provider
        pos = P.upper_positions
        rows, cols = zip(*pos)
        digits = us[..., rows, cols]
        weights = P.q ** np.arange(len(pos) - 1, -1, -1, dtype=np.int64)
        return digits @ weights

    def cW(self, u) -> int:
        """Number of Weyl elements w with n_w^-1 u n_w in U."""
        P = self.provider
        u = np.asarray(u, dtype=np.int64)
        if not P.in_U(u):
            raise GroupError("c_W is only defined on U")
        return sum(
            1 for w in P.weyl if P.in_U(P.mul(P.mul(P.inv(w.rep), u), w.rep))
        )

    @cached_property
    def cW_values(self) -> np.ndarray:
        P = self.provider
        vals = np.zeros(len(P.U), dtype=np.int64)
        for w in P.weyl:
            conj = P.mul(P.mul(P.inv(w.rep)[None], P.U), w.rep[None])
            low = np.tril(np.ones((P.n, P.n), dtype=bool), -1)
            vals += ~np.any(conj[:, low], axis=1)
        return vals

    @cached_property
    def gram_cW(self) -> np.ndarray:
        """Integer matrix [c_W(u^-1 u')] indexed by the U enumeration."""
        P = self.provider
        U = P.U
        Uinv = np.array([P.inv(u) for u in U])
        prods = P.mul(Uinv[:, None], U[None, :])
        return self.cW_values[self._u_index(prods)]

    def st_gram(self) -> np.ndarray:
        """Gram matrix of {u e} under the invariant form, over k."""
        V = self.module.st_vectors
        return linalg.kernels.matmul(V, np.ascontiguousarray(V.T), self.cf.zech, self.cf.unit_order)

    def gram_rank(self) -> int:
        return linalg.rank(self.cf.from_int(self.gram_cW), self.cf)

    # report

    def dims(self, sigmas=None) -> list[dict[str, Any]]:
        sigmas = self.characters if sigmas is None else sigmas
        return [
            {
                "index": self.characters.index(s),
                "params": list(s.params),
                "orbit": self.orbit_of(s),
                "dim_S": self.compute_S_sigma(s).dim,
                "dim_D": self.dim_D_sigma(s),
            }
            for s in sigmas
        ]

    def report(self, sigmas=None) -> FactorReport:
        P, cf = self.provider, self.cf
        return FactorReport(
            group=P.group, n=P.n, q=P.q, p=P.F.p, f=P.F.f, ell=cf.ell, m=cf.m,
            index_GB=P.N, dim_St=self.module.st_basis.dim, sigmas=self.dims(sigmas),
        )


def build_instance(group: str, n: int, q: int, ell: int, m: int | None = None,
                   gamma_exponent: int = 1) -> Instance:
    P = make_provider(group, n, q)
    cf = make_coeff_field(P.F.p, ell, m, gamma_exponent)
    return Instance(P, cf)


def alternative_degree(cf: CoeffField) -> int | None:
    """Another admissible extension degree to compare against, if one fits."""
    m0 = minimal_extension_degree(cf.ell, cf.p)
    alt = 2 * cf.m if cf.m == m0 else m0
    if cf.ell**alt > MAX_COEFF_ORDER:
        return None
    return alt


def verify_suite(inst: Instance, samples: int = 1000, seed: int = 0,
                 sigmas=None, enumerate_limit: int = 25_000) -> FactorReport:
    """Run every named check on ``inst``; failures are recorded, not raised."""
    t0 = time.perf_counter()
    P, cf, M = inst.provider, inst.cf, inst.module
    rng = np.random.default_rng(seed)
    report = inst.report(sigmas)
    chk, wit = report.checks, report.witnesses
    sig = inst.characters if sigmas is None else list(sigmas)
    U_one = int(cf.from_int(P.U_order))
    N = M.N

    # BN-pair structure
    gs = np.array([P.random_element(rng) for _ in range(samples)])
    b, perms, u = P.bruhat_batch(gs)
    reps = np.array([P.weyl_elem(p).rep for p in perms])
    recomposed = P.mul(P.mul(b, reps), u)
    in_cells = all(P.in_B(bb) and P.U_w_contains(uu, P.weyl_elem(pp))
                   for bb, uu, pp in zip(b, u, perms))
    b2, perms2, u2 = P.bruhat_batch(recomposed)
    chk["bruhat_roundtrip"] = bool(np.array_equal(recomposed, gs) and in_cells
                                   and np.array_equal(b, b2) and np.array_equal(perms, perms2)
                                   and np.array_equal(u, u2))
    wit["bruhat_roundtrip"] = f"samples={samples}"
    chk["coset_count"] = P.N == P.index_GB
    if P.order <= enumerate_limit:
        G = P.enumerate_group(enumerate_limit)
        _, cell, _ = P.bruhat_batch(G)
        counts = {w.perm: 0 for w in P.weyl}
        for c in map(tuple, cell):
            counts[c] += 1
        expected = {w.perm: P.B_order * P.q**w.length for w in P.weyl}
        chk["bruhat_cells"] = counts == expected and len(G) == P.order == sum(expected.values())
        wit["bruhat_cells"] = f"|G|={len(G)}"
    V_lower = P.mul(P.mul(P.inv(P.w0.rep)[None], P.U), P.w0.rep[None])
    chk["V_lower_unitriangular"] = all(
        not np.any(np.triu(v, 1)) and np.all(np.diagonal(v) == 1) for v in V_lower
    )

    # the module and its form
    pairs = [(P.random_element(rng), rng.integers(0, cf.order, N), rng.integers(0, cf.order, N))
             for _ in range(min(samples, 100))]
    chk["form_invariant"] = all(M.form(M.act(g, v1), M.act(g, v2)) == M.form(v1, v2)
                                for g, v1, v2 in pairs)
    dim_St = M.st_basis.dim
    chk["st_dim_is_U"] = dim_St == P.U_order
    wit["st_dim_is_U"] = f"dim_St={dim_St} |U|={P.U_order}"

    # characters
    chk["sigma_homomorphism"] = all(
        int(cf.mul(s(x), s(y))) == s(P.mul(x, y))
        for s in sig
        for x, y in (P.U[rng.integers(0, len(P.U), 2)] for _ in range(20))
    )
    sd = _superdiag(P)
    in_U_star = np.all(P.U[:, [i for i, _ in sd], [j for _, j in sd]] == 0, axis=1)
    chk["sigma_kills_U_star"] = all(np.all(s.values[in_U_star] == 1) for s in sig)
    n_chars = len(inst.characters)
    chk["character_count"] = n_chars == (P.q - 1) ** (P.n - 1) and (
        not inst.is_gl or n_chars == len(P.H) // P.center_order
    )
    wit["character_count"] = f"count={n_chars}"

    # vanishing lemma and the one-dimensional image
    vanish, nonzero, support, left_dim = True, True, True, True
    idem, prop32, seed_pair = True, True, True
    e = M.steinberg_e
    sign = cf.minus_one if P.w0.length % 2 else 1
    for s in sig:
        for w in P.weyl[:-1]:
            vanish &= not M.gg_applied(s, w).any()
        x0 = inst.seed(s)
        nonzero &= bool(x0.any())
        support &= int(np.count_nonzero(x0)) == P.U_order
        img = M.gg_left_image(s)
        left_dim &= img.dim == 1 and linalg.member(x0, img)
        v = rng.integers(0, cf.order, N)
        once = M.gg_apply(s, v)
        idem &= np.array_equal(M.gg_apply(s, once), cf.mul(U_one, once))
        prop32 &= np.array_equal(x0, cf.mul(sign, M.gg_apply(s, e)))
        pair = M.form(x0, inst.seed(sigma_star(s)))
        seed_pair &= pair == U_one and pair != 0
    chk["gg_vanishing"] = vanish
    chk["gg_w0_nonzero"] = nonzero
    chk["gg_w0_support_is_U"] = support
    chk["gg_left_image_dim_one"] = left_dim
    chk["gg_idempotent_up_to_U"] = idem
    chk["gg_e_identity"] = prop32
    chk["seed_pairing_is_U"] = seed_pair
    wit["seed_pairing_is_U"] = f"|U|={P.U_order} = {P.U_order % cf.ell} mod ell"

    # S_sigma and D_sigma
    St = M.st_basis
    chk["S_in_St"] = all(linalg.contains(St, inst.compute_S_sigma(s)) for s in sig)
    if inst.is_gl:
        chk["S_equals_St"] = all(inst.compute_S_sigma(s) == St for s in sig)
    dims = {s.params: (inst.compute_S_sigma(s).dim, inst.dim_D_sigma(s)) for s in sig}
    chk["dims_ordered"] = all(0 < d <= ds <= dim_St <= N for ds, d in dims.values())
    wit["dims_ordered"] = "D/S=" + ",".join(f"{d}/{ds}" for ds, d in dims.values())
    chk["duality_D"] = all(inst.dim_D_sigma(s) == inst.dim_D_sigma(sigma_star(s)) for s in sig)
    radical_ok = True
    for s in sig:
        S, Ss = inst.compute_S_sigma(s), inst.compute_S_sigma(sigma_star(s))
        radical = linalg.intersect(S, linalg.perp(Ss))
        radical_ok &= S.dim - radical.dim == inst.dim_D_sigma(s)
    chk["rank_radical_identity"] = radical_ok
    index_unit = int(cf.from_int(P.N)) != 0
    wit["irreducible_if_index_unit"] = f"[G:B]={P.N} unit={index_unit}"
    chk["irreducible_if_index_unit"] = (not index_unit) or all(
        d == P.U_order for _, d in dims.values()
    )

    # Gram formula and the c_W route
    chk["gram_formula"] = bool(np.array_equal(inst.st_gram(), cf.from_int(inst.gram_cW)))
    chk["cW_identity_is_W"] = int(inst.cW_values[0]) == len(P.weyl)
    gr = inst.gram_rank()
    wit["gram_rank"] = f"rank={gr}"
    if inst.is_gl:
        chk["gram_rank_equals_D"] = all(d == gr for _, d in dims.values())
        wit["gram_rank_equals_D"] = wit.pop("gram_rank")

    # conjugation and independence of characters
    conj_ok = True
    for s in sig:
        S = inst.compute_S_sigma(s)
        for h in P.H:
            t = sigma_conj(s, h)
            if inst.is_gl:
                conj_ok &= inst.compute_S_sigma(t) == S
            conj_ok &= inst.orbit_of(t) == inst.orbit_of(s)
    chk["S_conjugation_invariant"] = conj_ok
    seeds = np.array([inst.seed(s) for s in inst.characters])
    chk["seeds_independent"] = linalg.rank(seeds, cf) == n_chars
    if inst.is_gl:
        z_index = len(P.H) // P.center_order
        chk["dim_S_lower_bound"] = all(ds >= z_index for ds, _ in dims.values())
    else:
        chk["dim_S_orbit_bound"] = all(
            dims[s.params][0] >= len(inst.orbits[inst.orbit_of(s)]) for s in sig
        )
    wit["S_conjugation_invariant"] = f"orbits={[len(o) for o in inst.orbits]}"

    # independence from the field realisation
    alt = alternative_degree(cf)
    if alt is not None:
        other = Instance(P, make_coeff_field(P.F.p, cf.ell, alt))
        chk["extension_independence"] = all(
            (other.compute_S_sigma(other.character(s.params)).dim,
             other.dim_D_sigma(other.character(s.params))) == dims[s.params]
            for s in sig
        )
        wit["extension_independence"] = f"m={cf.m} vs m={alt}"
    else:
        chk["extension_independence"] = all(extension_dims(inst, s) == dims[s.params]
                                            for s in sig)
        wit["extension_independence"] = f"m={cf.m} vs m={2 * cf.m} (quadratic tower)"
    g_alt = _other_gamma_exponent(cf)
    if g_alt is not None:
        other = Instance(P, make_coeff_field(P.F.p, cf.ell, cf.m, g_alt))
        chk["zeta_independence"] = all(
            (other.compute_S_sigma(other.character(s.params)).dim,
             other.dim_D_sigma(other.character(s.params))) == dims[s.params]
            for s in sig
        )
    report.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return report


def _superdiag(P: GLProvider) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(P.n - 1)]


def _other_gamma_exponent(cf: CoeffField) -> int | None:
    """Smallest exponent > 1 prime to |k^x| giving a different zeta."""
    n = cf.unit_order
    for g in range(2, n):
        if np.gcd(g, n) == 1 and (g * (n // cf.p)) % n != (cf.gamma_exponent * (n // cf.p)) % n:
            return g
    return None


__all__ = [
    "DegenerateCharacterError",
    "FactorReport",
    "FieldError",
    "Instance",
    "RegularCharacter",
    "alternative_degree",
    "build_instance",
    "sigma_conj",
    "sigma_star",
    "verify_suite",
]
