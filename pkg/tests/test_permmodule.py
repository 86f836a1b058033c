import numpy as np
import pytest

from steinberg_gg import PermModule, build_instance, make_coeff_field, make_provider
from steinberg_gg.linalg import member

import oracles

INSTANCES = [("gl", 2, 3, 2), ("gl", 2, 4, 3), ("gl", 3, 2, 3), ("gl", 3, 3, 2), ("sl2", 2, 5, 3)]


def test_rejects_bad_fields():
    P = make_provider("gl", 2, 3)
    with pytest.raises(ValueError):
        PermModule(P, make_coeff_field(2, 3))
    cf = make_coeff_field(3, 2)
    M = PermModule(P, cf)
    with pytest.raises(ValueError):
        M.act(P.identity(), np.zeros(M.N + 1, dtype=np.int64))


@pytest.mark.parametrize("key", INSTANCES)
def test_generator_tables_are_permutations(inst, key):
    M = inst(*key).module
    for p in M.generator_perms:
        assert sorted(p.tolist()) == list(range(M.N))


@pytest.mark.parametrize("key", INSTANCES)
def test_act_examples(inst, key):
    I = inst(*key)
    M, P, cf = I.module, I.provider, I.cf
    rng = np.random.default_rng(5)
    v = rng.integers(0, cf.order, M.N)
    assert np.array_equal(M.act(P.identity(), v), v)
    for _ in range(10):
        b = np.triu(rng.integers(0, P.q, (P.n, P.n)), 1) + np.diag(rng.integers(1, P.q, P.n))
        if key[0] == "sl2":
            b[1, 1] = P.F.inv(b[0, 0])
        base = M.basis_vector(P.base_coset)
        assert np.array_equal(M.act(b, base), base)
    for _ in range(100):
        g = P.random_element(rng)
        v = rng.integers(0, cf.order, M.N)
        assert np.array_equal(M.act(g, M.act(P.inv(g), v)), v)
        w = M.act(g, M.basis_vector(3 % M.N))
        assert sorted(w.tolist()) == sorted(M.basis_vector(0).tolist())


@pytest.mark.parametrize("key", INSTANCES)
def test_act_is_a_left_action(inst, key):
    I = inst(*key)
    M, P = I.module, I.provider
    rng = np.random.default_rng(9)
    for _ in range(100):
        g, h = P.random_element(rng), P.random_element(rng)
        v = rng.integers(0, I.cf.order, M.N)
        assert np.array_equal(M.act(g, M.act(h, v)), M.act(P.mul(g, h), v))


def test_act_matches_brute_force_gl22():
    I = oracles.BruteModule(2, 2, 3)
    inst = build_instance("gl", 2, 2, 3)
    P, M = inst.provider, inst.module
    # relabel brute-force cosets through the package labels
    lab = [P.coset_canonical(np.array(r)).id for r in I.reps]
    for g in I.G:
        for i in range(I.N):
            v = [0] * I.N
            v[i] = 1
            out = I.act(g, v)
            j = out.index(1)
            assert M.act(np.array(g), M.basis_vector(lab[i]))[lab[j]] == 1


@pytest.mark.parametrize("key", INSTANCES)
def test_form_examples(inst, key):
    I = inst(*key)
    M, P, cf = I.module, I.provider, I.cf
    for i in range(M.N):
        for j in range(M.N):
            assert M.form(M.basis_vector(i), M.basis_vector(j)) == int(i == j)
    e = M.steinberg_e
    assert M.form(e, e) == int(cf.from_int(len(P.weyl)))


@pytest.mark.parametrize("key", INSTANCES)
def test_form_symmetric_bilinear_invariant(inst, key):
    I = inst(*key)
    M, P, cf = I.module, I.provider, I.cf
    rng = np.random.default_rng(2)
    for _ in range(100):
        g = P.random_element(rng)
        a, b, c = (rng.integers(0, cf.order, M.N) for _ in range(3))
        s = int(rng.integers(0, cf.order))
        assert M.form(M.act(g, a), M.act(g, b)) == M.form(a, b)
        assert M.form(a, b) == M.form(b, a)
        assert M.form(cf.add(cf.mul(s, a), c), b) == int(cf.add(cf.mul(s, M.form(a, b)),
                                                                  M.form(c, b)))


def test_form_e_e_gl2_is_two():
    I = make_provider("gl", 2, 3)
    cf = make_coeff_field(3, 5)
    M = PermModule(I, cf)
    assert M.form(M.steinberg_e, M.steinberg_e) == int(cf.from_int(2))


@pytest.mark.parametrize("key,dim", [(("gl", 2, 3, 2), 3), (("gl", 2, 3, 13), 3),
                                     (("gl", 3, 2, 3), 8), (("gl", 3, 3, 2), 27)])
def test_steinberg_dimension(inst, key, dim):
    M = inst(*key).module
    assert M.steinberg_e.any()
    assert M.st_basis.dim == dim


def test_steinberg_e_pattern_gl3():
    I = make_provider("gl", 3, 2)
    M = PermModule(I, make_coeff_field(2, 3))
    e = M.steinberg_e
    assert np.count_nonzero(e) == 6
    signs = {w.perm: int(e[c]) for w, c in zip(I.weyl, M.weyl_cosets)}
    mone = M.cf.minus_one
    assert all(signs[w.perm] == (mone if w.length % 2 else 1) for w in I.weyl)


def test_gg_applied_gl23_ell2(inst):
    I = inst("gl", 2, 3, 2)
    M, P = I.module, I.provider
    for s in I.characters:
        assert not M.gg_applied(s, P.weyl[0]).any()
        x = M.gg_applied(s, P.w0)
        assert np.count_nonzero(x) == P.U_order == 3


@pytest.mark.parametrize("key", INSTANCES)
def test_trivial_character_needs_regularity(inst, key):
    I = inst(*key)
    M, P, cf = I.module, I.provider, I.cf
    v = M.gg_applied(I.trivial_character(), P.weyl[0])
    expected = M.zero()
    expected[P.base_coset] = cf.from_int(P.U_order)
    assert np.array_equal(v, expected) and v.any()


@pytest.mark.parametrize("key", [("gl", 2, 2, 3), ("gl", 3, 2, 3), ("gl", 2, 4, 3),
                                 ("sl2", 2, 5, 3), ("gl", 3, 3, 2)])
def test_gg_left_image_is_line_through_seed(inst, key):
    I = inst(*key)
    M = I.module
    for s in I.characters:
        img = M.gg_left_image(s)
        assert img.dim == 1
        assert member(I.seed(s), img)


def test_gg_left_image_gl24_three_characters(inst):
    I = inst("gl", 2, 4, 3)
    assert len(I.characters) == 3
    assert [I.module.gg_left_image(s).dim for s in I.characters] == [1, 1, 1]


@pytest.mark.parametrize("key", INSTANCES)
def test_gg_idempotent_up_to_U(inst, key):
    I = inst(*key)
    M, cf = I.module, I.cf
    U1 = cf.from_int(I.provider.U_order)
    rng = np.random.default_rng(4)
    for s in I.characters[:3]:
        for _ in range(5):
            v = rng.integers(0, cf.order, M.N)
            once = M.gg_apply(s, v)
            assert np.array_equal(M.gg_apply(s, once), cf.mul(U1, once))


@pytest.mark.parametrize("key", INSTANCES)
def test_gg_on_e_recovers_seed(inst, key):
    I = inst(*key)
    M, P, cf = I.module, I.provider, I.cf
    sign = cf.minus_one if P.w0.length % 2 else 1
    for s in I.characters:
        assert np.array_equal(M.gg_applied(s, P.w0), cf.mul(sign, M.gg_apply(s, M.steinberg_e)))


@pytest.mark.parametrize("key", INSTANCES)
def test_gg_operator_matches_gg_apply(inst, key):
    I = inst(*key)
    M = I.module
    s = I.characters[-1]
    op = M.gg_operator(s)
    for i in range(0, M.N, max(1, M.N // 7)):
        assert np.array_equal(op[i], M.gg_apply(s, M.basis_vector(i)))


def test_gg_vector_matches_brute_force():
    for n, p, ell in [(2, 3, 7), (3, 2, 5), (2, 5, 11)]:
        b = oracles.BruteModule(n, p, ell)
        I = build_instance("gl", n, p, ell)
        P, cf = I.provider, I.cf
        # the package picks its own primitive p-th root; decode it to an integer
        zeta_int = next(x for x in range(1, ell) if int(cf.from_int(x)) == cf.zeta)
        lab = [P.coset_canonical(np.array(r)).id for r in b.reps]
        for s in I.characters:
            vec = b.gg_vector(list(s.params), zeta_int, b.longest_rep())
            got = I.seed(s)
            assert [int(got[lab[i]]) for i in range(b.N)] == cf.from_int(np.array(vec)).tolist()
