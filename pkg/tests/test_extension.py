import itertools

import numpy as np
import pytest

from steinberg_gg import build_instance, linalg
from steinberg_gg.extension import QuadraticExtension, extension_dims
from steinberg_gg.fields import make_coeff_field


def all_elements(E):
    codes = E.base.elements()
    return np.array(list(itertools.product(codes, repeat=2)), dtype=np.int64)


@pytest.mark.parametrize("p,ell", [(3, 2), (2, 3), (2, 5), (3, 7)])
def test_quadratic_extension_is_a_field(p, ell):
    E = QuadraticExtension(make_coeff_field(p, ell))
    X = all_elements(E)
    assert len(X) == E.base.order**2
    a, b = X[:, None], X[None, :]
    ab = E.mul(a, b)
    assert np.array_equal(ab, E.mul(b, a))
    # no zero divisors, so the multiplication table has no zero off the zero row/column
    nz = ~E.is_zero(X)
    assert not E.is_zero(ab[nz][:, nz]).any()
    units = X[nz]
    assert np.all(E.mul(units, E.inv(units)) == np.array([1, 0]))
    assert np.array_equal(E.add(X, E.neg(X)), np.zeros_like(X))
    c = X[::7][None, None, :]
    assert np.array_equal(E.mul(a[:, :, None], E.add(b[:, :, None], c)),
                          E.add(E.mul(a[:, :, None], b[:, :, None]), E.mul(a[:, :, None], c)))


def test_t_satisfies_its_equation():
    E = QuadraticExtension(make_coeff_field(2, 5))
    t = E.t
    lhs = E.mul(t, t)
    rhs = E.add(E.mul(E.embed(E.alpha), t), E.embed(E.beta))
    assert np.array_equal(lhs, rhs)
    assert E.degree == 2


def test_rank_matches_base_field_on_embedded_matrices():
    cf = make_coeff_field(3, 7)
    E = QuadraticExtension(cf)
    rng = np.random.default_rng(0)
    for _ in range(20):
        M = rng.integers(0, cf.order, (4, 6))
        M[3] = M[0]
        assert E.rank(E.embed(M)) == linalg.rank(M, cf)


@pytest.mark.parametrize("key", [("gl", 2, 3, 2), ("gl", 3, 2, 7), ("sl2", 2, 5, 3),
                                 ("gl", 2, 5, 13), ("gl", 2, 7, 5)])
def test_extension_dims_agree(key):
    I = build_instance(*key)
    for s in I.characters:
        assert extension_dims(I, s) == (I.compute_S_sigma(s).dim, I.dim_D_sigma(s))
