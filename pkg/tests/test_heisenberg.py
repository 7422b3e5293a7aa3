import random

from hypothesis import given, settings
from hypothesis import strategies as st

from pseudofree.heisenberg import (
    GAMMA_IDENTITY,
    HEI_IDENTITY,
    OMEGA,
    OMEGA2,
    ONE,
    ZERO,
    Eisenstein,
    GammaElement,
    HeisenbergElement,
    c3_act,
    eis_mul,
    from_matrix,
    hei_commutator,
    hei_mul,
    matmul3,
    nonabelian_witness,
    selftest,
)

ints = st.integers(-10**6, 10**6)
eis = st.builds(Eisenstein, ints, ints)
heis = st.builds(HeisenbergElement, eis, eis, eis)


def complex_value(u):
    """Integers (x, y) with u = x/2 + y s, where s = i sqrt3 / 2."""
    # w = -1/2 + s, so a + b w = (2a - b)/2 + b s
    return (2 * u.a - u.b, u.b)


def test_eisenstein_examples():
    assert OMEGA * OMEGA == Eisenstein(-1, -1) == OMEGA2
    assert eis_mul(Eisenstein(1, 1), OMEGA) == Eisenstein(-1, 0)
    assert 2 * Eisenstein(3, 1) == Eisenstein(6, 2)
    assert OMEGA ** 3 == ONE
    assert ONE + OMEGA + OMEGA2 == ZERO


@settings(max_examples=300)
@given(eis, eis)
def test_multiplication_matches_complex_model(u, v):
    # s^2 = -3/4
    x1, y1 = complex_value(u)
    x2, y2 = complex_value(v)
    prod = eis_mul(u, v)
    xp, yp = complex_value(prod)
    assert 2 * xp == x1 * x2 - 3 * y1 * y2
    assert 2 * yp == x1 * y2 + y1 * x2
    assert (u * v).norm() == u.norm() * v.norm()
    assert u.norm() >= 0


def test_heisenberg_examples():
    one = Eisenstein(1)
    x = HeisenbergElement(one, ZERO, ZERO)
    y = HeisenbergElement(ZERO, one, ZERO)
    assert HEI_IDENTITY * x == x
    assert x * y == HeisenbergElement(one, one, one)
    assert y * x == HeisenbergElement(one, one, ZERO)
    assert hei_commutator(x, y) == HeisenbergElement(ZERO, ZERO, one)


@settings(max_examples=300)
@given(heis, heis)
def test_law_matches_matrices(g, h):
    assert from_matrix(matmul3(g.matrix(), h.matrix())) == hei_mul(g, h)
    assert g * g.inverse() == HEI_IDENTITY == g.inverse() * g


def test_c3_examples():
    g = HeisenbergElement(Eisenstein(1), ZERO, ZERO)
    assert c3_act(0, g) == g
    assert c3_act(1, g) == HeisenbergElement(Eisenstein(-1, -1), ZERO, ZERO)
    assert c3_act(3, g) == g


@settings(max_examples=300)
@given(heis, heis, st.integers(0, 5))
def test_c3_is_an_automorphism_matching_conjugation(g, h, k):
    assert c3_act(k, g * h) == c3_act(k, g) * c3_act(k, h)
    assert c3_act(3, g) == g
    # conjugation by D = diag(1, w, w^2) computed with matrices; D^-1 = diag(1, w^2, w)
    d = [[ONE, ZERO, ZERO], [ZERO, OMEGA, ZERO], [ZERO, ZERO, OMEGA2]]
    dinv = [[ONE, ZERO, ZERO], [ZERO, OMEGA2, ZERO], [ZERO, ZERO, OMEGA]]
    assert from_matrix(matmul3(matmul3(d, g.matrix()), dinv)) == c3_act(1, g)


def test_gamma_examples():
    a = GammaElement(HeisenbergElement(Eisenstein(2, 1), Eisenstein(0, 3), Eisenstein(5)), 1)
    assert a * GAMMA_IDENTITY == a == GAMMA_IDENTITY * a
    assert (a * a * a).k == 0
    assert a * a.inverse() == GAMMA_IDENTITY


def test_witness_and_centre():
    w1, w2 = nonabelian_witness()
    c = hei_commutator(w1.h, w2.h)
    assert c.is_central() and c != HEI_IDENTITY
    rng = random.Random(1)
    z = HeisenbergElement(ZERO, ZERO, Eisenstein(4, -7))
    for _ in range(100):
        g = HeisenbergElement(Eisenstein(rng.randint(-9, 9)), Eisenstein(0, rng.randint(-9, 9)), ONE)
        assert z * g == g * z
        assert hei_commutator(z, g) == HEI_IDENTITY


def test_selftest_clean():
    assert all(v == 0 for v in selftest(2000, seed=3).values())
