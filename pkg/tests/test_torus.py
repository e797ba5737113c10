import math

import numpy as np
import pytest

from ncverify import torus as tt
from ncverify.errors import DomainError, RankMismatchError, UnsupportedExponentError
from ncverify.torus import TorusPolynomial


def _rand(seed, theta, terms=5, spread=2, n=2):
    rng = np.random.default_rng(seed)
    coeffs = {tuple(int(v) for v in rng.integers(-spread, spread + 1, size=n)): complex(*rng.uniform(-1, 1, 2)) for _ in range(terms)}
    return TorusPolynomial(n, theta, coeffs)


def _naive_product(x, y):
    out = {}
    for a, c in x.coeffs.items():
        for b, e in y.coeffs.items():
            phase, g = tt.mono_product(a, b, x.theta)
            out[g] = out.get(g, 0) + phase * c * e
    return TorusPolynomial(x.n, x.theta, out)


TH = tt.theta_2(0.3)


def test_mono_product_examples():
    phase, g = tt.mono_product((0, 1), (1, 0), TH)
    assert g == (1, 1)
    assert phase == pytest.approx(np.exp(-0.6j * np.pi))
    phase, g = tt.mono_product((1, 0), (0, 1), TH)
    assert phase == 1 and g == (1, 1)
    assert tt.mono_product((3, -2), (-1, 4), np.zeros((2, 2)))[0] == 1
    with pytest.raises(RankMismatchError):
        tt.mono_product((1, 0), (1, 0, 0), TH)


def test_commutation_relation():
    U1 = TorusPolynomial.monomial((1, 0), TH)
    U2 = TorusPolynomial.monomial((0, 1), TH)
    assert (U1 * U2).distance(np.exp(2j * np.pi * 0.3) * (U2 * U1)) < 1e-15


def test_cocycle_is_associative_three_generators():
    theta = np.array([[0, 0.3, 0.1], [-0.3, 0, 0.7], [-0.1, -0.7, 0]])
    rng = np.random.default_rng(0)
    for _ in range(20):
        a, b, c = (tuple(int(v) for v in rng.integers(-3, 4, 3)) for _ in range(3))
        p1, ab = tt.mono_product(a, b, theta)
        p2, abc = tt.mono_product(ab, c, theta)
        p3, bc = tt.mono_product(b, c, theta)
        p4, abc2 = tt.mono_product(a, bc, theta)
        assert abc == abc2
        assert p1 * p2 == pytest.approx(p3 * p4, abs=1e-13)


@pytest.mark.parametrize("seed", range(5))
def test_vectorized_product_matches_pairwise(seed):
    x, y = _rand(seed, TH), _rand(seed + 100, TH, terms=7)
    assert (x * y).distance(_naive_product(x, y)) < 1e-13


def test_adjoint_axioms():
    for seed in range(5):
        x, y = _rand(seed, TH), _rand(seed + 50, TH)
        assert x.adjoint().adjoint().distance(x) < 1e-14
        assert (x * y).adjoint().distance(y.adjoint() * x.adjoint()) < 1e-13
        assert tt.trace_theta(x * y) == pytest.approx(tt.trace_theta(y * x), abs=1e-13)
        assert tt.trace_theta(x.adjoint() * x).real == pytest.approx(sum(abs(c) ** 2 for c in x.coeffs.values()))
    U = TorusPolynomial.monomial((2, -3), TH)
    assert (U.adjoint() * U).distance(TorusPolynomial.monomial((0, 0), TH)) < 1e-14
    assert (U * U.adjoint()).distance(TorusPolynomial.monomial((0, 0), TH)) < 1e-14


def test_norm_examples():
    x = TorusPolynomial(2, TH, {(1, 0): 1, (0, 1): 1})
    assert tt.norm_even_theta(x, 4) ** 4 == pytest.approx(6.0, abs=1e-12)
    for p in (2, 4, 6):
        assert tt.norm_even_theta(TorusPolynomial.monomial((3, -1), TH, 1.0), p) == pytest.approx(1.0)
    with pytest.raises(UnsupportedExponentError):
        tt.norm_even_theta(x, 5)


@pytest.mark.parametrize("seed", range(3))
def test_commutative_case_matches_classical_integrals(seed):
    x = _rand(seed, np.zeros((2, 2)))
    N = 64
    phi = 2 * np.pi * np.arange(N) / N
    P1, P2 = np.meshgrid(phi, phi, indexing="ij")
    f = sum(c * np.exp(1j * (a[0] * P1 + a[1] * P2)) for a, c in x.coeffs.items())
    for p in (2, 4, 6):
        assert tt.norm_even_theta(x, p) == pytest.approx(np.mean(np.abs(f) ** p) ** (1 / p), rel=1e-12)
    y = _rand(seed + 9, np.zeros((2, 2)))
    assert (x * y).distance(y * x) < 1e-14


def test_semigroup_generator_rotation():
    x = TorusPolynomial(2, TH, {(2, 1): 1.0, (1, -1): 2.0})
    assert tt.heat_theta(x, 0.3)[(2, 1)] == pytest.approx(math.exp(-0.9))
    assert tt.generator_theta(x)[(1, -1)] == 4.0
    z = np.exp(0.4j)
    assert tt.rotate_theta(x, z)[(1, -1)] == pytest.approx(2.0)
    assert tt.rotate_theta(x, z)[(2, 1)] == pytest.approx(z**3)


def test_n_one_is_commutative():
    x = TorusPolynomial(1, 0.0, {(1,): 1.0, (-2,): 0.5})
    y = TorusPolynomial(1, 0.0, {(3,): 1j})
    assert (x * y).distance(y * x) < 1e-15


def test_theta_validation():
    with pytest.raises(DomainError):
        TorusPolynomial(2, [[0, 0.3], [0.3, 0]])
    with pytest.raises(RankMismatchError):
        TorusPolynomial(2, TH, {(1, 0, 0): 1})


def test_clock_shift_orientation():
    C, S = tt.clock_shift(1, 5)
    assert np.abs(C @ S - np.exp(2j * np.pi / 5) * S @ C).max() < 1e-14
    with pytest.raises(DomainError):
        tt.clock_shift(0, 5)
    with pytest.raises(DomainError):
        tt.clock_shift(2, 4)


def test_weyl_examples():
    th = tt.theta_2(0.2)
    U1 = TorusPolynomial.monomial((1, 0), th)
    M = tt.weyl_model(1, 5, U1)
    assert tt.weyl_trace(M) == pytest.approx(0, abs=1e-15)
    for p in (2, 4, 6, math.inf):
        assert tt.schatten_norm(M, p) == pytest.approx(1.0)
    x = TorusPolynomial(2, th, {(1, 0): 1, (0, 1): 1})
    assert tt.weyl_norm(x, 1, 5, 4) == pytest.approx(tt.norm_even_theta(x, 4), abs=1e-12)
    with pytest.raises(DomainError):
        tt.weyl_model(1, 5, TorusPolynomial.monomial((5, 0), th))
    with pytest.raises(DomainError):
        tt.weyl_model(1, 5, TorusPolynomial.monomial((1, 0), tt.theta_2(0.3)))


@pytest.mark.parametrize("seed", range(4))
def test_weyl_traces_of_products(seed):
    th = tt.theta_2(0.2)
    x, y = _rand(seed, th, spread=1), _rand(seed + 7, th, spread=1)
    for w in (x, x * y, x.adjoint() * y):
        assert tt.weyl_trace(tt.weyl_model(1, 5, w)) == pytest.approx(tt.trace_theta(w), abs=1e-12)


def test_weyl_norm_window():
    th = tt.theta_2(0.2)
    x = TorusPolynomial(2, th, {(0, 0): 1, (1, 0): 1, (2, 0): 1})
    assert tt.moment_window_ok(x, 4, 5) and not tt.moment_window_ok(x, 6, 5)
    assert tt.weyl_norm(x, 1, 5, 4) == pytest.approx(tt.norm_even_theta(x, 4), abs=1e-12)
    with pytest.raises(DomainError):
        tt.weyl_norm(x, 1, 5, 6)
    # outside the window the 5-dimensional trace aliases U_1^5 = 1
    assert tt.norm_even_theta(x, 6) == pytest.approx(2.281409183683, abs=1e-11)
    assert tt.weyl_norm(x, 1, 5, 6, check_window=False) == pytest.approx(2.312678369605, abs=1e-11)


def test_sup_norm_estimate_bounds():
    th = tt.theta_2(0.2)
    x = TorusPolynomial(2, th, {(1, 0): 1, (0, 1): 1})
    est = tt.weyl_sup_norm(x, 1, 5, grid=8)
    assert tt.norm_even_theta(x, 6) <= est + 1e-12
    assert est <= 2.0 + 1e-12
