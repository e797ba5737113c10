"""Algebra axioms as property tests over seeded random instances."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ncverify import group_algebra as ga
from ncverify import qfock as qf
from ncverify import torus as tt
from ncverify.numerics import min_eigenvalue

EXAMPLES = 200
TOL = 1e-9

coeff = st.tuples(st.integers(-3, 3), st.integers(-3, 3)).map(lambda c: complex(*c))
phase = st.floats(0.0, 2 * math.pi, allow_nan=False).map(lambda a: cmath.exp(1j * a))

letters = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=3).map(tuple)
free_poly = st.dictionaries(letters, coeff, min_size=1, max_size=3).map(
    lambda terms: ga.GroupPolynomial(2, {}) + sum((ga.GroupPolynomial.delta(w, 2, c) for w, c in terms.items()),
                                                  ga.GroupPolynomial(2, {})))

exponents = st.tuples(st.integers(-2, 2), st.integers(-2, 2))
theta12 = st.sampled_from([0.0, 0.2, 0.3, math.sqrt(2) / 2, 0.77])


def _torus(th, terms):
    return tt.TorusPolynomial(2, tt.theta_2(th), terms)


torus_triple = theta12.flatmap(lambda th: st.tuples(
    *[st.dictionaries(exponents, coeff, min_size=1, max_size=3).map(lambda d, th=th: _torus(th, d))] * 3))


def _close(x, y, tol=TOL):
    return x.distance(y) <= tol * (1 + x.l2_norm() + y.l2_norm())


# -- free group ------------------------------------------------------------------


@settings(max_examples=EXAMPLES, deadline=None)
@given(free_poly, free_poly, free_poly)
def test_free_associative(x, y, z):
    assert _close((x * y) * z, x * (y * z))


@settings(max_examples=EXAMPLES, deadline=None)
@given(free_poly, free_poly)
def test_free_involution(x, y):
    assert _close(x.adjoint().adjoint(), x)
    assert _close((x * y).adjoint(), y.adjoint() * x.adjoint())
    assert ga.trace(x.adjoint() * x).real >= -TOL


@settings(max_examples=EXAMPLES, deadline=None)
@given(free_poly, free_poly)
def test_free_tracial(x, y):
    assert abs(ga.trace(x * y) - ga.trace(y * x)) <= TOL


@settings(max_examples=EXAMPLES, deadline=None)
@given(free_poly, phase)
def test_free_rotation_preserves_moments(x, z):
    rx = ga.rotate(x, z)
    for p in (2, 4):
        assert ga.norm_even(rx, p) == pytest.approx(ga.norm_even(x, p), rel=1e-9, abs=1e-12)


# -- quantum torus ---------------------------------------------------------------


@settings(max_examples=EXAMPLES, deadline=None)
@given(torus_triple)
def test_torus_associative(xyz):
    x, y, z = xyz
    assert _close((x * y) * z, x * (y * z))


@settings(max_examples=EXAMPLES, deadline=None)
@given(torus_triple)
def test_torus_involution_and_trace(xyz):
    x, y, _ = xyz
    assert _close(x.adjoint().adjoint(), x)
    assert _close((x * y).adjoint(), y.adjoint() * x.adjoint())
    assert abs(tt.trace_theta(x * y) - tt.trace_theta(y * x)) <= TOL


@settings(max_examples=EXAMPLES, deadline=None)
@given(torus_triple, phase)
def test_torus_rotation_preserves_moments(xyz, z):
    x = xyz[0]
    rx = tt.rotate_theta(x, z)
    for p in (2, 4):
        assert tt.norm_even_theta(rx, p) == pytest.approx(tt.norm_even_theta(x, p), rel=1e-9, abs=1e-12)


# -- q-Gaussian ------------------------------------------------------------------

qs = st.floats(-0.95, 0.95, allow_nan=False)
holo_mono = st.lists(st.tuples(st.integers(1, 2), st.integers(1, 2)), min_size=0, max_size=2).map(
    lambda pairs: qf.holo_monomial([j for j, _ in pairs], [n for _, n in pairs]))
holo_poly = st.dictionaries(holo_mono, coeff, min_size=1, max_size=3).map(qf.HoloPolynomial).filter(
    lambda p: len(p.coeffs) > 0 and p.degree() <= 3)


@settings(max_examples=EXAMPLES, deadline=None)
@given(qs, st.integers(1, 2), st.integers(1, 4))
def test_gram_psd(q, dim_h, K):
    assert qf.gram(qf.FockBasis(dim_h, K), q).min_eigenvalue() >= -1e-10 * (1 + K)


@settings(max_examples=EXAMPLES, deadline=None)
@given(qs, st.integers(1, 4), st.integers(1, 4))
def test_q_commutation(q, i, j):
    assert qf.qcr_residual(qf.QFock(2, 3, q), i, j) <= 1e-10


@settings(max_examples=EXAMPLES, deadline=None)
@given(qs, holo_poly, holo_poly)
def test_q_tracial(q, x, y):
    space = qf.QFock(2, x.degree() + y.degree(), q)
    X, Y = space.materialize(x), space.materialize(y).dagger()
    assert abs((X @ Y).vacuum_trace() - (Y @ X).vacuum_trace()) <= 1e-9 * (1 + x.l2_norm_sq() * y.l2_norm_sq())


@settings(max_examples=EXAMPLES, deadline=None)
@given(qs, holo_poly, phase)
def test_q_rotation_preserves_moments(q, x, z):
    for p in (2, 4):
        a, b = qf.norm_even_q(qf.rotate_q(x, z), p, q), qf.norm_even_q(x, p, q)
        assert a == pytest.approx(b, rel=1e-9, abs=1e-12)


# -- Haagerup --------------------------------------------------------------------


@pytest.mark.parametrize("t", [0.5, 1.0])
def test_haagerup_psd(t):
    G, lam = ga.haagerup_gram(2, t, 3)
    assert G.shape == (53, 53)  # 1 + 4 + 12 + 36 words
    assert lam >= -1e-10 * len(G)
    assert lam == pytest.approx(float(np.linalg.eigvalsh(G).min()), abs=1e-10)
    assert min_eigenvalue(G) == pytest.approx(lam, abs=1e-10)
