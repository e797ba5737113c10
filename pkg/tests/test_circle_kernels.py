import math

import numpy as np
import pytest

from ncverify.circle_kernels import (
    CircleDensity,
    expected_mass,
    moment,
    moments,
    shifted_fejer,
    shifted_poisson,
    total_variation,
)
from ncverify.errors import DomainError


def _poisson_series(d, t, phi, terms=400):
    # direct Fourier series: sum_{k >= 0} e^{-tk} z^{-k} plus the reflected shifted part
    r = math.exp(-t)
    n = np.arange(-terms, terms + 1)
    return math.exp(-t * d) * np.exp(-1j * d * phi) * np.sum(r ** np.abs(n)[:, None] * np.exp(1j * np.outer(n, phi)), axis=0)


def test_poisson_closed_form_matches_series():
    phi = np.linspace(0, 2 * np.pi, 17)
    np.testing.assert_allclose(shifted_poisson(3, 0.5)(phi), _poisson_series(3, 0.5, phi), atol=1e-12)


@pytest.mark.parametrize("d", [0, 1, 4, 8])
@pytest.mark.parametrize("t", [0.25, 1.0])
def test_poisson_moments_and_mass(d, t):
    mu = shifted_poisson(d, t)
    for k in range(d, 2 * d + 1):
        assert abs(moment(mu, k) - math.exp(-t * k)) < 1e-12
    assert total_variation(mu) == pytest.approx(math.exp(-t * d), abs=1e-10)
    assert expected_mass(mu) == math.exp(-t * d)


@pytest.mark.parametrize("d", [1, 2, 5, 8])
def test_fejer_moments_and_mass(d):
    nu = shifted_fejer(d)
    got = moments(nu, range(0, 2 * d + 1))
    for k in range(0, 2 * d + 1):
        expect = k if k <= d else 2 * d - k
        assert abs(got[k] - expect) < 1e-10
    assert total_variation(nu) == pytest.approx(d, abs=1e-9)


def test_fejer_value_at_zero():
    # the symmetric Fejer sum at phi = 0 is d^2
    assert shifted_fejer(3)(0.0) == pytest.approx(9.0)


def test_domain_errors():
    with pytest.raises(DomainError):
        CircleDensity("poisson", 1, 0.0)
    with pytest.raises(DomainError):
        CircleDensity("fejer", 0)
    with pytest.raises(DomainError):
        CircleDensity("gauss", 1, 1.0)
    with pytest.raises(DomainError):
        moment(shifted_fejer(8), 3, quad_points=16)
