import math

import numpy as np
import pytest

from singwave import kernels as K
from singwave import measures as M
from singwave.errors import MisalignedVectorError, SingularPointError
from singwave.summation import abel_weights, cesaro_weights

TWO = M.make_atomic([0.0, math.pi], [0.5, 0.5])


def test_dirichlet_direct_examples():
    assert K.dirichlet_direct(0, np.exp(0.7j)) == pytest.approx(1.0)
    assert K.dirichlet_direct(9, 1.0) == pytest.approx(19.0)
    assert K.dirichlet_direct(2, -1.0) == pytest.approx(1.0)


def test_dirichlet_closed_examples():
    assert K.dirichlet_closed(2, -1.0) == pytest.approx(1.0)
    assert K.dirichlet_closed(1, 1j) == pytest.approx(1.0)
    assert K.dirichlet_direct(1, 1j) == pytest.approx(1.0)
    with pytest.raises(SingularPointError):
        K.dirichlet_closed(3, 1.0)


def test_dirichlet_closed_equals_sine_ratio():
    # independent oracle: sin((n + 1/2) t) / sin(t / 2)
    t = np.linspace(0.05, 2 * math.pi - 0.05, 400)
    for n in (1, 7, 40):
        oracle = np.sin((n + 0.5) * t) / np.sin(t / 2)
        assert np.max(np.abs(K.dirichlet_closed(n, np.exp(1j * t)) - oracle)) < 1e-10 * (2 * n + 1)


def test_averaged_kernel_examples():
    assert K.averaged_kernel(cesaro_weights(2), 1.0) == pytest.approx(2.0)
    z = np.exp(1j * np.linspace(0, 6, 17))
    assert np.allclose(K.averaged_kernel(cesaro_weights(1), z), 1.0)
    assert K.averaged_kernel(abel_weights(0.5, 1e-16), -1.0) == pytest.approx(1 / 3, abs=1e-14)


def test_averaged_kernel_is_fejer_for_cesaro():
    t = np.linspace(0.1, 6.1, 50)
    a = 9
    fejer = np.sin(a * t / 2) ** 2 / (a * np.sin(t / 2) ** 2)
    assert np.allclose(K.averaged_kernel(cesaro_weights(a), np.exp(1j * t)), fejer, atol=1e-12)


def test_poisson_and_cauchy_examples():
    assert K.poisson_kernel(0.5, 1.0) == pytest.approx(3.0)
    assert K.poisson_kernel(0.5, -1.0) == pytest.approx(1 / 3)
    assert K.cauchy_kernel(0.5, 1.0) == pytest.approx(2.0)
    assert K.cauchy_kernel(0.5, -1.0) == pytest.approx(2 / 3)
    z = np.exp(1j * np.linspace(0, 2 * math.pi, 101))
    for r in (0.2, 0.9, 0.9999):
        P = K.poisson_kernel(r, z)
        C = K.cauchy_kernel(r, z)
        assert np.all(P > 0)
        assert np.allclose(2 * C - 1, (1 + r * z) / (1 - r * z))
        assert np.allclose(np.real(2 * C - 1), P, rtol=1e-10)
        assert np.allclose(K.poisson_from_angle(r, np.angle(z)), P, rtol=1e-12)


def test_convolve_examples():
    mu = M.make_atomic([0.3, 1.7, 4.0], [0.2, 0.5, 0.3])
    f = np.array([1.0, -2.0, 0.5])
    assert np.allclose(K.convolve(f, K.Dirichlet(0), mu), np.dot(f, mu.weights))
    assert K.convolve(np.array([2.5]), K.Poisson(0.5), M.dirac())[0] == pytest.approx(2.5 * 3.0)
    out = K.convolve(np.array([1.0, 0.0]), K.Dirichlet(1), TWO)
    assert np.allclose(out, [1.5, -0.5])
    with pytest.raises(MisalignedVectorError):
        K.convolve(np.ones(3), K.Dirichlet(1), TWO)


def test_convolve_blocks_agree():
    rng = np.random.default_rng(3)
    mu = M.make_atomic(rng.uniform(0, 6.28, 37), rng.uniform(0.1, 1, 37))
    f = rng.standard_normal(37)
    kern = K.Cauchy(0.8)
    assert np.allclose(K.convolve(f, kern, mu, block=5), K.convolve(f, kern, mu), atol=1e-14)
    dense = K.kernel_matrix(kern, mu) @ (f * mu.weights)
    assert np.allclose(K.convolve(f, kern, mu), dense, atol=1e-13)
