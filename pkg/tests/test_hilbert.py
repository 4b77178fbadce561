import math

import numpy as np
import pytest

from singwave import hilbert as H
from singwave import measures as M
from singwave.errors import DimensionMismatchError, NonRealSymbolError, NonzeroDiagonalError

TWO = M.make_atomic([0.0, math.pi], [0.5, 0.5])


def test_embed_examples():
    mu = M.uniform_measure(5)
    assert H.norm(H.embed(1.0, mu)) == pytest.approx(1.0)
    assert np.allclose(H.embed(lambda z: z, TWO), [math.sqrt(0.5), -math.sqrt(0.5)])
    assert np.all(H.embed(0.0, mu) == 0)
    vals = np.array([2.0, -1.0])
    assert np.allclose(H.values(H.embed(vals, TWO), TWO), vals)


def test_inner_examples():
    rng = np.random.default_rng(0)
    u = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    v = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    assert H.inner(u, u).real == pytest.approx(H.norm(u) ** 2)
    assert H.inner(u, v) == pytest.approx(np.conj(H.inner(v, u)))
    assert H.inner(u, v) == pytest.approx(np.sum(u * np.conj(v)))
    assert abs(H.inner(H.embed(1.0, TWO), H.embed(lambda z: z, TWO))) < 1e-15


def test_multiplication_operator():
    assert np.array_equal(H.multiplication_operator(M.dirac()), [[1.0]])
    assert np.allclose(H.multiplication_operator(TWO), np.diag([1, -1]))
    mu = M.uniform_measure(7)
    x = np.random.default_rng(2).standard_normal(7)
    assert H.norm(H.multiplication_operator(mu) @ x) == pytest.approx(H.norm(x))


def test_rank_two_commutator_examples():
    assert np.all(H.rank_two_commutator(np.full(2, 3.0), TWO) == 0)
    K = H.rank_two_commutator(np.array([0.0, 1.0]), TWO)
    assert np.allclose(K, [[0, 0.5], [-0.5, 0]])
    # (h, phi) 1 - (h, 1) phi on basis vectors
    phi = H.embed(np.array([0.0, 1.0]), TWO)
    one = H.embed(1.0, TWO)
    cols = [H.inner(e, phi) * one - H.inner(e, one) * phi for e in np.eye(2)]
    assert np.allclose(np.column_stack(cols), K)
    with pytest.raises(NonRealSymbolError):
        H.rank_two_commutator(np.array([0.0, 1j]), TWO)


def test_solve_commutator_examples():
    assert np.all(H.solve_commutator(np.zeros((2, 2)), TWO) == 0)
    K = np.array([[0, 0.5], [-0.5, 0]])
    A = H.solve_commutator(K, TWO)
    assert np.allclose(A, [[0, -0.25], [-0.25, 0]])
    U = H.multiplication_operator(TWO)
    assert np.allclose(A @ U - U @ A, K)
    with pytest.raises(NonzeroDiagonalError):
        H.solve_commutator(np.array([[1.0, 0], [0, 0]]), TWO)
    with pytest.raises(DimensionMismatchError):
        H.solve_commutator(np.zeros((3, 3)), TWO)


def test_finite_rank_decomposition():
    u = np.array([1.0, 2j])
    v = np.array([3.0, -1.0])
    assert np.allclose(H.finite_rank_decomposition([(u, v)]), np.outer(v, np.conj(u)))
    assert np.all(H.finite_rank_decomposition([], dim=3) == 0)
    phi = np.array([0.2, -1.0, 0.7])
    mu = M.uniform_measure(3)
    D = H.finite_rank_decomposition(H.commutator_pairs(phi, mu))
    assert np.max(np.abs(D - H.rank_two_commutator(phi, mu))) <= 1e-12


def test_symmetric_form_operator_hand_case():
    assert np.all(H.symmetric_form_operator(np.zeros((2, 2)), TWO) == 0)
    L = H.symmetric_form_operator(np.ones((2, 2)), TWO)
    f = H.embed(np.array([1.0, 0.0]), TWO)
    assert H.inner(L @ f, f) == pytest.approx(-0.25)


def test_symmetric_form_operator_nonpositive_for_positive_kernel():
    rng = np.random.default_rng(5)
    mu = M.make_atomic(np.sort(rng.uniform(0, 6.2, 12)), rng.uniform(0.1, 1, 12))
    k = rng.uniform(0, 1, (12, 12))
    k = k + k.T
    L = H.symmetric_form_operator(k, mu)
    assert np.max(np.linalg.eigvalsh((L + L.conj().T) / 2)) <= 1e-12
