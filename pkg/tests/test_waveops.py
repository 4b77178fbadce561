import math

import numpy as np
import pytest

from singwave import hilbert as H
from singwave import measures as M
from singwave import waveops as W
from singwave.errors import DecompositionMismatchError, DimensionMismatchError, NonzeroTailError
from singwave.summation import SummationMethod, abel_weights, cesaro_weights

TWO = M.make_atomic([0.0, math.pi], [0.5, 0.5])


def instance(n, seed):
    rng = np.random.default_rng(seed)
    mu = M.make_atomic(2 * math.pi * (np.arange(n) + rng.uniform(0.1, 0.9, n)) / n, rng.uniform(0.1, 1, n))
    phi = rng.standard_normal(n)
    A = H.solve_commutator(H.rank_two_commutator(phi, mu), mu)
    return mu, phi, A, H.multiplication_operator(mu), rng


def brute_force(A, U, ws, sign):
    # sum_n p_n U^{-sign n} A U^{sign n} with explicit matrix powers
    out = np.zeros_like(A, dtype=complex)
    for n, p in enumerate(ws.weights):
        P = np.linalg.matrix_power(U, n)
        Pi = np.linalg.matrix_power(U.conj().T, n)
        out += p * (Pi @ A @ P if sign > 0 else P @ A @ Pi)
    return out


def test_diagonal_A_is_scaled():
    A = np.diag([2.0, -1.0 + 1j])
    U = H.multiplication_operator(TWO)
    ws = abel_weights(0.9, 1e-6)
    for d in ("future", "past"):
        assert np.allclose(W.wave_average(A, U, ws, d), A * (1 - ws.tail), atol=1e-15)


def test_cesaro_one_gives_A():
    mu, phi, A, U, _ = instance(9, 0)
    Wp, Wm = W.wave_pair(A, U, cesaro_weights(1))
    assert np.array_equal(Wp, A) and np.array_equal(Wm, A)


def test_two_atom_hand_case():
    A = np.array([[0.0, 1.0], [0.0, 0.0]])
    U = H.multiplication_operator(TWO)
    Wp = W.wave_average(A, U, cesaro_weights(2), "future")
    assert abs(Wp[0, 1]) < 1e-15
    assert np.allclose(Wp, brute_force(A, U, cesaro_weights(2), +1))


@pytest.mark.parametrize("alpha", [1, 3, 8])
def test_matches_explicit_powers(alpha):
    mu, phi, A, U, _ = instance(10, alpha)
    ws = cesaro_weights(alpha)
    assert np.max(np.abs(W.wave_average(A, U, ws, "future") - brute_force(A, U, ws, +1))) < 1e-12
    assert np.max(np.abs(W.wave_average(A, U, ws, "past") - brute_force(A, U, ws, -1))) < 1e-12


def test_bad_direction_and_shapes():
    U = H.multiplication_operator(TWO)
    with pytest.raises(ValueError):
        W.wave_average(np.zeros((2, 2)), U, cesaro_weights(1), "sideways")
    with pytest.raises(DimensionMismatchError):
        W.wave_average(np.zeros((3, 3)), U, cesaro_weights(1))


def test_pairing_series():
    mu, phi, A, U, rng = instance(12, 4)
    h1 = H.embed(1.0, mu)
    h2 = H.embed(lambda z: z, mu)
    grid = [0.5, 0.9, 0.99]
    s = W.wave_difference_pairing(A, U, SummationMethod.abel(), grid, h1, h2)
    assert s.pairings.shape == (3,)
    assert np.all(s.tail_bounds >= 0)
    assert s.norm_A == pytest.approx(H.op_norm(A))
    assert s.to_csv().splitlines()[0] == "alpha,pairing_re,pairing_im,tail_bound"
    zero = W.wave_difference_pairing(A, U, SummationMethod.abel(), grid, 0 * h1, 0 * h2)
    assert np.all(zero.pairings == 0)
    diag = W.wave_difference_pairing(np.diag(np.diag(A) + 1), U, SummationMethod.abel(), grid, h1, h2)
    assert np.all(np.abs(diag.pairings) <= diag.tail_bounds + 1e-15)


def test_telescoping_identity():
    mu, phi, A, U, _ = instance(8, 11)
    assert W.telescoping_identity_residual(A, U, cesaro_weights(5)) <= 1e-10 * H.op_norm(A)
    assert W.telescoping_identity_residual(A, U, cesaro_weights(1)) <= 1e-13
    D = np.diag(np.arange(8.0))
    assert W.telescoping_identity_residual(D, U, cesaro_weights(4)) == 0.0
    with pytest.raises(NonzeroTailError):
        W.telescoping_identity_residual(A, U, abel_weights(0.5))


def test_convolution_identity():
    mu, phi, A, U, rng = instance(15, 12)
    pairs = H.commutator_pairs(phi, mu)
    h = rng.standard_normal(15) + 1j * rng.standard_normal(15)
    assert W.convolution_identity_residual(pairs, h, A, U, mu, cesaro_weights(6)) <= 1e-10 * H.op_norm(A)
    assert W.convolution_identity_residual(pairs, 0 * h, A, U, mu, cesaro_weights(6)) == 0.0
    D = np.diag(np.ones(15))
    assert W.convolution_identity_residual([], h, D, U, mu, cesaro_weights(3)) == 0.0
    with pytest.raises(DecompositionMismatchError):
        W.convolution_identity_residual([], h, A, U, mu, cesaro_weights(3))


def test_p_alpha_function():
    mu = M.uniform_measure(6)
    assert np.allclose(W.p_alpha_function(np.full(6, 2.0), mu, cesaro_weights(4)), 0)
    assert np.allclose(W.p_alpha_function(np.array([1.5]), M.dirac(), cesaro_weights(4)), 0)
    phi = np.array([0.0, 1.0])
    A = H.solve_commutator(H.rank_two_commutator(phi, TWO), TWO)
    U = H.multiplication_operator(TWO)
    ws = cesaro_weights(2)
    Wp, Wm = W.wave_pair(A, U, ws)
    operator_side = H.values((Wp @ U - U @ Wm) @ H.embed(1.0, TWO), TWO)
    assert np.allclose(W.p_alpha_function(phi, TWO, ws), operator_side, atol=1e-14)


def test_shift_identity():
    mu, phi, A, U, _ = instance(6, 13)
    assert W.shift_identity_residual(A, U, cesaro_weights(4)) <= 1e-10 * H.op_norm(A)
    assert W.shift_identity_residual(A, U, cesaro_weights(1)) <= 1e-14
    assert W.shift_identity_residual(0 * A, U, cesaro_weights(3)) == 0.0


def test_restriction_check():
    mu, phi, A, U, rng = instance(10, 14)
    nA = H.op_norm(A)
    assert W.restriction_commutator_check(A, U, phi, mu, lambda a: True) <= 1e-10 * nA
    first = float(mu.angles[0])
    assert W.restriction_commutator_check(A, U, phi, mu, lambda a: a == first) == 0.0
    assert W.restriction_commutator_check(A, U, phi, mu, lambda a: a < math.pi) <= 1e-10 * nA
