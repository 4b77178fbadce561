import math

import numpy as np
import pytest

from singwave import summation as S
from singwave.errors import NotUnimodularError, ParameterOutOfRange


def test_cesaro_rows():
    assert np.allclose(S.cesaro_weights(3).weights, [1 / 3] * 3)
    assert S.cesaro_weights(1).weights.tolist() == [1.0]
    assert S.cesaro_weights(2).weights.tolist() == [0.5, 0.5]
    assert S.cesaro_weights(2).tail == 0.0


def test_abel_rows():
    ws = S.abel_weights(0.5, 0.3)
    assert ws.weights.tolist() == [0.5, 0.25] and ws.N == 1 and ws.tail == 0.25
    ws = S.abel_weights(0.5, 1e-12)
    assert ws.N == 39
    assert ws.mass + ws.tail == pytest.approx(1.0, abs=1e-12)
    assert S.abel_weights(1e-9, 1e-13).weights[0] == pytest.approx(1.0)


@pytest.mark.parametrize("r", [0.0, 1.0, -0.2, 1.5])
def test_abel_parameter_range(r):
    with pytest.raises(ParameterOutOfRange):
        S.abel_weights(r)


def test_cesaro_parameter_range():
    with pytest.raises(ParameterOutOfRange):
        S.cesaro_weights(0)


def test_s_regular_cesaro():
    rep = S.check_s_regular(S.SummationMethod.cesaro(), list(range(1, 101)))
    assert rep.axiom1
    assert np.allclose(rep.variation, [2.0 / a for a in range(1, 101)], rtol=0, atol=1e-12)
    assert rep.variation_decreasing


def test_s_regular_abel():
    grid = [0.5, 0.9, 0.99]
    rep = S.check_s_regular(S.SummationMethod.abel(1e-13), grid)
    assert rep.axiom1 and rep.variation_decreasing
    for v, r in zip(rep.variation, grid):
        assert abs(v - 2 * (1 - r)) <= 1e-10 + S.abel_weights(r, 1e-13).tail


def test_forward_variation_is_half_the_two_sided_one_for_cesaro():
    for a in (1, 5, 40):
        ws = S.cesaro_weights(a)
        assert S.forward_variation(ws) == pytest.approx(1.0 / a)
        assert S.total_variation(ws) == pytest.approx(2.0 / a)


def test_geometric_average_examples():
    assert S.geometric_average(S.cesaro_weights(7), 1.0) == pytest.approx(1.0)
    ws = S.abel_weights(0.9, 1e-13)
    assert S.geometric_average(ws, 1.0) == pytest.approx(1.0 - ws.tail, abs=1e-15)
    assert abs(S.geometric_average(S.cesaro_weights(4), 1j)) < 1e-15
    assert S.geometric_average(S.abel_weights(0.9, 1e-15), -1.0) == pytest.approx(0.1 / 1.9, abs=1e-14)


def test_geometric_average_matches_direct_sum():
    rng = np.random.default_rng(1)
    z = np.exp(1j * rng.uniform(0.01, 2 * math.pi - 0.01, 50))
    for ws in (S.cesaro_weights(13), S.abel_weights(0.8)):
        direct = np.array([sum(p * zz ** n for n, p in enumerate(ws.weights)) for zz in z])
        assert np.max(np.abs(S.geometric_average(ws, z) - direct)) < 1e-13


def test_geometric_average_needs_unimodular():
    with pytest.raises(NotUnimodularError):
        S.geometric_average(S.cesaro_weights(2), 0.5)


def test_average_sequence_regularity():
    x = np.full(300, 2.0 - 1j)
    assert S.average_sequence(S.cesaro_weights(100), x) == pytest.approx(2.0 - 1j)


def test_custom_table():
    m = S.SummationMethod.custom({1: [1.0], 2: [0.25, 0.75]})
    assert m.weights(2).weights.tolist() == [0.25, 0.75]
    with pytest.raises(ValueError):
        S.SummationMethod.custom({1: [0.5, 0.4]})


def test_property_report_json():
    rep = S.check_s_regular(S.SummationMethod.cesaro(), [1, 2, 3])
    assert '"variation"' in rep.to_json()
