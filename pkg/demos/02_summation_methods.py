"""Cesaro and Abel summation rows and what they do to geometric sequences.

Averages of z**n with z on the circle and z != 1 tend to zero; how fast
depends on the method and on how close z is to 1.
"""
import numpy as np

from singwave import summation

for name, method, grid in (
    ("cesaro", summation.SummationMethod.cesaro(), [1, 10, 100, 1000]),
    ("abel", summation.SummationMethod.abel(), [0.5, 0.9, 0.99, 0.999]),
):
    rep = summation.check_s_regular(method, grid)
    print(f"{name}: total variation along the grid", [f"{v:.4g}" for v in rep.variation])
    for t in (1.0, 0.1, 0.01):
        z = np.exp(1j * t)
        vals = [abs(summation.geometric_average(method.weights(a), z)) for a in grid]
        print(f"   |average of z^n| at angle {t:<5}", " ".join(f"{v:.3e}" for v in vals))
