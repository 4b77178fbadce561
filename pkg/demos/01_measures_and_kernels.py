"""Atomic measures and the kernels that act on them.

A Cantor measure at level 6 stands in for a singular continuous measure.
We look at how the Fejer (Cesaro-averaged Dirichlet) kernel and the Poisson
kernel smooth a step function living on it.
"""
import numpy as np

from singwave import kernels, measures, summation

mu = measures.cantor_measure(6)
print(f"{mu.label}: {len(mu)} atoms, mass {mu.total_mass:.3f}, min gap {mu.min_gap:.2e}")

step = (mu.angles < np.pi).astype(float)
print("mean of the step:", measures.mean(step, mu).real)

for alpha in (1, 8, 64):
    smooth = kernels.convolve(step, kernels.Averaged(summation.cesaro_weights(alpha)), mu)
    print(f"Fejer alpha={alpha:3d}: range of smoothed step [{smooth.min():.3f}, {smooth.max():.3f}]")

for r in (0.5, 0.9, 0.99):
    smooth = kernels.convolve(step, kernels.Poisson(r), mu)
    print(f"Poisson r={r}: range [{smooth.min():.3f}, {smooth.max():.3f}]")

# Abel means of Dirichlet kernels reproduce the Poisson kernel.
z = np.exp(1j * np.linspace(0.1, 6.0, 5))
ws = summation.abel_weights(0.8)
print("max |averaged - Poisson| at r=0.8:",
      np.max(np.abs(kernels.averaged_kernel(ws, z) - kernels.poisson_kernel(0.8, z))))
