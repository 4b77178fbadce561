"""A continuous symbol phi whose Poisson differences P_r phi are unbounded.

Arcs I_k accumulate at z = 1 from above and below.  phi lives above the
real axis and its mirror psi below, so they never overlap, yet the Poisson
kernel couples I_m with I_-m once 1 - r is comparable to the arc distance.
The pairing (P_r phi, psi) is positive and stays above 2**(m/2)/(100 m**4).
Eventually it grows like 2**(m/2)/m**4, which only starts increasing
around m = 12, so the table below is dominated by the decaying part.
"""
from singwave import counterexample, measures

spec = measures.LemmaLostSpec.adaptive(10, 8)
report = measures.validate_arc_conditions(spec)
print(f"arc conditions hold: {report.passed}")
table = counterexample.divergence_experiment(spec, range(1, 9))
print(f"{table.atoms} atoms, ||psi|| = {table.psi_norm:.4f}")
print(" m   r          pairing     ||P_r phi||   lower bound")
for row in table.rows:
    print(f"{row.m:2d}   {row.r:<9.6f}  {row.pairing:.4e}  {row.norm_Pr_phi:.4e}    {row.derived_bound:.2e}")
