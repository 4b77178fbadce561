"""Seeded contract suites behind ``singwave verify``.

Each suite returns a list of :class:`Check` records.  Details are printed
with fixed formats so that a fixed seed reproduces the report byte for byte.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import clark, counterexample, hilbert, kernels, measures, summation, waveops
from .measures import TWO_PI


@dataclass
class Check:
    contract: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.contract}: {self.detail}"


def random_angles(rng, n, min_gap=1e-3):
    while True:
        a = np.sort(rng.uniform(0.0, TWO_PI, n))
        if n == 1 or measures.circular_gaps(a).min() >= min_gap:
            return a


def random_measure(rng, n, min_gap=1e-3, probability=True, label="random"):
    w = rng.uniform(0.1, 1.0, n)
    if probability:
        w = w / w.sum()
    return measures.make_atomic(random_angles(rng, n, min_gap), w, label)


def random_unimodular(rng, count, away=1e-3):
    t = rng.uniform(0.0, TWO_PI, count)
    z = np.exp(1j * t)
    bad = np.abs(1 - z) <= away
    z[bad] = -1.0
    return z


def random_instance(rng, n):
    mu = random_measure(rng, n)
    phi = rng.standard_normal(n)
    K = hilbert.rank_two_commutator(phi, mu)
    A = hilbert.solve_commutator(K, mu)
    return mu, phi, A, hilbert.multiplication_operator(mu)


def _fmt(x):
    return f"{x:.3e}"


# --- suites ------------------------------------------------------------------

def kernel_suite(seed):
    rng = np.random.default_rng(seed)
    z = random_unimodular(rng, 1000)
    worst = 0.0
    for n in range(1, 65):
        err = np.abs(kernels.dirichlet_closed(n, z) - kernels.dirichlet_direct(n, z))
        worst = max(worst, float(np.max(err)) / (1e-10 * (2 * n + 1)))
    out = [Check("kernels.dirichlet_closed", worst <= 1.0, f"max error / tolerance {_fmt(worst)}")]

    xi, zz = np.exp(1j * rng.uniform(0, TWO_PI, 500)), np.exp(1j * rng.uniform(0, TWO_PI, 500))
    zeta = zz * np.conj(xi)
    ratio = 0.0
    for n in (0, 1, 2, 5, 17, 64):
        ratio = max(ratio, float(np.max(np.abs(kernels.dirichlet_direct(n, zeta)) * np.abs(xi - zz) / 2)))
    out.append(Check("kernels.dirichlet_bound", ratio <= 1.0 + 1e-12, f"max |D_n| |xi-z| / 2 = {_fmt(ratio)}"))

    worst = 0.0
    for r in (0.3, 0.5, 0.9, 0.99):
        ws = summation.abel_weights(r, 1e-13)
        bound = ws.tail * (2 * ws.N + 3) + 1e-12
        diff = np.abs(kernels.averaged_kernel(ws, z) - kernels.poisson_kernel(r, z))
        worst = max(worst, float(np.max(diff)) / bound)
    out.append(Check("kernels.averaged_vs_poisson", worst <= 1.0, f"max error / tail bound {_fmt(worst)}"))

    pos = all(np.all(kernels.poisson_kernel(r, z) > 0) for r in (0.1, 0.5, 0.999))
    out.append(Check("kernels.poisson_positive", pos, "1000 points, r in {0.1, 0.5, 0.999}"))

    sym = max(
        float(np.max(np.abs(kernels.cauchy_kernel(0.7, np.conj(z)) - np.conj(kernels.cauchy_kernel(0.7, z))))),
        float(np.max(np.abs(kernels.averaged_kernel(summation.cesaro_weights(7), np.conj(z))
                            - kernels.averaged_kernel(summation.cesaro_weights(7), z)))),
    )
    out.append(Check("kernels.conjugate_symmetry", sym <= 1e-12, f"max defect {_fmt(sym)}"))

    mu = random_measure(rng, 24)
    f, g = rng.standard_normal(24), rng.standard_normal(24)
    kern = kernels.Averaged(summation.cesaro_weights(5))
    lin = float(np.max(np.abs(kernels.convolve(f + 2.5 * g, kern, mu)
                              - kernels.convolve(f, kern, mu) - 2.5 * kernels.convolve(g, kern, mu))))
    out.append(Check("kernels.convolve_linear", lin <= 1e-12, f"max defect {_fmt(lin)}"))
    return out


def summation_suite(seed):
    rng = np.random.default_rng(seed)
    out = []
    ces = summation.check_s_regular(summation.SummationMethod.cesaro(), list(range(1, 101)))
    ab_grid = [0.5, 0.9, 0.99, 0.999]
    ab = summation.check_s_regular(summation.SummationMethod.abel(1e-13), ab_grid)
    dev = max(max(ces.row_sum_deviation), max(ab.row_sum_deviation))
    out.append(Check("summation.axiom1", dev <= 1e-12, f"max row-sum defect {_fmt(dev)}"))
    v_ces = max(abs(v - 2.0 / a) for v, a in zip(ces.variation, ces.grid))
    v_ab = max(abs(v - 2.0 * (1 - r)) - summation.abel_weights(r, 1e-13).tail
               for v, r in zip(ab.variation, ab_grid))
    ok = v_ces <= 1e-10 and v_ab <= 1e-10 and ces.variation_decreasing and ab.variation_decreasing
    out.append(Check("summation.axiom2_variation", ok, f"cesaro {_fmt(v_ces)}, abel {_fmt(max(v_ab, 0.0))}"))
    ok = ces.leading_weight_decreasing and ab.leading_weight_decreasing
    out.append(Check("summation.axiom3_leading_weights", ok, "max of p_0..p_9 nonincreasing"))

    z = random_unimodular(rng, 1000)
    worst = 0.0
    for a in (1, 2, 4, 9, 16, 50):
        closed = (1 - z ** a) / (a * (1 - z))
        worst = max(worst, float(np.max(np.abs(summation.geometric_average(summation.cesaro_weights(a), z) - closed))))
    for r in (0.5, 0.9):
        ws = summation.abel_weights(r, 1e-13)
        closed = (1 - r) * (1 - (r * z) ** (ws.N + 1)) / (1 - r * z)
        worst = max(worst, float(np.max(np.abs(summation.geometric_average(ws, z) - closed))))
    out.append(Check("summation.property_d_closed_form", worst <= 1e-12, f"max error {_fmt(worst)}"))

    vals = np.array([np.abs(summation.geometric_average(summation.abel_weights(r, 1e-14), z))
                     for r in (0.5, 0.9, 0.99, 0.999)])
    dec = bool(np.all(np.diff(vals, axis=0) < 0))
    env_ok = True
    for a in range(1, 101):
        g = np.abs(summation.geometric_average(summation.cesaro_weights(a), z))
        env_ok &= bool(np.all(g <= np.minimum(1.0, 2.0 / (a * np.abs(1 - z))) + 1e-12))
    out.append(Check("summation.property_d_decay", dec and env_ok,
                     "abel strictly decreasing; cesaro under min(1, 2/(alpha|1-z|))"))

    x = rng.uniform(-1, 1, 200) + 1j * rng.uniform(-1, 1, 200)
    stab = True
    for a in range(1, 100):
        ws = summation.cesaro_weights(a)
        d = abs(summation.average_sequence(ws, x[1:]) - summation.average_sequence(ws, x[:-1]))
        stab &= d <= 2.0 / a * np.max(np.abs(x)) + 1e-15
    out.append(Check("summation.stability", bool(stab), "shifted Cesaro averages within 2 sup|x| / alpha"))
    return out


def hilbert_suite(seed):
    rng = np.random.default_rng(seed)
    uni = sym = rank = trip = dec = sa = quad = 0.0
    for _ in range(10):
        n = int(rng.integers(8, 65))
        mu, phi, A, U = random_instance(rng, n)
        K = hilbert.rank_two_commutator(phi, mu)
        uni = max(uni, float(np.max(np.abs(U @ U.conj().T - np.eye(n)))))
        sym = max(sym, float(np.max(np.abs(K + K.T))), abs(float(np.trace(K))))
        sv = np.linalg.svd(K, compute_uv=False)
        rank = max(rank, sv[2] / sv[0])
        trip = max(trip, hilbert.op_norm(hilbert.commutator(A, U) - K) / hilbert.op_norm(K))
        D = hilbert.finite_rank_decomposition(hilbert.commutator_pairs(phi, mu))
        dec = max(dec, float(np.max(np.abs(D - K))))
        k = rng.standard_normal((n, n))
        k = k + k.T
        L = hilbert.symmetric_form_operator(k, mu)
        sa = max(sa, hilbert.op_norm(L - L.conj().T) / hilbert.op_norm(L))
        f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        q = hilbert.inner(L @ hilbert.embed(f, mu), hilbert.embed(f, mu))
        form = hilbert.dirichlet_form(f, k, mu)
        quad = max(quad, abs(2 * q.real + form) / max(1.0, form), abs(q.imag) / max(1.0, form))
    return [
        Check("hilbert.multiplication_operator", uni <= 1e-12, f"max |UU* - I| {_fmt(uni)}"),
        Check("hilbert.rank_two_commutator", sym <= 1e-12 and rank <= 1e-10,
              f"antisymmetry {_fmt(sym)}, s3/s1 {_fmt(rank)}"),
        Check("hilbert.solve_commutator", trip <= 1e-10, f"max relative residual {_fmt(trip)}"),
        Check("hilbert.finite_rank_decomposition", dec <= 1e-12, f"max entry defect {_fmt(dec)}"),
        Check("hilbert.symmetric_form_operator", sa <= 1e-10 and quad <= 1e-10,
              f"self-adjointness {_fmt(sa)}, quadratic form {_fmt(quad)}"),
    ]


def identity_residuals(rng, n, alpha):
    """Relative residuals (divided by ||A||) of the exact finite identities."""
    mu, phi, A, U = random_instance(rng, n)
    nA = hilbert.op_norm(A)
    ws = summation.cesaro_weights(alpha)
    h = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    h /= np.linalg.norm(h)
    pairs = hilbert.commutator_pairs(phi, mu)
    Wp, Wm = waveops.wave_pair(A, U, ws)
    p_op = hilbert.values((Wp @ U - U @ Wm) @ hilbert.embed(1.0, mu), mu)
    p_int = waveops.p_alpha_function(phi, mu, ws)
    keep_set = set(rng.choice(n, size=max(1, n // 2), replace=False).tolist())
    kept_angles = {float(mu.angles[i]) for i in keep_set}
    return {
        "telescoping": waveops.telescoping_identity_residual(A, U, ws) / nA,
        "convolution": waveops.convolution_identity_residual(pairs, h, A, U, mu, ws) / nA,
        "p_alpha": hilbert.norm(hilbert.embed(p_op - p_int, mu)) / nA,
        "shift": waveops.shift_identity_residual(A, U, ws) / nA,
        "restriction": waveops.restriction_commutator_check(
            A, U, phi, mu, lambda a: a in kept_angles) / nA,
    }


def waveops_suite(seed, instances=20):
    rng = np.random.default_rng(seed)
    worst = {}
    law = normb = 0.0
    for _ in range(instances):
        n = int(rng.integers(8, 65))
        alpha = int(rng.integers(1, 17))
        for key, val in identity_residuals(rng, n, alpha).items():
            worst[key] = max(worst.get(key, 0.0), val)
        mu, phi, A, U = random_instance(rng, n)
        ws = summation.cesaro_weights(alpha)
        t = np.outer(np.conj(mu.points), mu.points)
        Wp, Wm = waveops.wave_pair(A, U, ws)
        law = max(law,
                  float(np.max(np.abs(Wp - A * summation.geometric_average(ws, t)))),
                  float(np.max(np.abs(Wm - A * summation.geometric_average(ws, np.conj(t))))))
        normb = max(normb, hilbert.op_norm(Wp) / hilbert.op_norm(A), hilbert.op_norm(Wm) / hilbert.op_norm(A))
    out = [Check(f"waveops.{key}_identity", val <= 1e-9, f"max residual / ||A|| {_fmt(val)}")
           for key, val in worst.items()]
    out.append(Check("waveops.entrywise_law", law <= 1e-12, f"max entry defect {_fmt(law)}"))
    out.append(Check("waveops.norm_bound", normb <= 1 + 1e-12, f"max ||W|| / ||A|| {normb:.12f}"))
    return out


def counterexample_suite(seed):
    rng = np.random.default_rng(seed)
    seam = counterexample.seam_mismatch()
    a = rng.uniform(-math.pi / 2, math.pi / 2, 1000)
    prod = float(np.max(counterexample.phi_angle(a) * counterexample.psi_angle(a)))
    out = [Check("counterexample.phi_psi", seam < 1e-12 and prod == 0.0,
                 f"seam jump {_fmt(seam)}, max phi*psi on I {_fmt(prod)}")]

    spec = measures.LemmaLostSpec.adaptive(8, 6)
    table = counterexample.divergence_experiment(spec, range(1, 7))
    ok = all(r.above_derived_bound for r in table.rows)
    canc = max(abs(r.pairing - r.cancellation_pairing) / r.pairing for r in table.rows)
    low = all(counterexample.restricted_pairing(spec, r.m) <= r.pairing * (1 + 1e-12) for r in table.rows)
    cs = all(r.norm_Pr_phi * table.psi_norm >= r.pairing * (1 - 1e-12) for r in table.rows)
    out.append(Check("counterexample.divergence_bound", ok and low and cs,
                     f"m=1..6 pairings from {table.rows[0].pairing:.6e} to {table.rows[-1].pairing:.6e}"))
    out.append(Check("counterexample.cancellation_form", canc <= 1e-10, f"max relative gap {_fmt(canc)}"))

    ident, ineq = 0.0, -math.inf
    for _ in range(20):
        mu = random_measure(rng, int(rng.integers(8, 65)))
        f = rng.standard_normal(len(mu))
        r = float(rng.uniform(0.1, 0.99))
        P = counterexample.apply_P(f, mu, r)
        Cr = counterexample.apply_C(f, mu, r)
        mean = float(np.dot(f, mu.weights))
        ident = max(ident, float(np.max(np.abs(P - (2 * Cr.real - (mean - f * mu.total_mass))))))
        ineq = max(ineq, counterexample.l2_norm(P, mu)
                   - 2 * counterexample.l2_norm(Cr, mu) - counterexample.l2_norm(f, mu))
    out.append(Check("counterexample.poisson_cauchy_identity", ident <= 1e-10 and ineq <= 0,
                     f"identity {_fmt(ident)}, inequality slack {_fmt(-ineq)}"))
    return out


def clark_suite(seed):
    rng = np.random.default_rng(seed)
    hand = 0.0
    th = clark.theta_from_measure(measures.dirac(0.0))
    z = clark.interior_samples(50)
    hand = max(hand, float(np.max(np.abs(th(z) - z))))
    two = measures.make_atomic([0.0, math.pi], [0.5, 0.5])
    th2 = clark.theta_from_measure(two)
    hand = max(hand, float(np.max(np.abs(th2(z) - z ** 2))))
    s = clark.clark_measure(th2, -1.0)
    hand = max(hand, float(np.max(np.abs(s.angles - [math.pi / 2, 1.5 * math.pi]))),
               float(np.max(np.abs(s.weights - 0.5))))
    out = [Check("clark.hand_cases", hand <= 1e-10, f"max defect {_fmt(hand)}")]

    trip = resid = 0.0
    wind = disjoint = True
    for _ in range(10):
        n = int(rng.integers(1, 17))
        mu = random_measure(rng, n, min_gap=1e-2)
        th = clark.theta_from_measure(mu)
        s1 = clark.clark_measure(th, 1.0)
        order = np.argsort(mu.angles)
        trip = max(trip, float(np.max(np.abs(s1.angles - mu.angles[order]))),
                   float(np.max(np.abs(s1.weights - mu.weights[order]))))
        alpha = np.exp(1j * rng.uniform(0.1, TWO_PI - 0.1))
        sa = clark.clark_measure(th, alpha)
        resid = max(resid, clark.verify_clark_identity(th, sa, alpha, clark.interior_samples(4 * n)))
        turn = float(th.phase(TWO_PI) - th.phase(0.0))
        wind &= abs(turn - TWO_PI * th.degree) < 1e-9 and len(sa) == th.degree
        gap = np.min(np.abs(np.exp(1j * sa.angles)[:, None] - np.exp(1j * s1.angles)[None, :]))
        disjoint &= bool(gap > 0)
    out.append(Check("clark.round_trip", trip <= 1e-6, f"max atom/weight defect {_fmt(trip)}"))
    out.append(Check("clark.identity_residual", resid <= 1e-7, f"max residual {_fmt(resid)}"))
    out.append(Check("clark.winding_and_disjointness", bool(wind and disjoint), "degree-many atoms, disjoint supports"))
    return out


SUITES = {
    "kernels": kernel_suite,
    "summation": summation_suite,
    "hilbert": hilbert_suite,
    "waveops": waveops_suite,
    "counterexample": counterexample_suite,
    "clark": clark_suite,
}


def run(suite: str, seed: int) -> list[Check]:
    names = list(SUITES) if suite == "all" else [suite]
    checks = []
    for name in names:
        checks.extend(SUITES[name](seed))
    return checks
