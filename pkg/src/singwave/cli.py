"""Command line front end: ``singwave <subcommand> ...``.

Exit codes: 0 success, 1 contract failure, 2 usage error, 3 computational
failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import clark, counterexample, functions, hilbert, measures, summation, verify, waveops
from .errors import InsufficientResolutionError, NotProbabilityError, SingwaveError

log = logging.getLogger("singwave")

EXIT_OK, EXIT_CONTRACT, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2, 3
MAX_MMAX = 14


class UsageError(Exception):
    pass


class ComputeError(Exception):
    pass


def _write(path, text):
    Path(path).write_text(text, encoding="utf-8")


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"


def _with_suffix(path, suffix):
    return str(Path(path).with_suffix(suffix))


def _load_measure(path):
    try:
        return measures.load_measure(path)
    except SingwaveError as exc:
        # well-formed file describing an invalid measure (e.g. duplicate atoms)
        raise ComputeError(f"{path}: {exc}") from exc
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read measure file {path}: {exc}") from exc


def _parse_grid(text, method):
    try:
        items = [s for s in text.split(",") if s.strip()]
        grid = [int(s) for s in items] if method == "cesaro" else [float(s) for s in items]
    except ValueError as exc:
        raise UsageError(f"cannot parse grid {text!r}") from exc
    if not grid or any(b <= a for a, b in zip(grid, grid[1:])):
        raise UsageError("grid must be a nonempty ascending list")
    return grid


def _select(spec, seed):
    try:
        return functions.select(spec, seed)
    except (ValueError, OSError) as exc:
        raise UsageError(str(exc)) from exc


# --- subcommands --------------------------------------------------------------

def cmd_gen_measure(args):
    kind = args.kind
    try:
        if kind == "cantor":
            if args.level is None:
                raise UsageError("--kind cantor needs --level")
            mu = measures.cantor_measure(args.level)
        elif kind == "lemma-lost":
            if args.mmax is None:
                raise UsageError("--kind lemma-lost needs --mmax")
            kmax = args.kmax if args.kmax is not None else args.mmax + 2
            mu = measures.lemma_lost_measure(measures.LemmaLostSpec.adaptive(kmax, args.mmax))
        elif kind == "uniform":
            if args.n is None:
                raise UsageError("--kind uniform needs --n")
            mu = measures.uniform_measure(args.n)
        else:
            if args.input is None:
                raise UsageError("--kind file needs --in")
            mu = _load_measure(args.input)
    except SingwaveError as exc:
        raise ComputeError(str(exc)) from exc
    measures.save_measure(mu, args.out)
    print(f"atoms: {len(mu)}")
    print(f"total_mass: {mu.total_mass:.17g}")
    return EXIT_OK


def cmd_waveop(args):
    mu = _load_measure(args.measure)
    grid = _parse_grid(args.grid, args.method)
    method = (summation.SummationMethod.cesaro() if args.method == "cesaro"
              else summation.SummationMethod.abel(args.tail_bound))
    phi = _select(args.phi, args.seed)
    h1 = _select(args.h1, args.seed)
    h2 = _select(args.h2, args.seed)
    try:
        K = hilbert.rank_two_commutator(phi, mu)
        A = hilbert.solve_commutator(K, mu)
        U = hilbert.multiplication_operator(mu)
        series = waveops.wave_difference_pairing(
            A, U, method, grid, hilbert.embed(h1, mu), hilbert.embed(h2, mu))
    except SingwaveError as exc:
        raise ComputeError(str(exc)) from exc
    residual = hilbert.op_norm(hilbert.commutator(A, U) - K)
    checks = [
        {"contract": "hilbert.solve_commutator", "passed": residual <= 1e-10 * max(hilbert.op_norm(K), 1e-300),
         "value": residual},
        {"contract": "waveops.wave_difference_pairing", "passed": bool(np.all(series.tail_bounds >= 0)),
         "value": float(np.max(series.tail_bounds))},
    ]
    _write(args.out, series.to_csv())
    report = {
        "experiment": "waveop",
        "inputs": {"measure": args.measure, "atoms": len(mu), "method": args.method, "grid": grid,
                   "tail_bound": args.tail_bound, "phi": args.phi, "h1": args.h1, "h2": args.h2,
                   "seed": args.seed},
        "norm_A": series.norm_A,
        "rows": [{"alpha": a, "pairing_re": float(p.real), "pairing_im": float(p.imag), "tail_bound": float(t)}
                 for a, p, t in zip(grid, series.pairings, series.tail_bounds)],
        "checks": checks,
    }
    _write(args.report or _with_suffix(args.out, ".json"), _dump(report))
    for a, p in zip(grid, series.pairings):
        print(f"{a}\t{abs(p):.6e}")
    return EXIT_OK if all(c["passed"] for c in checks) else EXIT_CONTRACT


def cmd_counterexample(args):
    if not 1 <= args.mmax <= MAX_MMAX:
        raise UsageError(f"--mmax must lie in 1..{MAX_MMAX}")
    kmax = args.kmax if args.kmax is not None else args.mmax + 2
    spec = measures.LemmaLostSpec.adaptive(kmax, args.mmax)
    report = measures.validate_arc_conditions(spec)
    try:
        if not report.passed:
            raise ComputeError("arc conditions violated")
        table = counterexample.divergence_experiment(spec, range(1, args.mmax + 1), threads=args.threads)
    except InsufficientResolutionError as exc:
        raise ComputeError(str(exc)) from exc
    _write(args.out, table.to_csv())
    _write(args.dat or _with_suffix(args.out, ".dat"), table.to_dat())
    checks = [{"contract": "counterexample.divergence_experiment", "m": row.m,
               "passed": row.above_derived_bound} for row in table.rows]
    if args.report:
        _write(args.report, _dump({
            "experiment": "counterexample",
            "inputs": {"mmax": args.mmax, "kmax": kmax, "atoms": table.atoms},
            "rows": [row.__dict__ for row in table.rows],
            "checks": checks,
        }))
    sys.stdout.write(table.to_csv())
    return EXIT_OK if all(c["passed"] for c in checks) else EXIT_CONTRACT


def cmd_clark(args):
    mu = _load_measure(args.measure)
    if abs(mu.total_mass - 1.0) > 1e-10:
        raise UsageError(f"clark needs a probability measure (mass {mu.total_mass:.17g})")
    alpha = np.exp(1j * args.alpha)
    try:
        family = clark.ClarkFamily.from_measure(mu)
        sigma = family.sigma(args.alpha)
    except NotProbabilityError as exc:
        raise UsageError(str(exc)) from exc
    except SingwaveError as exc:
        raise ComputeError(str(exc)) from exc
    resid = clark.verify_clark_identity(family.theta, sigma, alpha, clark.interior_samples(4 * len(mu)))
    if resid > 1e-7:
        raise ComputeError(f"Clark identity residual {resid:.3g} exceeds 1e-7")
    out = family.to_dict()
    out["identity_residual"] = resid
    _write(args.out, _dump(out))
    print(f"degree: {family.theta.degree}")
    print(f"identity_residual: {resid:.3e}")
    return EXIT_OK


def cmd_verify(args):
    checks = verify.run(args.suite, args.seed)
    lines = [f"singwave verify --suite {args.suite} --seed {args.seed}"]
    lines += [c.line() for c in checks]
    failed = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - failed}/{len(checks)} contracts passed")
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.out:
        _write(args.out, text)
    return EXIT_OK if failed == 0 else EXIT_CONTRACT


# --- parser ---------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized inputs")
    common.add_argument("--threads", type=int, default=1, help="worker threads for blocked sums")

    p = argparse.ArgumentParser(prog="singwave", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-measure", parents=[common], help="write a measure file")
    g.add_argument("--kind", required=True, choices=["cantor", "lemma-lost", "uniform", "file"])
    g.add_argument("--level", type=int)
    g.add_argument("--kmax", type=int)
    g.add_argument("--mmax", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--in", dest="input")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen_measure)

    w = sub.add_parser("waveop", parents=[common], help="pairings of W+(alpha) - W-(alpha)")
    w.add_argument("--measure", required=True)
    w.add_argument("--method", choices=["cesaro", "abel"], default="abel")
    w.add_argument("--grid", required=True, help="comma separated ascending parameters")
    w.add_argument("--phi", default="random-trig:5")
    w.add_argument("--h1", default="const:1")
    w.add_argument("--h2", default="coord")
    w.add_argument("--tail-bound", type=float, default=summation.DEFAULT_TAIL_BOUND)
    w.add_argument("--out", required=True, help="CSV output")
    w.add_argument("--report", help="JSON run report (default: next to --out)")
    w.set_defaults(func=cmd_waveop)

    c = sub.add_parser("counterexample", parents=[common], help="divergence table")
    c.add_argument("--mmax", type=int, required=True)
    c.add_argument("--kmax", type=int)
    c.add_argument("--out", required=True, help="CSV output")
    c.add_argument("--dat", help="two-column 'm pairing' data (default: next to --out)")
    c.add_argument("--report", help="JSON run report")
    c.set_defaults(func=cmd_counterexample)

    k = sub.add_parser("clark", parents=[common], help="inner function and Clark measure")
    k.add_argument("--measure", required=True)
    k.add_argument("--alpha", type=float, required=True, help="angle of alpha in radians")
    k.add_argument("--out", required=True)
    k.set_defaults(func=cmd_clark)

    v = sub.add_parser("verify", parents=[common], help="run contract suites")
    v.add_argument("--suite", default="all", choices=list(verify.SUITES) + ["all"])
    v.add_argument("--out", help="also write the report here")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    start = time.perf_counter()
    try:
        code = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"singwave: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ComputeError as exc:
        print(f"singwave: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    log.info("%s finished in %.2f s", args.command, time.perf_counter() - start)
    return code


if __name__ == "__main__":
    sys.exit(main())
