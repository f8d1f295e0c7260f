"""
Command-line front end.

    smstab spectrum --M 31 --operator third3
    smstab pade --l 1 --m 1 --eval-imag 1
    smstab classify --l 1 --m 1 --kind selfadjoint
    smstab simulate --M 31 --operator central --l 1 --m 1 --tau 0.01 --steps 100 --mode 3
    smstab sweep tau --operator central --l 1 --m 1 --taus 0.1,0.05,0.025,0.0125 --T 1

Tables go to stdout (``--format csv`` or ``json``) unless ``--out DIR`` or
$SMSTAB_OUTPUT_DIR is set, in which case files plus a run manifest are
written and a short report is printed. Exit status: 0 success, 2 invalid
input, 1 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from ._fit import loglog_slope
from .classify import classify_selfadjoint, classify_skew, SkewClassification
from .grid import Grid
from .io import RunManifest, Table, output_dir, write_outputs
from .operators import build_operator
from .pade import pade_coeffs, stability_modulus
from .spectral import spectral_error, spectrum_table
from .stepper import InitialData, SimulationConfig, convergence_study, simulate


class UsageError(ValueError):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _frac(c) -> str:
    return f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator)


# ---------------------------------------------------------------- commands


def cmd_spectrum(args):
    grid = Grid(args.M)
    op = build_operator(args.operator, grid, args.chi)
    spec = spectrum_table(op)
    table = Table(["m", "re_mu", "im_mu", "re_lambda", "im_lambda"])
    for m, mu, lam in zip(spec.m, spec.mu, spec.lam):
        table.rows.append([int(m), float(mu.real), float(mu.imag), float(lam.real), float(lam.imag)])
    report = [
        f"spectrum of {spec.label} on M={grid.M}",
        f"max Re mu = {float(np.max(spec.mu.real))!r}",
        f"max |Im mu| = {float(np.max(np.abs(spec.mu.imag)))!r}",
        f"max |mu - lambda| = {float(np.max(np.abs(spec.mu - spec.lam)))!r}",
    ]
    return {"spectrum": table}, {}, report, {}


def cmd_pade(args):
    scheme = pade_coeffs(args.l, args.m)
    p_exact, q_exact = scheme.exact_coeffs()
    ys = args.eval_imag if args.eval_imag else [0.1, 1.0, 10.0, 100.0]
    samples = [{"y": float(y), "modulus": stability_modulus(scheme, y)} for y in ys]
    skew = classify_skew(scheme)
    a_stable = skew.verdict is not SkewClassification.UNSTABLE
    record = {
        "l": scheme.l,
        "m": scheme.m,
        "p_coeffs": [float(c) for c in scheme.p_coeffs],
        "q_coeffs": [float(c) for c in scheme.q_coeffs],
        "p_exact": [_frac(c) for c in p_exact],
        "q_exact": [_frac(c) for c in q_exact],
        "order": scheme.order,
        "samples": samples,
        "max_modulus_imag_axis": skew.max_modulus,
        "a_stable": a_stable,
    }
    report = [
        f"Pade R_{scheme.l}{scheme.m}(z) approximating exp(-z), error O(z^{scheme.order + 1})",
        f"P coefficients: {record['p_coeffs']}  = [{', '.join(record['p_exact'])}]",
        f"Q coefficients: {record['q_coeffs']}  = [{', '.join(record['q_exact'])}]",
        f"order: {scheme.order}",
    ]
    report += [f"|R(i*{s['y']!r})| = {s['modulus']!r}" for s in samples]
    report.append(
        f"A-stable: {'yes' if a_stable else 'no'} (max |R(iy)| = {skew.max_modulus!r}"
        + (f" at y = {skew.witness!r})" if skew.witness is not None else ")")
    )
    return {}, {"pade": record}, report, {}


def cmd_classify(args):
    scheme = pade_coeffs(args.l, args.m)
    if args.kind == "skew":
        result = classify_skew(scheme)
        record = {"l": scheme.l, "m": scheme.m, "kind": "skew", **result.to_dict()}
        lines = [f"{result.verdict.value}"]
        lines.append(f"max |R(iy)| = {result.max_modulus!r}, max ||R(iy)| - 1| = {result.max_deviation!r}")
        if result.witness is not None:
            lines.append(f"growth witness: y = {result.witness!r}")
    else:
        result = classify_selfadjoint(scheme, args.x_max)
        record = {"l": scheme.l, "m": scheme.m, "kind": "selfadjoint", "x_max": args.x_max, **result.to_dict()}
        lines = [f"{result.verdict.value}"]
        if result.condition is not None:
            lines.append(f"bound: tau * mu_max <= {result.condition!r}")
        if result.witness is not None:
            lines.append(f"witness: x = {result.witness!r}")
    return {}, {"classification": record}, lines, {"verdict": record["verdict"]}


def _initial(args) -> InitialData:
    if args.gaussian is not None:
        return InitialData.gaussian(args.gaussian)
    if args.modes is not None:
        if not args.modes:
            raise UsageError("--modes needs at least one harmonic index")
        return InitialData.harmonics({k: 1.0 for k in args.modes})
    return InitialData.mode(args.mode)


def cmd_simulate(args):
    grid = Grid(args.M)
    initial = _initial(args)
    config = SimulationConfig(grid, args.operator, (args.l, args.m), args.tau, args.steps, initial, args.chi)
    config.build_operator()
    traj = simulate(config, path=args.path, keep_every=args.keep_every)

    norms = Table(["step", "t", "norm", "error_vs_exact"])
    for n in range(len(traj.times)):
        norms.rows.append([n, float(traj.times[n]), float(traj.norms[n]), float(traj.errors[n])])

    harmonics = [int(m) for m in grid.harmonics]
    cols = ["step", "t"] + [f"amp_{m}" for m in harmonics]
    ratio_pair = None
    if initial.kind == "modes" and len(initial.modes) >= 2:
        excited = sorted(initial.modes, key=abs)
        ratio_pair = (excited[-1], excited[0])
        cols.append(f"ratio_{ratio_pair[0]}_{ratio_pair[1]}")
    amps = Table(cols)
    for n in range(len(traj.times)):
        row = [n, float(traj.times[n])] + [float(a) for a in traj.amplitudes[n]]
        if ratio_pair:
            hi, lo = (traj.amplitudes[n, grid.index_of(k)] for k in ratio_pair)
            row.append(float(hi / lo) if lo > 0 else None)
        amps.rows.append(row)

    final = Table(["i", "x", "re", "im"])
    for i, (x, v) in enumerate(zip(grid.x, traj.final.values)):
        final.rows.append([i, float(x), float(v.real), float(v.imag)])

    drift = float(np.max(np.abs(traj.norms - traj.norms[0])))
    report = [
        f"{config.steps} steps of Pade ({args.l},{args.m}) on {args.operator}, M={grid.M}, tau={args.tau!r}",
        f"max norm drift = {drift!r}",
        f"final error vs exact = {float(traj.errors[-1])!r}",
    ]
    report += [f"warning: {w}" for w in traj.warnings]
    summary = {"max_norm_drift": drift, "final_error": float(traj.errors[-1]), "warnings": traj.warnings}
    return {"norms": norms, "amplitudes": amps, "final": final}, {}, report, summary


def cmd_sweep(args):
    if args.dimension == "tau":
        taus = args.taus
        if not taus:
            raise UsageError("empty tau sweep")
        grid = Grid(args.M)
        template = SimulationConfig(
            grid, args.operator, (args.l, args.m), taus[0], max(1, round(args.T / taus[0])),
            InitialData.mode(args.mode), args.chi,
        )
        result = convergence_study(template, taus, T=args.T)
        table = Table(["tau", "steps", "final_error"])
        for tau, err in zip(result.taus, result.errors):
            table.rows.append([float(tau), int(round(args.T / tau)), float(err)])
        slope = loglog_slope(table.column("tau"), table.column("final_error"))
        report = [f"time convergence of Pade ({args.l},{args.m}) on {args.operator}: slope = {slope!r}"]
        return {"sweep": table}, {}, report, {"slope": slope}

    if args.dimension == "M":
        Ms = args.Ms
        if not Ms:
            raise UsageError("empty M sweep")
        scheme = build_operator(args.operator, Grid(Ms[0]), args.chi).scheme
        table = Table(["M", "h", "error"])
        for M in Ms:
            table.rows.append([M, 1.0 / M, spectral_error(scheme, M, args.harmonic, args.part)])
        slope = loglog_slope(table.column("h"), table.column("error"))
        report = [f"spectral convergence of {args.operator} at m={args.harmonic} ({args.part}): slope = {slope!r}"]
        return {"sweep": table}, {}, report, {"slope": slope}

    pairs = [(l, m) for l in args.ls for m in args.ms if l + m >= 1]
    if not pairs:
        raise UsageError("empty (l, m) sweep")
    table = Table(["l", "m", "verdict", "condition", "max_modulus", "witness"])
    for l, m in pairs:
        scheme = pade_coeffs(l, m)
        if args.kind == "skew":
            r = classify_skew(scheme)
            table.rows.append([l, m, r.verdict.value, None, r.max_modulus, r.witness])
        else:
            r = classify_selfadjoint(scheme, args.x_max)
            table.rows.append([l, m, r.verdict.value, r.condition, None, r.witness])
    report = [f"l={row[0]} m={row[1]}: {row[2]}" for row in table.rows]
    return {"sweep": table}, {}, report, {}


COMMANDS = {
    "spectrum": cmd_spectrum,
    "pade": cmd_pade,
    "classify": cmd_classify,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
}


# ----------------------------------------------------------------- parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smstab", description="Spectral-mimetic stability of difference schemes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--out", help="output directory (default: $SMSTAB_OUTPUT_DIR, else stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="per-harmonic eigenvalue table")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--operator", required=True)
    p.add_argument("--chi", type=float)

    p = sub.add_parser("pade", parents=[common], help="Pade coefficients and imaginary-axis modulus")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--eval-imag", type=float, nargs="+", metavar="Y")

    p = sub.add_parser("classify", parents=[common], help="SM classification of a Pade scheme")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--kind", choices=["skew", "selfadjoint"], required=True)
    p.add_argument("--x-max", type=float, default=1e6)

    p = sub.add_parser("simulate", parents=[common], help="time-step a single run")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--operator", required=True)
    p.add_argument("--chi", type=float)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    init = p.add_mutually_exclusive_group()
    init.add_argument("--mode", type=int, default=1)
    init.add_argument("--modes", type=_int_list, help="comma-separated harmonics, unit amplitude each")
    init.add_argument("--gaussian", type=float, metavar="SIGMA")
    p.add_argument("--path", choices=["spectral", "physical"], default="spectral")
    p.add_argument("--keep-every", type=int, default=1)

    p = sub.add_parser("sweep", parents=[common], help="convergence and classification sweeps")
    p.add_argument("dimension", choices=["tau", "M", "lm"])
    p.add_argument("--operator", default="central")
    p.add_argument("--chi", type=float)
    p.add_argument("--M", type=int, default=31)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--mode", type=int, default=1)
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--taus", type=_float_list, default=[0.1, 0.05, 0.025, 0.0125])
    p.add_argument("--Ms", type=_int_list, default=[31, 63, 125])
    p.add_argument("--harmonic", type=int, default=1)
    p.add_argument("--part", choices=["abs", "real", "imag"], default="abs")
    p.add_argument("--ls", type=_int_list, default=[0, 1, 2])
    p.add_argument("--ms", type=_int_list, default=[1, 2])
    p.add_argument("--kind", choices=["skew", "selfadjoint"], default="skew")
    p.add_argument("--x-max", type=float, default=1e6)
    return parser


def _parameters(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "command")}


def run(args, stdout=None) -> int:
    stdout = stdout or sys.stdout
    tables, records, report, summary = COMMANDS[args.command](args)
    directory = output_dir(args.out)
    if directory is not None:
        manifest = RunManifest(args.command, _parameters(args), summary=summary)
        stem = args.command if args.command != "sweep" else f"sweep-{args.dimension}"
        paths = write_outputs(directory, stem, manifest, tables, args.format, records)
        for line in report:
            print(line, file=stdout)
        for path in paths:
            print(f"wrote {path}", file=stdout)
        return 0

    if tables:
        name, table = next(iter(tables.items()))
        if args.format == "csv":
            stdout.write(table.to_csv())
        else:
            stdout.write(table.to_json({"summary": summary} if summary else None))
        for line in report:
            print(line, file=sys.stderr)
    elif args.format == "json":
        stdout.write(json.dumps(next(iter(records.values())), indent=2, sort_keys=True) + "\n")
    else:
        for line in report:
            print(line, file=stdout)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except ArithmeticError as exc:
        print(f"smstab: numerical failure: {exc}", file=sys.stderr)
        return 1
    except (ValueError, TypeError, IndexError) as exc:
        print(f"smstab {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
