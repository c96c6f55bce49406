"""Command-line front end.

Exit codes: 0 analysis completed (whatever the verdicts), 2 parse or usage
error, 3 numeric failure, 4 a demo claim failed.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

import numpy as np

from . import __version__
from .corpus import quadrant
from .demo import run_demo
from .discretize import check_ep_preservation, check_pr_discretization, markov_parameters, zoh_discretize
from .errors import DegenerateInput, ImproperInput, ParseError, PositivityError
from .extpos import EP_TOL, check_external_positivity
from .parse import format_tf, parse_coeff_list, parse_input_spec, parse_tf_text
from .posreal import is_positive_real
from .realize import default_step, io_energy, simulate, to_state_space
from .report import analyze, tf_dict
from .xfer import TransferFunction, decompose_biproper, poles_with_residues, relative_degree, tf_inverse

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_DEMO = 0, 2, 3, 4


class _UsageError(Exception):
    pass


def _system(args) -> TransferFunction:
    if args.tf is not None:
        if args.num is not None or args.den is not None:
            raise _UsageError("give either --tf or --num/--den, not both")
        return parse_tf_text(args.tf)
    if args.num is None:
        raise _UsageError("a system is required: --tf TEXT or --num a,b --den c,d")
    den = parse_coeff_list(args.den) if args.den is not None else [1.0]
    if not any(den):
        raise ParseError("denominator is identically zero")
    return TransferFunction(parse_coeff_list(args.num), den)


def _emit(args, payload, text: str) -> None:
    print(json.dumps(payload, indent=2) if args.json else text)


def _fmt(x) -> str:
    return f"{x:.6g}" if isinstance(x, float) else str(x)


def cmd_check(args) -> int:
    F = _system(args)
    energy = parse_input_spec(args.input) if args.input else None
    rep = analyze(F, args.tol, args.horizon, energy_input=energy)
    if args.json:
        print(rep.to_json(indent=2))
        return EXIT_OK
    lines = [f"system: {format_tf(F)}"]
    if rep.system["cancellations"]:
        lines.append(f"  cancelled pole/zero pairs at {rep.system['cancellations']}")
    lines.append(f"PR: {rep.pr['verdict']}   SPR: {rep.pr['strict']}")
    lines += [f"  [{'ok' if c['passed'] else 'FAIL'}] {c['name']}: {c['detail']}" for c in rep.pr["checks"]]
    if rep.ep is not None:
        lines.append(f"EP: {rep.ep['status']}" + (f" ({rep.ep['certificate']})" if rep.ep["certificate"] else ""))
        if rep.ep["horizon"] is not None:
            lines.append(f"  horizon {_fmt(rep.ep['horizon'])}")
        w = rep.ep["witness"]
        if w is not None:
            lines.append(f"  witness: u = {w['input']}, y({_fmt(w['time'])}) = {_fmt(w['value'])}")
    if rep.decomposition is not None:
        dec = rep.decomposition
        lines.append(f"decomposition: d = {_fmt(dec['d'])}, f0 = {dec['f0']['num']} / {dec['f0']['den']}")
    if rep.inverse is not None:
        inv = rep.inverse
        lines.append(f"inverse: {inv['num']} / {inv['den']} proper={inv['proper']} PR={inv['pr']} EP={inv['ep']}")
    if rep.energy is not None:
        lines.append(f"energy: min J = {_fmt(rep.energy['min_running_integral'])} for u = {rep.energy['input']}")
    lines += [f"error[{k}]: {v}" for k, v in rep.errors.items()]
    print("\n".join(lines))
    return EXIT_OK


def cmd_decompose(args) -> int:
    dec = decompose_biproper(_system(args))
    poles = [{"pole": [p.pole.real, p.pole.imag], "multiplicity": p.multiplicity,
              "residue": [p.residue.real, p.residue.imag], "class": p.axis_class}
             for p in poles_with_residues(dec.f0)] if dec.f0.order else []
    payload = {"d": dec.d, "f0": tf_dict(dec.f0), "poles": poles}
    text = [f"d  = {_fmt(dec.d)}", f"f0 = {format_tf(dec.f0)}"]
    text += [f"  pole {complex(*p['pole']):.6g} (x{p['multiplicity']}, {p['class']}): "
             f"residue {complex(*p['residue']):.6g}" for p in poles]
    _emit(args, payload, "\n".join(text))
    return EXIT_OK


def cmd_invert(args) -> int:
    G = tf_inverse(_system(args))
    proper = relative_degree(G) >= 0
    pr = is_positive_real(G)
    ep = check_external_positivity(G, args.tol, args.horizon).status.value if proper else None
    payload = {**tf_dict(G), "proper": proper, "pr": pr.verdict, "spr": pr.strict, "ep": ep}
    text = f"inverse: {format_tf(G)}\nproper: {proper}\nPR: {pr.verdict}   SPR: {pr.strict}\nEP: {ep}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_discretize(args) -> int:
    F = _system(args)
    if args.steps < 1:
        raise DegenerateInput("--steps must be at least 1")
    dss = zoh_discretize(to_state_space(F), args.dt)
    g = markov_parameters(dss, args.steps)
    epp = check_ep_preservation(F, args.dt, args.steps, args.tol)
    prd = check_pr_discretization(F, args.dt)
    payload = {
        "h": args.dt, "markov": g.tolist(),
        "discrete": tf_dict(prd.discrete),
        "ep": {"continuous": epp.continuous.status.value, "min_markov": epp.min_value,
               "argmin": epp.argmin, "preserved": epp.preserved},
        "pr": {"continuous": prd.continuous_pr, "discrete": prd.report.verdict,
               "discrete_relative_degree": prd.discrete_relative_degree,
               "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                          for c in prd.report.checks]},
    }
    shown = ", ".join(f"{v:.6g}" for v in g[:min(len(g), 8)]) + (", ..." if len(g) > 8 else "")
    text = [f"ZOH at h = {args.dt:g}: G(z) = {format_tf(prd.discrete).replace('s', 'z')}",
            f"g_0..g_{args.steps}: {shown}",
            f"EP: continuous {epp.continuous.status.value}; min g_k = {epp.min_value:.6g} at k = {epp.argmin}"
            f" -> {'preserved' if epp.preserved else 'lost'}",
            f"PR: continuous {prd.continuous_pr}; discrete {prd.report.verdict}"
            + (f" (failing: {', '.join(prd.report.failed)})" if prd.report.failed else "")]
    _emit(args, payload, "\n".join(text))
    return EXIT_OK


def cmd_simulate(args) -> int:
    F = _system(args)
    if relative_degree(F) < 0:
        raise ImproperInput("cannot simulate an improper transfer function")
    spec = parse_input_spec(args.input)
    ss = to_state_space(F)
    h = args.dt if args.dt is not None else default_step(ss)
    if not h > 0 or not args.until >= 0:
        raise DegenerateInput("--dt must be positive and --until nonnegative")
    n = int(round(args.until / h)) + 1
    u = spec.to_signal(h, n)
    y = simulate(ss, u)
    J = io_energy(u, y, ss.D)
    if not np.all(np.isfinite(y.values)):
        raise FloatingPointError("simulation overflowed")
    payload = {"input": spec.describe(), "h": h, "t": u.times.tolist(), "u": u.values.tolist(),
               "y": y.values.tolist(), "J": J.values.tolist(),
               "min_y": float(np.min(y.values)), "min_J": float(np.min(J.values))}
    if args.json:
        print(json.dumps(payload))
    else:
        print("t,u,y,J")
        for row in zip(u.times, u.values, y.values, J.values):
            print(",".join(repr(float(v)) for v in row))
    return EXIT_OK


def cmd_demo(args) -> int:
    rep = run_demo(args.tol)
    print(rep.to_json() if args.json else rep.to_text())
    if not rep.ok:
        print("demo failed: " + ", ".join(rep.failed), file=sys.stderr)
        return EXIT_DEMO
    return EXIT_OK


def cmd_quadrant(args) -> int:
    if args.count < 0:
        raise DegenerateInput("--count must be nonnegative")
    data = quadrant(args.count, args.seed, workers=args.workers, ep_tol=args.tol)
    if args.json:
        print(json.dumps(data, indent=2))
        return EXIT_OK
    statuses = ("positive", "negative", "numeric_positive")
    lines = [f"{len(data['systems'])} systems, seed {args.seed}",
             f"{'':8}" + "".join(f"{s:>18}" for s in statuses)]
    for row in ("PR", "notPR"):
        counts = data["table"].get(row, {})
        lines.append(f"{row:8}" + "".join(f"{counts.get(s, 0):>18}" for s in statuses))
    print("\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--tol", type=float, default=EP_TOL, help="sign tolerance (default %(default)g)")
    common.add_argument("--horizon", type=float, default=None, help="sampling horizon for numeric EP checks")
    system = argparse.ArgumentParser(add_help=False)
    system.add_argument("--tf", help='transfer function text, e.g. "(2s+1)/(s+1)"')
    system.add_argument("--num", help="numerator coefficients, descending powers: a,b,c")
    system.add_argument("--den", help="denominator coefficients, descending powers")

    p = argparse.ArgumentParser(prog="positivity",
                                description="Positive realness and external positivity of SISO systems.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common, system], help="PR, SPR and EP analysis with full report")
    c.add_argument("--input", help="optional nonnegative input for the energy check")
    c.set_defaults(func=cmd_check)
    sub.add_parser("decompose", parents=[common, system], help="split into d + F0").set_defaults(func=cmd_decompose)
    sub.add_parser("invert", parents=[common, system], help="analyse 1/F").set_defaults(func=cmd_invert)
    d = sub.add_parser("discretize", parents=[common, system], help="ZOH discretization and Markov parameters")
    d.add_argument("--dt", type=float, required=True)
    d.add_argument("--steps", type=int, default=50)
    d.set_defaults(func=cmd_discretize)
    s = sub.add_parser("simulate", parents=[common, system], help="zero-state response to an input")
    s.add_argument("--input", required=True, help="step | pulse:t0,t1,amp | ramp:slope | file:path.csv")
    s.add_argument("--until", type=float, default=10.0)
    s.add_argument("--dt", type=float, default=None)
    s.set_defaults(func=cmd_simulate)
    sub.add_parser("demo", parents=[common], help="check every independence claim").set_defaults(func=cmd_demo)
    q = sub.add_parser("quadrant", parents=[common], help="classify random systems into the PR x EP table")
    q.add_argument("--count", type=int, default=100)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--workers", type=int, default=4)
    q.set_defaults(func=cmd_quadrant)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (_UsageError, ParseError, DegenerateInput, ImproperInput) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PositivityError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
