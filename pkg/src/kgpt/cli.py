"""Command-line front end.

Exit codes: 0 success, 1 requested level has no bound state, 2 invalid
parameters, 3 numerical convergence failure.
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from .errors import ConvergenceError, DomainError, NoBoundState, ParameterError, PoleError
from .oracle import compare_level, default_grids
from .potential import (
    ModelParams,
    PTSymmetric,
    QSymmetric,
    Reflectionless,
    Symmetric,
    from_special_case,
    potential_scan,
    scan_to_csv,
    scan_to_json,
)
from .schemas import SCHEMA_VERSION
from .spectrum import enumerate_spectrum, solve_level
from .wavefunction import (
    GridSpec,
    make_pt_state,
    make_state,
    ode_residual_max,
    samples_to_csv,
    samples_to_json,
)

EXIT_OK, EXIT_NO_BOUND, EXIT_PARAMS, EXIT_CONVERGENCE = 0, 1, 2, 3
VERIFY_TOL = 1e-6


def _floats(text):
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text):
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _add_model(p):
    p.add_argument("--mu", type=float, default=1.0, help="rest mass (default 1)")
    p.add_argument("--alpha", type=float, default=1.0, help="inverse range (default 1)")
    p.add_argument("--D", type=float, default=1.0, help="well depth (default 1)")
    p.add_argument("--q", type=float, default=1.0, help="deformation q > 0 (default 1)")
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--c", type=float, default=1.0)


def _add_output(p):
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.add_argument("--output", help="write to this path instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="kgpt",
        description="Klein-Gordon bound states in the q-deformed modified Poschl-Teller well.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="all bound levels")
    _add_model(p)
    _add_output(p)

    p = sub.add_parser("wavefunction", help="tabulate a normalized eigenfunction")
    _add_model(p)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--rmin", type=float, default=-10.0)
    p.add_argument("--rmax", type=float, default=10.0)
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--epsilon", type=float, help="PT-symmetric variant with q_c = exp(2i alpha epsilon)")
    _add_output(p)

    p = sub.add_parser("potential", help="potential curves for several q")
    p.add_argument("--q-list", type=_floats, default=[1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
    p.add_argument("--D", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--rmin", type=float, default=0.0)
    p.add_argument("--rmax", type=float, default=5.0)
    p.add_argument("--points", type=int, default=501)
    _add_output(p)

    p = sub.add_parser("special", help="spectrum of one of the special-case potentials")
    p.add_argument("--case", required=True, choices=("reflectionless", "q-symmetric", "symmetric", "pt"))
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--D", type=float)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--c", type=float, default=1.0)
    _add_output(p)

    p = sub.add_parser("verify", help="closed form vs finite-difference oracle")
    _add_model(p)
    p.add_argument("--n", type=int, help="level to check (default: every bound level)")
    p.add_argument("--points", type=_ints, default=[2001, 4001],
                   help="grid sizes with halving spacing, e.g. 2001,4001")
    p.add_argument("--half-width", type=float, help="grid half-width L (default: sized from xi)")
    _add_output(p)

    p = sub.add_parser("residual", help="five-point ODE residual of the closed form")
    _add_model(p)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--h", type=_floats, default=[4e-3, 2e-3, 1e-3])
    p.add_argument("--half-width", type=float, default=15.0)
    p.add_argument("--dps", type=int, default=30, help="mpmath digits; 0 for double precision")
    p.add_argument("--epsilon", type=float, help="PT-symmetric variant with q_c = exp(2i alpha epsilon)")
    _add_output(p)
    return parser


# Formatting ---------------------------------------------------------------

def _clean(obj):
    if isinstance(obj, float):
        return None if math.isnan(obj) else obj
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.floating):
        return _clean(float(obj))
    return obj


def to_json(command, payload):
    doc = {"schema_version": SCHEMA_VERSION, "command": command, **payload}
    return json.dumps(_clean(doc), indent=2, allow_nan=False) + "\n"


def _fmt(value):
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def to_table(header, rows):
    cells = [[_fmt(v) for v in row] for row in rows]
    widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"


def to_csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _render(args, command, payload, header, rows):
    if args.format == "json":
        return to_json(command, payload)
    if args.format == "csv":
        return to_csv(header, rows)
    return to_table(header, rows)


# Subcommands --------------------------------------------------------------

def _model(args):
    return ModelParams(mu=args.mu, alpha=args.alpha, D=args.D, q=args.q, hbar=args.hbar, c=args.c)


def _level_rows(levels):
    return [[lv.n, lv.energy, lv.k, lv.xi] for lv in levels]


def cmd_spectrum(args):
    spectrum = enumerate_spectrum(_model(args))
    out = _render(args, "spectrum", spectrum.to_dict(), ["n", "E", "k", "xi"], _level_rows(spectrum.levels))
    status = EXIT_OK if spectrum.count else EXIT_NO_BOUND
    note = None if spectrum.count else "empty spectrum: no bound states for these parameters"
    return out, status, note


def _special_case(args):
    def need(name, value):
        if value is None:
            raise ParameterError(f"--{name} is required for --case {args.case}")
        return value

    if args.case == "reflectionless":
        lam = need("lambda", args.lam)
        if not float(lam).is_integer():
            raise ParameterError(f"invariant violated: reflectionless lambda is an integer (got {lam})")
        return Reflectionless(int(lam))
    if args.case == "q-symmetric":
        return QSymmetric(need("lambda", args.lam), need("q", args.q))
    if args.case == "symmetric":
        return Symmetric(need("lambda", args.lam))
    return PTSymmetric(need("D", args.D), args.alpha, need("epsilon", args.epsilon))


def cmd_special(args):
    case = _special_case(args)
    params = from_special_case(case, mu=args.mu, hbar=args.hbar, c=args.c)
    quant = params.quantization_params() if args.case == "pt" else params
    spectrum = enumerate_spectrum(quant)
    payload = {"case": args.case, "params": params.to_dict(),
               "levels": [lv.to_dict() for lv in spectrum.levels], "count": spectrum.count}
    out = _render(args, "special", payload, ["n", "E", "k", "xi"], _level_rows(spectrum.levels))
    status = EXIT_OK if spectrum.count else EXIT_NO_BOUND
    return out, status, None if spectrum.count else "empty spectrum"


def _state(args):
    if args.epsilon is not None:
        pt = from_special_case(PTSymmetric(args.D, args.alpha, args.epsilon),
                               mu=args.mu, hbar=args.hbar, c=args.c)
        level = solve_level(pt.quantization_params(), args.n)
        return pt, make_pt_state(pt, level)
    params = _model(args)
    level = solve_level(params, args.n)
    return params, make_state(params, level)


def cmd_wavefunction(args):
    if args.points < 2 or not args.rmin < args.rmax:
        raise ParameterError("invariant violated: rmin < rmax and points >= 2")
    params, state = _state(args)
    r = np.linspace(args.rmin, args.rmax, args.points)
    psi = state(r)
    payload = {"params": params.to_dict(), "level": state.level.to_dict(),
               "norm_constant": state.norm_constant, "samples": samples_to_json(r, psi)}
    if args.format == "csv":
        return samples_to_csv(r, psi), EXIT_OK, None
    if np.iscomplexobj(psi):
        header, rows = ["r", "psi_real", "psi_imag"], [[float(x), float(y.real), float(y.imag)] for x, y in zip(r, psi)]
    else:
        header, rows = ["r", "psi_real"], [[float(x), float(y)] for x, y in zip(r, psi)]
    return _render(args, "wavefunction", payload, header, rows), EXIT_OK, None


def cmd_potential(args):
    curves = potential_scan(args.q_list, args.D, args.alpha, args.rmin, args.rmax, args.points)
    if args.format == "csv":
        return scan_to_csv(curves), EXIT_OK, None
    payload = scan_to_json(curves, args.D, args.alpha)
    rows = [[c.q, c.r_min, c.v_min] for c in curves]
    return _render(args, "potential", payload, ["q", "r_min", "v_min"], rows), EXIT_OK, None


def cmd_verify(args):
    params = _model(args)
    if args.n is None:
        levels = list(range(max(1, enumerate_spectrum(params).count)))
    else:
        levels = [args.n]
    reports = []
    for n in levels:
        if args.half_width is None:
            base = default_grids(params, n)[0]
            half_width = base.half_width
        else:
            half_width = args.half_width
        grids = [GridSpec(half_width, p) for p in args.points]
        reports.append(compare_level(params, n, grids))

    def agree(rep):
        if rep.e_analytic is None and rep.e_numeric is None:
            return True
        return rep.delta is not None and rep.delta <= VERIFY_TOL * params.rest_energy

    payload = {"params": params.to_dict(), "tolerance": VERIFY_TOL,
               "reports": [dict(r.to_dict(), agree=agree(r)) for r in reports]}
    header = ["n", "E_analytic", "E_numeric", "delta", "agree"]
    rows = [[r.n, r.e_analytic, r.e_numeric, r.delta, "yes" if agree(r) else "NO"] for r in reports]
    out = _render(args, "verify", payload, header, rows)
    unbound = [r.n for r in reports if r.e_analytic is None]
    if unbound:
        return out, EXIT_NO_BOUND, f"no bound state for n={unbound}"
    return out, EXIT_OK, None


def cmd_residual(args):
    params, state = _state(args)
    dps = args.dps or None
    runs = []
    for h in args.h:
        grid = GridSpec.from_spacing(args.half_width, h)
        runs.append({"h": h, "residual": ode_residual_max(state, grid, dps=dps)})
    ratios = [a["residual"] / b["residual"] for a, b in zip(runs, runs[1:])]
    payload = {"params": params.to_dict(), "level": state.level.to_dict(),
               "half_width": args.half_width, "dps": dps, "runs": runs, "ratios": ratios}
    rows = [[r["h"], r["residual"], ratios[i - 1] if i else None] for i, r in enumerate(runs)]
    return _render(args, "residual", payload, ["h", "residual", "ratio"], rows), EXIT_OK, None


COMMANDS = {
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "potential": cmd_potential,
    "special": cmd_special,
    "verify": cmd_verify,
    "residual": cmd_residual,
}


def run(argv=None, stdout=None, stderr=None):
    """Parse ``argv``, dispatch, write output; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARAMS if exc.code else EXIT_OK
    try:
        out, status, note = COMMANDS[args.command](args)
    except NoBoundState as exc:
        print(f"kgpt {args.command}: {exc}", file=stderr)
        return EXIT_NO_BOUND
    except (ParameterError, DomainError, PoleError) as exc:
        print(f"kgpt {args.command}: invalid parameters: {exc}", file=stderr)
        return EXIT_PARAMS
    except ConvergenceError as exc:
        print(f"kgpt {args.command}: convergence failure: {exc}", file=stderr)
        return EXIT_CONVERGENCE
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(out)
    else:
        stdout.write(out)
    if note:
        print(f"kgpt {args.command}: {note}", file=stderr)
    return status


def main():
    sys.exit(run())
