"""Command-line front end: ``glshp solve | wronskian | compare``.

Exit codes: 0 success, 1 input error, 2 no convergence, 3 Wronskian
certificate failed, 4 internal invariant breached.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys

from .fracalg import DomainError, Exponent
from .hpm import GroupingError, bootstrap, extract_basis
from .lsq import DEFAULT_SEED, InconsistentIC, NoConvergence, minimize
from .pipeline import CertificateError, Solution, prepare, solve
from .problemfile import ProblemFileError, parse_problem_file
from .problems import EXAMPLES, ProblemSpec, validate
from .wronskian import DEFAULT_THRESHOLD, closed_form_w3, wronskian_at

log = logging.getLogger("glshp")

EXIT_OK, EXIT_INPUT, EXIT_NOCONV, EXIT_CERT, EXIT_INVARIANT = 0, 1, 2, 3, 4
DOMINANCE_SLACK = 1e-12


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _float_arg(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return v


def _grid_arg(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    try:
        nx, nt = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like NxM, got {text!r}") from None
    if nx < 2 or nt < 2:
        raise argparse.ArgumentTypeError("grid needs at least 2 points per side")
    return nx, nt


def _sweep_arg(text: str) -> tuple[float, ...]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"sweep must look like start:stop:step, got {text!r}")
    a, b, step = (_float_arg(p) for p in parts)
    if not (0.0 < a <= b <= 1.0):
        raise argparse.ArgumentTypeError("sweep bounds must satisfy 0 < start <= stop <= 1")
    if not step > 0.0:
        raise argparse.ArgumentTypeError("sweep step must be positive")
    n = int(math.floor((b - a) / step + 1e-9))
    return tuple(round(a + k * step, 12) for k in range(n + 1))


def _seed_arg(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="glshp", description="Least-squares homotopy fits for space-fractional wave equations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--example", type=int, choices=sorted(EXAMPLES), help="built-in example")
        src.add_argument("--problem", metavar="PATH", help="problem declaration file")
        sp.add_argument("--alpha", type=_float_arg, help="order alpha in (0, 1]")
        sp.add_argument("--beta", type=_float_arg, help="order beta in (0, 1]")
        sp.add_argument("--out", metavar="PATH", help="output file (default: standard output)")

    s = sub.add_parser("solve", help="fit the ansatz and report coefficients")
    common(s)
    s.add_argument("--sweep", type=_sweep_arg, metavar="A:B:STEP", help="run over several alpha values")
    s.add_argument("--grid", type=_grid_arg, metavar="NxM", help="emit solution values on an NxM lattice")
    s.add_argument("--format", choices=("csv", "json"), help="csv (grid) or json (report)")
    s.add_argument("--epsilon", type=_float_arg, help="classify the fit as an epsilon-approximate solution")
    s.add_argument("--x", type=_float_arg, help="Wronskian witness x")
    s.add_argument("--t", type=_float_arg, help="Wronskian witness t")
    s.add_argument("--seed", type=_seed_arg, default=DEFAULT_SEED, help="multi-start seed (default 0x5EED)")

    w = sub.add_parser("wronskian", help="certify the basis at a point")
    common(w)
    w.add_argument("--unknown", choices=("u", "v"), default="u")
    w.add_argument("--x", type=_float_arg)
    w.add_argument("--t", type=_float_arg)
    w.add_argument("--threshold", type=_float_arg, default=DEFAULT_THRESHOLD)

    c = sub.add_parser("compare", help="J at the homotopy start against the fitted J")
    common(c)
    c.add_argument("--sweep", type=_sweep_arg, metavar="A:B:STEP")
    c.add_argument("--seed", type=_seed_arg, default=DEFAULT_SEED)
    return p


# --- helpers ------------------------------------------------------------------


def load_problem(args) -> ProblemSpec:
    if args.example is not None:
        spec = EXAMPLES[args.example]()
    else:
        try:
            spec = parse_problem_file(args.problem, check=False)
        except OSError as exc:
            raise InputError(f"cannot read {args.problem}: {exc.strerror}") from None
    alpha = spec.alpha if args.alpha is None else args.alpha
    beta = spec.beta if args.beta is None else args.beta
    spec = spec.with_orders(alpha, beta)
    diags = validate(spec)
    if diags:
        raise InputError("; ".join(diags))
    return spec


def _orders_for(spec: ProblemSpec, alpha: float, beta_given) -> ProblemSpec:
    """Sweep point: beta follows alpha unless fixed on the command line."""
    beta = beta_given if beta_given is not None else (alpha if spec.kind == "coupled" else spec.beta)
    return spec.with_orders(alpha, beta)


def _witness(args, spec):
    x = spec.witness[0] if args.x is None else args.x
    t = spec.witness[1] if args.t is None else args.t
    if not (0.0 <= x <= 1.0 and 0.0 <= t <= 1.0):
        raise InputError(f"witness point ({x}, {t}) is outside the unit square")
    return (x, t)


def _write(text: str, out):
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _g(v: float) -> str:
    return "%.17g" % v


def solution_report(sol: Solution, epsilon=None) -> dict:
    setup = sol.setup
    p = sol.problem
    basis = {}
    for w in p.unknowns:
        a = setup.ansatzes[w]
        coeffs = sol.coefficients(w)
        basis[w] = [
            {
                "name": f"{a.prefix}{i}",
                "group": a.basis.labels[i],
                "function": str(f),
                "value": coeffs[i],
                "fixed": i in a.fixed,
            }
            for i, f in enumerate(a.basis.functions)
        ]
    report = {
        "problem": p.name,
        "kind": p.kind,
        "alpha": p.alpha,
        "beta": p.beta,
        "basis": basis,
        "params": dict(zip(setup.names, sol.fit.params)),
        "jvalue": sol.fit.jvalue,
        "j_hpm": setup.j_hpm,
        "grad_norm": sol.fit.grad_norm,
        "iterations": sol.fit.iterations,
        "converged": sol.fit.converged,
        "start": sol.fit.start,
        "wronskian": {w: setup.bases[w].certificate.as_dict() for w in p.unknowns},
        "epsilon": None if epsilon is None else sol.classify(epsilon).as_dict(),
    }
    return report


def grid_rows(sol: Solution, nx: int, nt: int):
    X, T, vals = sol.grid(nx, nt)
    cols = [X.ravel(), T.ravel()] + [vals[w].ravel() for w in sol.problem.unknowns]
    return list(zip(*cols))


def _csv(header, rows) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    for r in rows:
        wr.writerow([_g(v) if isinstance(v, float) else v for v in r])
    return buf.getvalue()


# --- commands -----------------------------------------------------------------


def cmd_solve(args) -> int:
    spec = load_problem(args)
    witness = _witness(args, spec)
    alphas = args.sweep if args.sweep else (spec.alpha,)
    fmt = args.format or ("csv" if args.grid else "json")
    if fmt == "csv" and not args.grid:
        raise InputError("--format csv needs --grid")
    if args.epsilon is not None and not args.epsilon > 0.0:
        raise InputError("--epsilon must be positive")
    reports, rows = [], []
    status = EXIT_OK
    for a in alphas:
        run = _orders_for(spec, a, args.beta) if args.sweep else spec
        try:
            sol = solve(run, seed=args.seed, witness=witness)
        except NoConvergence as exc:
            log.error("alpha=%s: %s", a, exc)
            sol = exc.solution
            status = EXIT_NOCONV
        rep = solution_report(sol, args.epsilon)
        if args.grid and fmt == "json":
            X, T, vals = sol.grid(*args.grid)
            rep["grid"] = {"x": X[0].tolist(), "t": T[:, 0].tolist(), **{w: v.tolist() for w, v in vals.items()}}
        reports.append(rep)
        if args.grid and fmt == "csv":
            prefix = (a,) if args.sweep else ()
            rows.extend(prefix + r for r in grid_rows(sol, *args.grid))
    if fmt == "csv":
        header = (["alpha"] if args.sweep else []) + ["x", "t"] + list(spec.unknowns)
        _write(_csv(header, rows), args.out)
    else:
        _write(_json({"runs": reports} if args.sweep else reports[0]), args.out)
    return status


def _closed_form(args, spec, witness):
    if args.example is None:
        return None
    variant = "t-first" if spec.basis_order[:2] == ("t", "x") else "x-first"
    which = "alpha" if args.unknown == "u" else "beta"
    return closed_form_w3(spec.orders, variant, which)(*witness)


def cmd_wronskian(args) -> int:
    spec = load_problem(args)
    if args.unknown not in spec.unknowns:
        raise InputError(f"problem {spec.name} has no unknown {args.unknown}")
    witness = _witness(args, spec)
    guess = bootstrap(spec, args.unknown)
    basis = extract_basis(guess, spec.orders, spec.basis_order)
    order = Exponent(0, 1, 0) if args.unknown == "u" else Exponent(0, 0, 1)
    rep = wronskian_at(basis.functions, witness[0], witness[1], order, spec.orders, args.threshold)
    out = {"problem": spec.name, "unknown": args.unknown}
    out.update(rep.as_dict())
    out["functions"] = [str(f) for f in basis.functions]
    cf = _closed_form(args, spec, witness) if len(basis) == 3 else None
    out["closed_form"] = cf
    out["closed_form_delta"] = None if cf is None else rep.value - cf
    _write(_json(out), args.out)
    return EXIT_OK if rep.independent else EXIT_CERT


def cmd_compare(args) -> int:
    spec = load_problem(args)
    alphas = args.sweep if args.sweep else (spec.alpha,)
    rows = []
    status = EXIT_OK
    for a in alphas:
        run = _orders_for(spec, a, args.beta)
        setup = prepare(run)
        j_hpm = setup.j_hpm
        try:
            fit = minimize(setup.functional, setup.start, seed=args.seed)
        except NoConvergence as exc:
            log.error("alpha=%s: %s", a, exc)
            fit = exc.result
            status = max(status, EXIT_NOCONV)
        j = fit.jvalue
        ratio = j / j_hpm if j_hpm > 0.0 else 0.0
        rows.append((a, j_hpm, j, ratio))
        if not j <= j_hpm + DOMINANCE_SLACK:
            log.error("alpha=%s: fitted J %.17g exceeds J at the homotopy start %.17g", a, j, j_hpm)
            status = EXIT_INVARIANT
    _write(_csv(["alpha", "J_hpm", "J_glshp", "ratio"], rows), args.out)
    return status


COMMANDS = {"solve": cmd_solve, "wronskian": cmd_wronskian, "compare": cmd_compare}


def _setup_logging():
    level = os.environ.get("GLSHP_LOG", "error").upper()
    if level not in ("ERROR", "INFO", "DEBUG"):
        level = "ERROR"
    logging.basicConfig(level=getattr(logging, level), format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv=None) -> int:
    _setup_logging()
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return COMMANDS[args.command](args)
    except CertificateError as exc:
        print(f"glshp: {exc}", file=sys.stderr)
        return EXIT_CERT
    except (InputError, ProblemFileError, DomainError, GroupingError, InconsistentIC, ValueError) as exc:
        print(f"glshp: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
