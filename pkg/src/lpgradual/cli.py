"""Command-line front end.

Exit codes: 0 success (or member), 1 usage / I/O / parse error,
2 solver did not converge, 3 vector not in the degree space.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .dynamics import DEFAULT_MAX_ITER, DEFAULT_TOL
from .framework import FrameworkError, load_framework, load_waf
from .inverse import evaluate_scale, invert, membership, scale_to_feasible
from .lpfamily import solve_scheme
from .semantics import SEMANTICS, format_ranking, get_spec, ranking

EXIT_OK, EXIT_USAGE, EXIT_NOCONV, EXIT_OUTSIDE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for non-convergence
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _semantics_name(s: str) -> str:
    key = s.strip().lower()
    if key not in SEMANTICS:
        raise argparse.ArgumentTypeError(f"unknown semantics {s!r} (choose from {', '.join(SEMANTICS)})")
    return key


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--semantics", type=_semantics_name, default="hc", metavar="{" + ",".join(SEMANTICS) + "}")
    p.add_argument("--input", "--graph", dest="input", required=True, metavar="PATH")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    p.add_argument("--delta", type=float, default=0.5, help="remote-attack discount (hc-remote)")
    p.add_argument("--depth", type=int, default=2, help="remote-attack path length (hc-remote)")
    p.add_argument("--precision", type=int, default=6)
    return p


def _parse_vector(text: str, n: int, what: str) -> np.ndarray:
    """Inline comma list, or a path to a JSON array."""
    path = Path(text)
    if path.suffix == ".json" or (path.exists() and path.is_file()):
        try:
            values = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read {what} from {text}: {exc}") from exc
        if not isinstance(values, list):
            raise UsageError(f"{what} file must hold a JSON array")
    else:
        values = [s for s in text.replace(" ", "").split(",") if s]
    try:
        v = np.array([float(s) for s in values])
    except (TypeError, ValueError) as exc:
        raise UsageError(f"{what}: not a list of numbers") from exc
    if v.shape != (n,):
        raise UsageError(f"{what} has {v.size} entries, graph has {n} arguments")
    if np.any(~((v >= 0) & (v <= 1))):
        raise UsageError(f"{what} entries must lie in [0, 1]")
    return v


def _fmt(x: float, prec: int) -> str:
    return f"{x:.{prec}f}"


def _print_vector(ids, v, prec, flagged=()):
    width = max(len(a) for a in ids)
    for i, (a, x) in enumerate(zip(ids, v)):
        mark = "  *" if i in flagged else ""
        print(f"{a:<{width}}  {_fmt(x, prec)}{mark}")


def _spec(args, f):
    try:
        return get_spec(args.semantics, f, delta=args.delta, depth=args.depth)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_solve(args) -> int:
    wf = load_waf(args.input)
    f = wf.framework
    spec = _spec(args, f)
    res = solve_scheme(spec, wf.weights, args.tol, args.max_iter)
    if not res.converged:
        print(
            f"error: no convergence after {res.iterations} iterations (bracket gap {res.bracket_gap:.3e})",
            file=sys.stderr,
        )
        return EXIT_NOCONV
    print(f"semantics: {spec.name}")
    _print_vector(f.argument_ids, res.point, args.precision)
    print(f"ranking: {format_ranking(ranking(res.point, f.argument_ids))}")
    return EXIT_OK


def cmd_invert(args) -> int:
    f = load_framework(args.input)
    spec = _spec(args, f)
    x = _parse_vector(args.degrees, f.n, "degrees")
    rep = invert(spec, x)
    bad = {i for i, _ in rep.violations}
    print(f"semantics: {spec.name}")
    _print_vector(f.argument_ids, rep.candidate_weights, args.precision, bad)
    if rep.in_degree_space:
        print("verdict: IN")
        return EXIT_OK
    names = ", ".join(f.argument_ids[i] for i in sorted(bad))
    print(f"verdict: OUT (violations: {names})")
    return EXIT_OUTSIDE


def cmd_scale(args) -> int:
    f = load_framework(args.input)
    spec = _spec(args, f)
    y = _parse_vector(args.target, f.n, "target")
    if not np.any(y > 0):
        raise UsageError("target must be non-zero")
    prec = args.precision
    print(f"semantics: {spec.name}")
    if args.t is None:
        rep = scale_to_feasible(spec, y)
        print(f"t_star: {_fmt(rep.t_star, prec)}")
        print("scaled degrees:")
        _print_vector(f.argument_ids, rep.scaled_degrees, prec)
        print("weights:")
        _print_vector(f.argument_ids, rep.weights, prec)
        return EXIT_OK
    rep = evaluate_scale(spec, y, args.t)
    bad = {i for i, _ in rep.violations}
    print(f"t: {_fmt(args.t, prec)}")
    print("scaled degrees:")
    _print_vector(f.argument_ids, args.t * y, prec)
    print("weights:")
    _print_vector(f.argument_ids, rep.candidate_weights, prec, bad)
    if rep.in_degree_space:
        print("feasible: yes")
        return EXIT_OK
    print("feasible: no")
    return EXIT_OUTSIDE


def cmd_check(args) -> int:
    f = load_framework(args.input)
    spec = _spec(args, f)
    x = _parse_vector(args.degrees, f.n, "degrees")
    ok = membership(spec, x)
    print(f"member: {'yes' if ok else 'no'}")
    if args.radial is not None:
        if args.radial < 2:
            raise UsageError("--radial needs at least 2 grid intervals")
        for k in range(args.radial + 1):
            t = k / args.radial
            inside = membership(spec, t * x)
            ok = ok and inside
            print(f"t={_fmt(t, args.precision)} {'IN' if inside else 'OUT'}")
        print(f"radial: {'yes' if ok else 'no'}")
    return EXIT_OK if ok else EXIT_OUTSIDE


def cmd_sample(args) -> int:
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    f = load_framework(args.input)
    spec = _spec(args, f)
    rng = np.random.default_rng(args.seed)
    weights = rng.random((args.count, f.n))
    rows = []
    for w in weights:
        res = solve_scheme(spec, w, args.tol, args.max_iter)
        if not res.converged:
            print(f"error: no convergence for sampled weights {w.tolist()}", file=sys.stderr)
            return EXIT_NOCONV
        rows.append(np.concatenate([w, res.point]))
    fmt = repr if args.precision_given is None else (lambda x: _fmt(x, args.precision_given))
    header = [f"w_{a}" for a in f.argument_ids] + [f"x_{a}" for a in f.argument_ids]
    try:
        out = sys.stdout if args.output == "-" else open(args.output, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise UsageError(f"cannot write {args.output}: {exc}") from exc
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        for r in rows:
            writer.writerow([fmt(float(v)) for v in r])
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lpgradual", description="Weighted L^p-based gradual semantics and their inverses.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _common()

    p = sub.add_parser("solve", parents=[common], help="compute acceptability degrees")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("invert", parents=[common], help="recover weights from degrees")
    p.add_argument("--degrees", required=True, help="comma list or JSON array file")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("scale", parents=[common], help="largest feasible rescaling of a target")
    p.add_argument("--target", required=True, help="comma list or JSON array file")
    p.add_argument("--t", type=float, default=None, help="evaluate this scale instead")
    p.set_defaults(func=cmd_scale)

    p = sub.add_parser("check", parents=[common], help="degree-space membership")
    p.add_argument("--degrees", required=True)
    p.add_argument("--radial", type=int, default=None, metavar="N", help="also probe the segment [0, x] on N steps")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sample", parents=[common], help="sample the degree space to CSV")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    # sample writes full precision unless --precision is given explicitly
    args.precision_given = args.precision if any(a.startswith("--precision") for a in argv) else None
    try:
        return args.func(args)
    except (FrameworkError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
