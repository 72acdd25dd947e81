"""``fmi`` command line: gen, check, identities, extract.

Exit codes: 0 when every verdict is true, 1 when a check fails, 2 on input or
usage errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .errors import FmiError
from .hamburger_fmi import DEFAULT_LADDER, MomentData, extract_moments
from .instances import random_hamburger_instance, random_np_instance
from .measures import DiskHerglotz, HalfPlaneNevanlinna
from .np_fmi import NpData
from .reports import CheckReport, render_json, render_text
from .serialization import measure_from_json, measure_to_json, problem_from_json, problem_to_json
from .suites import RunConfig, check_hamburger, check_np, identity_sweep

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _seed(value: int | None) -> int:
    if value is None:
        env = os.environ.get("FMI_SEED")
        if env is None or env == "":
            return 0
        try:
            value = int(env)
        except ValueError:
            raise UsageError(f"FMI_SEED is not an integer: {env!r}")
    if not 0 <= value < 2**64:
        raise UsageError("seed must be an unsigned 64-bit integer")
    return value


def _ladder(text: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad ladder {text!r}")
    return vals


def _config(args) -> RunConfig:
    try:
        return RunConfig(
            tol=args.tol,
            grid_size=args.grid,
            seed=_seed(args.seed),
            report_format=args.report,
            y_ladder=getattr(args, "ladder", DEFAULT_LADDER),
        )
    except ValueError as exc:
        raise UsageError(str(exc))


def _read_json(path: str, stdin):
    try:
        if path == "-":
            text = stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        return json.loads(text)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg})")


def _load_inputs(args, stdin):
    """Problem and certificate function, from a gen bundle or from two files."""
    obj = _read_json(args.problem_file, stdin)
    if isinstance(obj, dict) and "certificate" in obj and args.measure_file is None:
        problem_obj, measure_obj = obj.get("problem"), obj["certificate"]
    else:
        if args.measure_file is None:
            raise UsageError("a certificate measure is required")
        problem_obj, measure_obj = obj, _read_json(args.measure_file, stdin)
    problem = problem_from_json(problem_obj)
    w = measure_from_json(measure_obj)
    if isinstance(problem, NpData) != isinstance(w, DiskHerglotz):
        raise UsageError("measure kind does not match problem kind")
    return problem, w


def _emit(reports: list[CheckReport], fmt: str, out) -> int:
    out.write((render_json(reports) if fmt == "json" else render_text(reports)) + "\n")
    return EXIT_OK if all(r.verdict for r in reports) else EXIT_FAIL


def cmd_gen(args, stdin, out) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if args.surplus < 0:
        raise UsageError("--surplus must be nonnegative")
    rng = np.random.default_rng(_seed(args.seed))
    if args.problem == "np":
        problem, w = random_np_instance(rng, args.n)
    else:
        data, sigma = random_hamburger_instance(rng, args.n, args.surplus)
        problem, w = data, HalfPlaneNevanlinna(sigma)
    p_json, m_json = problem_to_json(problem), measure_to_json(w)
    if args.output or args.measure_output:
        if not (args.output and args.measure_output):
            raise UsageError("-o and -m must be given together")
        for path, obj in ((args.output, p_json), (args.measure_output, m_json)):
            try:
                with open(path, "w", encoding="utf-8") as fh:
                    fh.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
            except OSError as exc:
                raise UsageError(f"cannot write {path}: {exc.strerror or exc}")
        return EXIT_OK
    out.write(json.dumps({"problem": p_json, "certificate": m_json}, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_check(args, stdin, out) -> int:
    config = _config(args)
    problem, w = _load_inputs(args, stdin)
    if isinstance(problem, NpData):
        reports = check_np(problem, w, config)
    else:
        reports = check_hamburger(problem, w, config)
    return _emit(reports, config.report_format, out)


def cmd_identities(args, stdin, out) -> int:
    config = _config(args)
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    reports = identity_sweep(args.problem, args.trials, config, break_fi=args.break_fi)
    return _emit(reports, config.report_format, out)


def cmd_extract(args, stdin, out) -> int:
    config = _config(args)
    problem, w = _load_inputs(args, stdin)
    if not isinstance(problem, MomentData):
        raise UsageError("extract needs a hamburger problem")
    report = extract_moments(w.measure, problem, config.y_ladder)
    if config.report_format == "json":
        out.write(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
    else:
        reports = [CheckReport(f"extract:{k}", v) for k, v in sorted(report.verdicts.items())]
        out.write(render_text(reports) + "\n")
        out.write(f"rho={report.rho:.12g}  asymptotic_s2n={report.asymptotic_s2n:.12g}\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help="RNG seed (falls back to $FMI_SEED, then 0)")
    p.add_argument("--tol", type=float, default=1e-9, help="base tolerance (default 1e-9)")
    p.add_argument("--grid", type=int, default=100, help="random evaluation points (default 100)")
    p.add_argument("--report", choices=("json", "text"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fmi", description="Fundamental matrix inequality checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a problem from a random measure")
    g.add_argument("--problem", choices=("np", "hamburger"), required=True)
    g.add_argument("--n", type=int, default=3)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--surplus", type=float, default=0.0, help="raise the top moment (hamburger)")
    g.add_argument("-o", "--output", help="write the problem here")
    g.add_argument("-m", "--measure-output", help="write the certificate here")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="run the check suite on a problem and its certificate")
    c.add_argument("problem_file", nargs="?", default="-")
    c.add_argument("measure_file", nargs="?", default=None)
    _common(c)
    c.set_defaults(func=cmd_check)

    i = sub.add_parser("identities", help="sweep the identity catalogue on random realizations")
    i.add_argument("--problem", choices=("np", "hamburger"), required=True)
    i.add_argument("--trials", type=int, default=50)
    i.add_argument("--break-fi", action="store_true", help="negative control: violate the fundamental identity")
    _common(i)
    i.set_defaults(func=cmd_identities)

    e = sub.add_parser("extract", help="moment extraction report for a hamburger problem")
    e.add_argument("problem_file", nargs="?", default="-")
    e.add_argument("measure_file", nargs="?", default=None)
    e.add_argument("--ladder", type=_ladder, default=DEFAULT_LADDER, help="comma-separated y values")
    _common(e)
    e.set_defaults(func=cmd_extract)
    return parser


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, stdin, stdout)
    except (UsageError, FmiError) as exc:
        stderr.write(f"fmi: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
