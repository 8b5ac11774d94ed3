"""Command-line interface: ``electoral-trade {solve,verify,sweep,population,oracle-compare}``.

Exit codes: 0 success, 1 constraint or verification failure, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import records as rec
from .bargaining import DEFAULT_GRID, nash_oracle, solve_pr, solve_smd
from .errors import ConstraintError, OracleError
from .preference import condorcet_winner
from .records import ScenarioParseError
from .theorem import (
    DEFAULT_MAX_DRAWS,
    PARAMS,
    SweepAxis,
    SweepSpec,
    compare,
    sample_scenarios,
    sweep,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _write(text: str, path: str | None, force: bool) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    if os.path.exists(path) and not force:
        raise UsageError(f"refusing to overwrite existing file {path} (use --force)")
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror or exc}") from None


def _oracle_fields(outcome, grid: int, tolerance: float) -> tuple[dict, bool]:
    t_o, m_o = nash_oracle(outcome.gov_ideal, outcome.t_f, grid=grid, tol=tolerance)
    dt, dm = t_o - outcome.t_star, m_o - outcome.m_star
    ok = abs(dt) <= tolerance and abs(dm) <= tolerance
    return {"oracle_t": t_o, "oracle_m": m_o, "oracle_dt": dt, "oracle_dm": dm,
            "oracle_ok": ok}, ok


def cmd_solve(args) -> int:
    sf = rec.load_scenario_file(args.file)
    if args.both:
        if sf.alpha is None or (sf.t_L is None and sf.labels is None):
            raise UsageError("--both needs coalition parameters (t_L/t_S or labels, alpha)")
        scen = sf.scenario(with_coalition=True)
        outcomes = [solve_smd(scen.t_m, scen.t_f),
                    solve_pr(scen.coalition, scen.t_m, scen.t_f)]
        report = compare(*outcomes)
    else:
        scen = sf.scenario()
        if sf.polity == "pr":
            outcomes = [solve_pr(scen.coalition, scen.t_m, scen.t_f)]
        else:
            outcomes = [solve_smd(scen.t_m, scen.t_f)]
        report = None

    rows, all_ok = [], True
    for out in outcomes:
        row = {"polity": out.polity, **rec.scenario_fields(scen.params()),
               **rec.outcome_fields(out)}
        if report is not None:
            row.update(rec.report_fields(report))
        if args.oracle:
            fields, ok = _oracle_fields(out, args.grid, args.tolerance)
            row.update(fields)
            all_ok &= ok
        rows.append(row)
    _write(rec.emit(rows, args.format), args.output, args.force)
    if not all_ok:
        print(f"error: oracle disagrees with closed form beyond {args.tolerance:g}",
              file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _parse_bounds(items: list[str]) -> dict:
    bounds = {}
    for item in items or []:
        name, _, rng = item.partition("=")
        lo, sep, hi = rng.partition(":")
        if not sep:
            raise UsageError(f"--bound expects NAME=LOW:HIGH, got {item!r}")
        try:
            bounds[name.strip()] = (float(lo), float(hi))
        except ValueError:
            raise UsageError(f"--bound expects numbers, got {item!r}") from None
    return bounds


def cmd_verify(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    scenarios, stats = sample_scenarios(args.seed, args.n, _parse_bounds(args.bound),
                                        max_draws=args.max_draws)
    rows, reports = [], []
    for s in scenarios:
        smd = solve_smd(s.t_m, s.t_f)
        pr = solve_pr(s.coalition, s.t_m, s.t_f)
        report = compare(smd, pr)
        reports.append(report)
        rows.append({"tag": s.tag, **rec.scenario_fields(s.params()),
                     "ideal": pr.gov_ideal, **rec.report_fields(report)})
    _write(rec.emit(rows, args.format), args.output, args.force)

    passed = sum(r.holds for r in reports)
    tg = [r.tariff_gap for r in reports]
    mg = [r.transfer_gap for r in reports]
    print(f"{passed}/{len(reports)} hold; tariff gap min {min(tg):.6g} max {max(tg):.6g}; "
          f"transfer gap min {min(mg):.6g} max {max(mg):.6g}; "
          f"{stats.draws} draws (acceptance {stats.acceptance_rate:.3f})",
          file=sys.stderr)
    return EXIT_OK if passed == len(reports) else EXIT_FAIL


def _parse_axis(item: str) -> SweepAxis:
    name, _, rng = item.partition("=")
    parts = rng.split(":")
    if len(parts) != 3:
        raise UsageError(f"--axis expects NAME=START:STOP:STEP, got {item!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"--axis expects numbers, got {item!r}") from None
    # START:STOP:STEP reads like a slice: STOP itself is excluded
    return SweepAxis(name.strip(), start, stop, step, inclusive=False)


def _parse_fixed(items: list[str]) -> dict:
    fixed = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--set expects NAME=VALUE, got {item!r}")
        try:
            fixed[name.strip()] = float(value)
        except ValueError:
            raise UsageError(f"--set expects a number, got {item!r}") from None
    return fixed


def sweep_rows(table) -> list[dict]:
    rows = []
    for r in table.records:
        rows.append({"status": r.status, **rec.scenario_fields(r.inputs),
                     **rec.outcome_fields(r.smd, "smd_"),
                     **rec.outcome_fields(r.pr, "pr_"),
                     **rec.report_fields(r.report)})
    return rows


def cmd_sweep(args) -> int:
    try:
        spec = SweepSpec(tuple(_parse_axis(a) for a in args.axis), _parse_fixed(args.set))
        table = sweep(spec)
    except ValueError as exc:
        if isinstance(exc, ConstraintError):
            raise
        raise UsageError(str(exc)) from None
    _write(rec.emit(sweep_rows(table), args.format), args.output, args.force)
    return EXIT_OK


def cmd_population(args) -> int:
    sf = rec.load_scenario_file(args.file, require_polity=False)
    if sf.peaks is None:
        raise UsageError("population files need a peaks list")
    pop = sf.population()
    derived = sf.derived()
    t_m = derived["t_m"]
    row = {"n_voters": float(len(pop)), **rec.scenario_fields(derived)}
    row["ideal"] = None
    if sf.alpha is not None and derived["t_L"] is not None:
        scen = sf.scenario(with_coalition=True)
        row["ideal"] = scen.coalition.ideal
    else:
        scen = sf.scenario(with_coalition=False)
    row["median_is_condorcet"] = condorcet_winner(pop, list(pop.peaks) + [t_m]) == t_m
    if args.solve:
        out = (solve_pr(scen.coalition, scen.t_m, scen.t_f) if scen.coalition
               else solve_smd(scen.t_m, scen.t_f))
        row["polity"] = out.polity
        row.update(rec.outcome_fields(out))
    _write(rec.emit([row], args.format), args.output, args.force)
    return EXIT_OK


def cmd_oracle_compare(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    scenarios, _ = sample_scenarios(args.seed, args.n, _parse_bounds(args.bound),
                                    max_draws=args.max_draws)
    rows, failures = [], 0
    for s in scenarios:
        for out in (solve_smd(s.t_m, s.t_f), solve_pr(s.coalition, s.t_m, s.t_f)):
            fields, ok = _oracle_fields(out, args.grid, args.tolerance)
            failures += not ok
            rows.append({"tag": s.tag, "polity": out.polity, "gov_ideal": out.gov_ideal,
                         "t_f": out.t_f, "t_star": out.t_star, "m_star": out.m_star,
                         **fields})
    _write(rec.emit(rows, args.format), args.output, args.force)
    worst_t = max(abs(r["oracle_dt"]) for r in rows)
    worst_m = max(abs(r["oracle_dm"]) for r in rows)
    print(f"{len(rows) - failures}/{len(rows)} within {args.tolerance:g}; "
          f"max |dt| {worst_t:.3g}, max |dM| {worst_m:.3g}", file=sys.stderr)
    return EXIT_OK if failures == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="electoral-trade",
        description="Tariff bargaining between governments and a foreign lobby "
                    "under majoritarian (smd) and proportional (pr) systems.")
    sub = p.add_subparsers(dest="command", required=True)

    def output_flags(sp):
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--output", "-o", help="output file (default: stdout)")
        sp.add_argument("--force", action="store_true", help="overwrite an existing output file")

    def oracle_flags(sp):
        sp.add_argument("--grid", type=int, default=DEFAULT_GRID,
                        help="oracle lattice points per axis (default %(default)s)")
        sp.add_argument("--tolerance", type=float, default=1e-6,
                        help="allowed oracle/closed-form difference (default %(default)s)")

    def sampling_flags(sp):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--bound", action="append", metavar="NAME=LOW:HIGH",
                        help="sampling box for t_f, t_m, t_S, t_L or alpha (repeatable)")
        sp.add_argument("--max-draws", type=int, default=DEFAULT_MAX_DRAWS)

    sp = sub.add_parser("solve", help="solve one scenario file")
    sp.add_argument("file")
    sp.add_argument("--both", action="store_true", help="solve smd and pr side by side")
    sp.add_argument("--oracle", action="store_true", help="append numerical oracle values")
    oracle_flags(sp)
    output_flags(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("verify", help="check the smd/pr comparison on random scenarios")
    sampling_flags(sp)
    output_flags(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="comparative statics over a parameter grid")
    sp.add_argument("--axis", action="append", required=True, metavar="NAME=START:STOP:STEP",
                    help=f"swept parameter, one of {', '.join(PARAMS)}; STOP is excluded")
    sp.add_argument("--set", action="append", metavar="NAME=VALUE",
                    help="fixed parameter value (repeatable)")
    output_flags(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("population", help="derive medians from voter peaks and party labels")
    sp.add_argument("file")
    sp.add_argument("--solve", action="store_true", help="also solve the derived scenario")
    output_flags(sp)
    sp.set_defaults(func=cmd_population)

    sp = sub.add_parser("oracle-compare", help="closed forms vs numerical oracle on random scenarios")
    sampling_flags(sp)
    oracle_flags(sp)
    output_flags(sp)
    sp.set_defaults(func=cmd_oracle_compare)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConstraintError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OracleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ScenarioParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
