"""Command line front end: single checks against a data file, and the
simulation harness that regenerates whole study tables.

Exit codes: 0 success, 2 usage or configuration problem, 3 unreadable or
invalid data, 4 numeric degeneracy.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import replace

import numpy as np

from .distributions import parse_distribution
from .engine import CheckConfig, RBReport, run_check
from .errors import ConfigError, DataError, DegeneracyError, DomainError
from .models import FAMILY_TAGS
from .scenarios import load_scenarios, run_scenario, summarize, table_scenarios

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4

SIMULATE_COLUMNS = [
    "kind", "scenario", "distribution", "family", "n", "a", "rep",
    "d_min", "d05", "rb_at_zero", "strength", "error",
    "median_rb", "median_strength", "frac_rb_above_1", "errors",
]


def read_data_csv(path) -> np.ndarray:
    """One real per line; an optional single header line is skipped.

    Accepts LF or CRLF endings, ignores blank lines and trailing commas.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    values = []
    saw_content = False
    for lineno, line in enumerate(lines, start=1):
        fields = [f.strip() for f in line.split(",") if f.strip()]
        if not fields:
            continue
        if len(fields) > 1:
            raise DataError(f"{path}:{lineno}: expected one value per line, got {line!r}")
        try:
            values.append(float(fields[0]))
        except ValueError:
            if saw_content:
                raise DataError(
                    f"{path}:{lineno}: non-numeric value {fields[0]!r}"
                ) from None
            # first content line may be a header
        saw_content = True
    if not values:
        raise DataError(f"no data in {path}")
    return np.asarray(values)


def _resolve_i0(p0: float | None, M: int) -> int:
    if p0 is None:
        return 1
    i0 = round(p0 * M)
    if abs(p0 * M - i0) > 1e-9 or not 1 <= i0 < M:
        raise ConfigError(f"p0={p0} must equal i/M for an integer 1 <= i < M={M}")
    return i0


def _open_out(path):
    if path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def write_samples_csv(path, report: RBReport) -> None:
    fh, owned = _open_out(path)
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["which", "distance"])
        for v in report.prior_distances:
            writer.writerow(["prior", f"{v:.17g}"])
        for v in report.posterior_distances:
            writer.writerow(["posterior", f"{v:.17g}"])
    finally:
        if owned:
            fh.close()


def cmd_check(args) -> int:
    data = read_data_csv(args.data)
    override = parse_distribution(args.base_override) if args.base_override else None
    cfg = CheckConfig(
        a=args.a,
        N=args.N,
        r1=args.r1,
        r2=args.r2,
        M=args.M,
        i0=_resolve_i0(args.p0, args.M),
        seed=args.seed,
    )
    report = run_check(data, args.family, cfg, base_override=override)
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(f"RB(0) = {report.rb_at_zero:.2f} (strength {report.strength:.2f})")
    if args.out:
        fh, owned = _open_out(args.out)
        try:
            fh.write(report.to_json() + "\n")
        finally:
            if owned:
                fh.close()
    if args.samples_out:
        write_samples_csv(args.samples_out, report)
    return EXIT_OK


def _fmt(v) -> str:
    if v is None or v == "":
        return ""
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def write_results_csv(fh, records, summaries) -> None:
    """Replication rows then summary rows, in SIMULATE_COLUMNS order."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(SIMULATE_COLUMNS)
    for r in records:
        writer.writerow([
            "rep", r.scenario_id, r.distribution, r.family, r.n, _fmt(r.a), r.rep,
            _fmt(r.d_min), _fmt(r.d05), _fmt(r.rb_at_zero), _fmt(r.strength),
            r.error, "", "", "", "",
        ])
    for s in summaries:
        writer.writerow([
            "summary", s.scenario_id, s.distribution, s.family, s.n, _fmt(s.a), "",
            "", "", "", "", "",
            _fmt(s.median_rb), _fmt(s.median_strength),
            _fmt(s.frac_rb_above_1), s.errors,
        ])


def cmd_simulate(args) -> int:
    if (args.table is None) == (args.scenario_file is None):
        raise ConfigError("exactly one of --table or --scenario-file is required")
    if args.table is not None:
        scenarios = table_scenarios(
            args.table,
            replications=args.replications if args.replications is not None else 1,
            seed=args.seed if args.seed is not None else 0,
        )
    else:
        scenarios = load_scenarios(args.scenario_file)
        if args.replications is not None:
            scenarios = [replace(s, replications=args.replications) for s in scenarios]
        if args.seed is not None:
            scenarios = [replace(s, seed=args.seed) for s in scenarios]

    progress = None
    if args.progress:
        def progress(rec):
            print(f"done {rec.scenario_id} a={rec.a:g} rep={rec.rep}", file=sys.stderr)

    records = []
    for scenario in scenarios:
        records.extend(run_scenario(scenario, progress=progress))
    summaries = summarize(records)

    fh, owned = _open_out(args.out if args.out else "-")
    try:
        write_results_csv(fh, records, summaries)
    finally:
        if owned:
            fh.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dpcheck",
        description="Bayesian nonparametric model checking via relative belief "
        "ratios of a Cramér-von Mises distance.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run one model check against a data file")
    check.add_argument("--data", required=True, help="CSV file, one number per line")
    check.add_argument("--family", required=True, choices=FAMILY_TAGS)
    check.add_argument("--a", type=float, default=1.0, help="prior concentration")
    check.add_argument("--N", type=int, default=1000, help="series truncation")
    check.add_argument("--r1", type=int, default=1000, help="prior draws")
    check.add_argument("--r2", type=int, default=1000, help="posterior draws")
    check.add_argument("--M", type=int, default=20, help="quantile bins")
    check.add_argument("--p0", type=float, default=None,
                       help="evidence cutoff as a prior probability, default 1/M")
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--base-override", default=None, metavar="DIST",
                       help="center the prior at DIST instead of the fitted model, "
                            "e.g. 'normal(0,1)' or 'mix(0.5,normal(-2,1),normal(2,1))'")
    check.add_argument("--out", default=None, help="write the JSON report here ('-' for stdout)")
    check.add_argument("--samples-out", default=None, metavar="PATH",
                       help="write prior/posterior distance draws as CSV")

    sim = sub.add_parser("simulate", help="run a preset study or a scenario file")
    sim.add_argument("--table", type=int, choices=(1, 2, 3, 5), default=None,
                     help="preset study number")
    sim.add_argument("--scenario-file", default=None, help="JSON list of scenarios")
    sim.add_argument("--replications", type=int, default=None)
    sim.add_argument("--seed", type=int, default=None)
    sim.add_argument("--out", default=None, help="write the results CSV here (default stdout)")
    sim.add_argument("--progress", action="store_true", help="log each replication to stderr")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "check":
            return cmd_check(args)
        return cmd_simulate(args)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegeneracyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
