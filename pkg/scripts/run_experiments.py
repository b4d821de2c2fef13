"""Run the preset simulation studies and write one results CSV per study.

Each study draws fresh data per replication, runs the check at several
prior concentrations, and records per-replication and summary rows.
With the default single replication a full run takes a few hours on one
core; cut sizes down with --replications/--n-draws for a smoke pass.

  python scripts/run_experiments.py --study location-normal --out-dir results
  python scripts/run_experiments.py --study all --replications 5
"""

import argparse
import pathlib
import sys

from dataclasses import replace

from dpcheck.cli import write_results_csv
from dpcheck.scenarios import run_scenario, summarize, table_scenarios

STUDIES = {
    "location-normal": 1,
    "prior-conflict": 2,
    "location-scale-normal": 3,
    "scale-exponential": 5,
}


def run_study(name, args, out_dir):
    scenarios = table_scenarios(
        STUDIES[name], replications=args.replications, seed=args.seed
    )
    if args.n_draws is not None:
        scenarios = [
            replace(s, N=args.n_draws, r1=args.n_draws, r2=args.n_draws)
            for s in scenarios
        ]

    def progress(rec):
        print(f"  {rec.scenario_id} a={rec.a:g} rep={rec.rep}", file=sys.stderr)

    records = []
    for scenario in scenarios:
        records.extend(run_scenario(scenario, progress=progress if args.progress else None))
    summaries = summarize(records)

    path = out_dir / f"{name}.csv"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        write_results_csv(fh, records, summaries)
    print(f"{name}: {len(records)} replication rows -> {path}")
    for s in summaries:
        print(
            f"  {s.scenario_id:32s} a={s.a:<4g} median rb={s.median_rb:8.3f} "
            f"median strength={s.median_strength:6.3f} errors={s.errors}"
        )


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--study", choices=[*STUDIES, "all"], default="all")
    parser.add_argument("--replications", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--n-draws", type=int, default=None,
                        help="override N, r1 and r2 at once for quick passes")
    parser.add_argument("--out-dir", default="results")
    parser.add_argument("--progress", action="store_true")
    args = parser.parse_args(argv)

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    names = list(STUDIES) if args.study == "all" else [args.study]
    for name in names:
        run_study(name, args, out_dir)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
