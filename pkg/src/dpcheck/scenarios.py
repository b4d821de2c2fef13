"""Simulation harness: scenario definitions and replication runners.

A scenario is one row of a simulation study: a true sampling
distribution, a family to check, a sample size, and a set of prior
concentrations. Each replication draws fresh data, runs the check at
every concentration, and yields one flat record per (a, replication).
Records carry an error string instead of aborting the whole study when a
single fit is impossible (for example negative data under the
exponential family), so mixed study designs still produce full output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

from .cvm import d_min
from .distributions import ContinuousDistribution, parse_distribution
from .dp import BaseMeasure  # noqa: F401  (re-exported for harness consumers)
from .engine import CheckConfig, run_check
from .errors import ConfigError, DataError, DegeneracyError, DomainError
from .models import FAMILY_TAGS
from .rng import RngStream, derive_seed

STUDY_DISTRIBUTIONS = (
    "normal(0,1)",
    "normal(10,1)",
    "normal(0,4)",
    "normal(0,9)",
    "mix(0.5,normal(-2,1),normal(2,1))",
    "t(0.5)",
    "t(3)",
    "cauchy(0,1)",
    "uniform(0,1)",
    "uniform(-1,1)",
    "exp(1)",
    "exp(10)",
)

DEFAULT_A_VALUES = (1.0, 5.0, 10.0)


@dataclass(frozen=True)
class Scenario:
    scenario_id: str
    distribution: str
    family: str
    n: int = 20
    a_values: tuple = DEFAULT_A_VALUES
    replications: int = 1
    seed: int = 0
    base_override: str | None = None
    with_d_min: bool = True
    N: int = 1000
    r1: int = 1000
    r2: int = 1000
    M: int = 20
    i0: int = 1

    def __post_init__(self):
        if self.family not in FAMILY_TAGS:
            raise ConfigError(f"unknown family {self.family!r}")
        if not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise ConfigError(f"n must be an integer >= 2, got {self.n!r}")
        if not isinstance(self.replications, (int, np.integer)) or self.replications < 1:
            raise ConfigError(f"replications must be an integer >= 1, got {self.replications!r}")
        if len(self.a_values) == 0 or any(a <= 0 for a in self.a_values):
            raise ConfigError("a_values must be a nonempty tuple of positive reals")

    @property
    def true_dist(self) -> ContinuousDistribution:
        return parse_distribution(self.distribution)

    @property
    def override_dist(self) -> ContinuousDistribution | None:
        return None if self.base_override is None else parse_distribution(self.base_override)


@dataclass(frozen=True)
class ResultRecord:
    """One (scenario, a, replication) outcome, flat for CSV emission."""

    scenario_id: str
    distribution: str
    family: str
    n: int
    a: float
    rep: int
    d_min: float | None
    d05: float | None
    rb_at_zero: float | None
    strength: float | None
    error: str = ""

    _FIELDS = (
        "scenario_id", "distribution", "family", "n", "a", "rep",
        "d_min", "d05", "rb_at_zero", "strength", "error",
    )

    def to_row(self) -> list:
        row = []
        for name in self._FIELDS:
            v = getattr(self, name)
            if v is None:
                row.append("")
            elif isinstance(v, float):
                row.append(f"{v:.17g}")
            else:
                row.append(str(v))
        return row

    @classmethod
    def from_row(cls, row) -> "ResultRecord":
        s, dist, fam, n, a, rep, dm, d05, rb, st, err = row
        opt = lambda v: None if v == "" else float(v)
        return cls(s, dist, fam, int(n), float(a), int(rep),
                   opt(dm), opt(d05), opt(rb), opt(st), err)


@dataclass(frozen=True)
class ScenarioSummary:
    """Medians across the replications of one (scenario, a) cell."""

    scenario_id: str
    distribution: str
    family: str
    n: int
    a: float
    replications: int
    errors: int
    median_rb: float | None
    median_strength: float | None
    frac_rb_above_1: float | None


def scenario_d_min(scenario: Scenario) -> float | None:
    if not scenario.with_d_min:
        return None
    try:
        value, _ = d_min(scenario.true_dist, scenario.family)
    except (DomainError, DegeneracyError):
        return None
    return value


def run_scenario(scenario: Scenario, progress=None) -> list:
    """All replications of one scenario, ordered by (a, replication)."""
    records = []
    dmin_value = scenario_d_min(scenario)
    override = scenario.override_dist
    true_dist = scenario.true_dist
    for a in scenario.a_values:
        for rep in range(scenario.replications):
            data_rng = RngStream(
                scenario.seed, f"{scenario.scenario_id}/data/{rep}"
            ).generator()
            data = true_dist.sample(scenario.n, data_rng)
            cfg = CheckConfig(
                a=float(a),
                N=scenario.N,
                r1=scenario.r1,
                r2=scenario.r2,
                M=scenario.M,
                i0=scenario.i0,
                seed=derive_seed(scenario.seed, f"{scenario.scenario_id}/check/{rep}/a={a:g}"),
            )
            base = dict(
                scenario_id=scenario.scenario_id,
                distribution=scenario.distribution,
                family=scenario.family,
                n=scenario.n,
                a=float(a),
                rep=rep,
                d_min=dmin_value,
            )
            try:
                report = run_check(data, scenario.family, cfg, base_override=override)
            except (DataError, DegeneracyError) as exc:
                records.append(ResultRecord(**base, d05=None, rb_at_zero=None,
                                            strength=None, error=str(exc)))
            else:
                records.append(ResultRecord(
                    **base,
                    d05=float(report.d_quantiles[report.i0]),
                    rb_at_zero=report.rb_at_zero,
                    strength=report.strength,
                ))
            if progress is not None:
                progress(records[-1])
    return records


def summarize(records) -> list:
    """Collapse per-replication records into one summary per (scenario, a)."""
    order = []
    groups = {}
    for rec in records:
        key = (rec.scenario_id, rec.a)
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(rec)
    out = []
    for key in order:
        group = groups[key]
        ok = [r for r in group if r.error == ""]
        rb = np.array([r.rb_at_zero for r in ok])
        st = np.array([r.strength for r in ok])
        first = group[0]
        out.append(ScenarioSummary(
            scenario_id=first.scenario_id,
            distribution=first.distribution,
            family=first.family,
            n=first.n,
            a=first.a,
            replications=len(group),
            errors=len(group) - len(ok),
            median_rb=float(np.median(rb)) if ok else None,
            median_strength=float(np.median(st)) if ok else None,
            frac_rb_above_1=float(np.mean(rb > 1.0)) if ok else None,
        ))
    return out


def _study(scenario_ids_and_args):
    return [Scenario(**kw) for kw in scenario_ids_and_args]


def table_scenarios(table: int, replications: int = 1, seed: int = 0) -> list:
    """Preset studies: 1 location-normal, 2 prior-data conflict,
    3 location-scale-normal, 5 scale-exponential."""
    common = dict(replications=replications, seed=seed, n=20)
    if table == 1:
        return _study(
            dict(scenario_id=f"loc-normal/{spec}", distribution=spec,
                 family="location-normal", **common)
            for spec in STUDY_DISTRIBUTIONS
        )
    if table == 2:
        overrides = (None, "normal(0,1)", "normal(9,1)")
        return _study(
            dict(scenario_id=f"conflict/{ov if ov else 'fitted-base'}",
                 distribution="normal(10,1)", family="location-normal",
                 base_override=ov, with_d_min=False, **common)
            for ov in overrides
        )
    if table == 3:
        return _study(
            dict(scenario_id=f"loc-scale-normal/{spec}", distribution=spec,
                 family="location-scale-normal", **common)
            for spec in STUDY_DISTRIBUTIONS
        )
    if table == 5:
        return _study(
            dict(scenario_id=f"scale-exp/{spec}", distribution=spec,
                 family="scale-exponential", **common)
            for spec in STUDY_DISTRIBUTIONS
        )
    raise ConfigError(f"no preset study numbered {table!r}; choose 1, 2, 3 or 5")


_SCENARIO_KEYS = {
    "scenario_id", "distribution", "family", "n", "a_values", "replications",
    "seed", "base_override", "with_d_min", "N", "r1", "r2", "M", "i0",
}


def load_scenarios(path) -> list:
    """Scenario list from a JSON file: a list of objects whose keys match
    the Scenario fields (a_values may be written as 'a': [1, 5, 10])."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise DataError(f"cannot read scenario file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"scenario file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, list) or not raw:
        raise DataError("scenario file must contain a nonempty JSON list")
    scenarios = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise DataError(f"scenario #{i} is not a JSON object")
        kw = dict(entry)
        if "a" in kw:
            kw["a_values"] = kw.pop("a")
        if "a_values" in kw:
            values = kw["a_values"]
            kw["a_values"] = tuple(values) if isinstance(values, (list, tuple)) else (values,)
        kw.setdefault("scenario_id", f"scenario-{i}")
        unknown = set(kw) - _SCENARIO_KEYS
        if unknown:
            raise DataError(f"scenario #{i} has unknown keys: {sorted(unknown)}")
        try:
            scenarios.append(Scenario(**kw))
        except (ConfigError, TypeError) as exc:
            raise DataError(f"scenario #{i} is invalid: {exc}") from exc
        try:
            scenarios[-1].true_dist
            scenarios[-1].override_dist
        except ConfigError as exc:
            raise DataError(f"scenario #{i} has a bad distribution spec: {exc}") from exc
    return scenarios
