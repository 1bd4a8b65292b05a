"""Logiscope-style per-class maintainability: metric vector, thresholds,
criteria, quality-level distributions and ranking matrices."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

from .ck import _referenced_types, cbo, dit, noc, wmc
from .model import CLASS_KIND, ClassModel

INF = math.inf

#: Axis order used by reports and the Kiviat chart (Figure-style, sorted).
METRIC_ORDER = (
    "cl_comf", "cl_comm", "cl_data", "cl_data_publ", "cl_func", "cl_func_publ",
    "cl_line", "cl_stat", "cl_wmc", "cu_cdused", "cu_cdusers", "in_bases",
    "in_noc",
)

CRITERIA = ("analyzability", "changeability", "stability", "testability")
LEVELS = ("excellent", "good", "fair", "poor")

#: Constituent metrics of each ISO-9126 criterion.
CRITERION_METRICS = {
    "analyzability": ("cl_wmc", "cl_comf", "in_bases", "cu_cdused"),
    "changeability": ("cl_stat", "cl_func", "cl_data"),
    "stability": ("cl_data_publ", "cu_cdusers", "in_noc", "cl_func_publ"),
    "testability": ("cl_wmc", "cl_func", "cu_cdused"),
}


@dataclass(frozen=True)
class LogiscopeMetrics:
    cl_wmc: float = 0
    cl_comf: float = 0.0
    cl_comm: float = 0
    cl_line: float = 0
    cl_stat: float = 0
    cl_data: float = 0
    cl_data_publ: float = 0
    cl_func: float = 0
    cl_func_publ: float = 0
    cu_cdused: float = 0
    cu_cdusers: float = 0
    in_bases: float = 0
    in_noc: float = 0

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in METRIC_ORDER}

    def vector(self) -> tuple[float, ...]:
        return tuple(getattr(self, name) for name in METRIC_ORDER)


@dataclass(frozen=True)
class ThresholdProfile:
    """Per-metric acceptable [min, max] bands plus level cut-offs.

    ``criterion_bands``/``factor_bands`` are ascending cut-offs for the
    banded criterion score: score <= bands[0] is excellent, <= bands[1]
    good, <= bands[2] fair, above that poor.
    """

    ranges: dict[str, tuple[float, float]]
    criterion_bands: tuple[float, float, float] = (1, 3, 6)
    factor_bands: tuple[float, float, float] = (4, 12, 24)

    def __post_init__(self):
        for metric, (lo, hi) in self.ranges.items():
            if lo > hi:
                raise ValueError(f"{metric}: min > max")

    def range_for(self, metric: str) -> tuple[float, float]:
        try:
            return self.ranges[metric]
        except KeyError:
            raise KeyError(f"metric missing from profile: {metric}") from None


#: Acceptable bands as shipped (class-level Kiviat thresholds).
DEFAULT_PROFILE = ThresholdProfile(ranges={
    "cl_comf": (0.20, INF),
    "cl_comm": (-INF, INF),
    "cl_data": (0, 7),
    "cl_data_publ": (0, 0),
    "cl_func": (0, 25),
    "cl_func_publ": (0, 15),
    "cl_line": (-INF, INF),
    "cl_stat": (0, 100),
    "cl_wmc": (0, 60),
    "cu_cdused": (0, 10),
    "cu_cdusers": (0, 5),
    "in_bases": (0, 3),
    "in_noc": (0, 3),
})


def load_profile(file) -> ThresholdProfile:
    """Profile JSON: {metric: {"min": n|"-inf", "max": n|"+inf"}, "bands": ...}."""
    if hasattr(file, "read"):
        doc = json.load(file)
    else:
        with open(file, encoding="utf-8") as fh:
            doc = json.load(fh)

    def number(v):
        if v in ("-inf", "-Infinity"):
            return -INF
        if v in ("+inf", "inf", "Infinity"):
            return INF
        return float(v)

    ranges = dict(DEFAULT_PROFILE.ranges)
    criterion_bands = DEFAULT_PROFILE.criterion_bands
    factor_bands = DEFAULT_PROFILE.factor_bands
    for key, value in doc.items():
        if key == "bands":
            if "criterion" in value:
                criterion_bands = tuple(value["criterion"])
            if "factor" in value:
                factor_bands = tuple(value["factor"])
            continue
        if key not in METRIC_ORDER:
            raise ValueError(f"unknown metric in profile: {key}")
        ranges[key] = (number(value.get("min", "-inf")), number(value.get("max", "+inf")))
    return ThresholdProfile(ranges=ranges, criterion_bands=criterion_bands,
                            factor_bands=factor_bands)


def logiscope_metrics(model: ClassModel, name: str,
                      bases_include_interfaces: bool = False) -> LogiscopeMetrics:
    decl = model.get(name)
    users = 0
    for other in model.types.values():
        if other.qualified_name == name:
            continue
        if name in _referenced_types(model, other, include_inheritance=False):
            users += 1
    in_bases = dit(model, name)
    if bases_include_interfaces:
        in_bases += len(decl.implemented_interfaces)
    cl_line = decl.total_lines
    cl_comm = decl.comment_lines
    return LogiscopeMetrics(
        cl_wmc=wmc(decl),
        cl_comf=cl_comm / cl_line if cl_line > 0 else 0.0,
        cl_comm=cl_comm,
        cl_line=cl_line,
        cl_stat=sum(m.statement_count for m in decl.methods),
        cl_data=len(decl.fields),
        cl_data_publ=sum(1 for f in decl.fields if f.visibility == "public"),
        cl_func=len(decl.methods),
        cl_func_publ=sum(1 for m in decl.methods if m.visibility == "public"),
        cu_cdused=cbo(model, name),
        cu_cdusers=users,
        in_bases=in_bases,
        in_noc=noc(model, name) if decl.kind == CLASS_KIND else 0,
    )


def kiviat_status(metrics: LogiscopeMetrics,
                  profile: ThresholdProfile = DEFAULT_PROFILE) -> dict[str, int]:
    """-1 where a value leaves its inclusive [min, max] band, else 0."""
    statuses = {}
    for name in METRIC_ORDER:
        lo, hi = profile.range_for(name)
        value = getattr(metrics, name)
        statuses[name] = -1 if (value < lo or value > hi) else 0
    return statuses


def metric_band_score(metric: str, value: float,
                      profile: ThresholdProfile = DEFAULT_PROFILE) -> int:
    """Map one metric value to 0 (excellent) .. 3 (poor).

    Derived from the acceptable [min, max] band: values in the inner half
    score 0, the outer half 1, up to one band-width above max 2, beyond 3.
    For min-only metrics (comment rate) the scale runs on multiples of min.
    These cut-offs are a declared default, overridable via the profile.
    """
    lo, hi = profile.range_for(metric)
    if lo == -INF and hi == INF:
        return 0
    if hi == INF:  # higher is better, min-bounded (cl_comf)
        if value >= 2 * lo:
            return 0
        if value >= lo:
            return 1
        if value >= lo / 2:
            return 2
        return 3
    if value < lo:
        return 3
    span = hi - lo
    if value <= lo + 0.5 * span:
        return 0
    if value <= hi:
        return 1
    if value <= hi + span:
        return 2
    return 3


def _classify(score: float, bands) -> str:
    for level, cut in zip(LEVELS[:3], bands):
        if score <= cut:
            return level
    return "poor"


@dataclass(frozen=True)
class CriterionScores:
    analyzability: float
    changeability: float
    stability: float
    testability: float
    mode: str = "raw"
    levels: dict | None = None  # per-criterion + factor level, banded mode only

    @property
    def maintainability(self) -> float:
        return (self.analyzability + self.changeability
                + self.stability + self.testability)

    def as_dict(self) -> dict[str, float]:
        out = {c: getattr(self, c) for c in CRITERIA}
        out["maintainability"] = self.maintainability
        return out


def criteria(metrics: LogiscopeMetrics,
             profile: ThresholdProfile = DEFAULT_PROFILE,
             mode: str = "banded") -> CriterionScores:
    """Criterion scores: raw sums as printed, or band scores with levels."""
    if mode not in ("raw", "banded"):
        raise ValueError(f"unknown mode: {mode}")
    values = {}
    for criterion, constituents in CRITERION_METRICS.items():
        if mode == "raw":
            values[criterion] = float(sum(getattr(metrics, m) for m in constituents))
        else:
            values[criterion] = float(sum(
                metric_band_score(m, getattr(metrics, m), profile)
                for m in constituents))
    levels = None
    if mode == "banded":
        levels = {c: _classify(values[c], profile.criterion_bands) for c in CRITERIA}
        levels["maintainability"] = _classify(
            sum(values.values()), profile.factor_bands)
    return CriterionScores(mode=mode, levels=levels, **values)


def _percent(part: int, whole: int) -> int:
    pct = Decimal(100 * part) / Decimal(whole)
    return int(pct.quantize(Decimal("1"), rounding=ROUND_HALF_UP))


def level_distribution(metrics_by_class: dict[str, LogiscopeMetrics],
                       profile: ThresholdProfile = DEFAULT_PROFILE):
    """Percentage of classes per quality level, per criterion and factor."""
    if not metrics_by_class:
        raise ValueError("empty model: no classes to classify")
    tallies = {c: {lvl: 0 for lvl in LEVELS}
               for c in CRITERIA + ("maintainability",)}
    for metrics in metrics_by_class.values():
        scores = criteria(metrics, profile, mode="banded")
        for criterion, level in scores.levels.items():
            tallies[criterion][level] += 1
    total = len(metrics_by_class)
    return {
        criterion: {lvl: _percent(count, total) for lvl, count in row.items()}
        for criterion, row in tallies.items()
    }


def bad_fraction(distribution_row: dict[str, float]) -> float:
    """Fair plus poor percentage: the 'bad quality' aggregate."""
    return distribution_row["fair"] + distribution_row["poor"]


def ranking_matrix(dist_a: dict, dist_b: dict) -> dict[str, tuple[bool, bool]]:
    """Per criterion/factor: (A wins, B wins); smaller bad fraction wins,
    ties mark both."""
    if set(dist_a) != set(dist_b):
        raise ValueError("reports cover different criteria")
    matrix = {}
    for criterion in dist_a:
        bad_a = bad_fraction(dist_a[criterion])
        bad_b = bad_fraction(dist_b[criterion])
        matrix[criterion] = (bad_a <= bad_b, bad_b <= bad_a)
    return matrix
