"""Validation and evolution statistics: Spearman rank correlation,
z-normalization, design instability between iterations, and use-case
cohesion/coupling of analysis models."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from . import mood
from .model import ClassModel


def average_ranks(values) -> list[float]:
    """1-based ranks; tied values receive the average of their rank block."""
    values = list(values)
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


@dataclass(frozen=True)
class RankSeries:
    ranks_a: tuple[float, ...]
    ranks_b: tuple[float, ...]

    def __post_init__(self):
        if len(self.ranks_a) != len(self.ranks_b):
            raise ValueError("rank series lengths differ")
        if len(self.ranks_a) < 2:
            raise ValueError("need at least 2 observations")

    @classmethod
    def from_values(cls, values_a, values_b) -> "RankSeries":
        return cls(tuple(average_ranks(values_a)), tuple(average_ranks(values_b)))


def spearman(series: RankSeries) -> float:
    """r_s = 1 - 6 * sum(d^2) / (n (n^2 - 1))."""
    n = len(series.ranks_a)
    d2 = sum((a - b) ** 2 for a, b in zip(series.ranks_a, series.ranks_b))
    return 1.0 - 6.0 * d2 / (n * (n * n - 1))


def z_normalize(values) -> list[float]:
    """Center and scale to population standard deviation 1."""
    values = list(values)
    if len(values) < 2:
        raise ValueError("need at least 2 values")
    mean = sum(values) / len(values)
    variance = sum((v - mean) ** 2 for v in values) / len(values)
    if variance == 0:
        raise ValueError("zero variance: series is constant")
    sigma = math.sqrt(variance)
    return [(v - mean) / sigma for v in values]


@dataclass(frozen=True)
class IterationSnapshot:
    label: str
    classes: frozenset[str]
    renames: dict = field(default_factory=dict)  # old name -> new name

    @classmethod
    def from_file(cls, file) -> "IterationSnapshot":
        if hasattr(file, "read"):
            doc = json.load(file)
        else:
            with open(file, encoding="utf-8") as fh:
                doc = json.load(fh)
        return cls(label=str(doc.get("iteration", "")),
                   classes=frozenset(doc["classes"]),
                   renames=dict(doc.get("renames", {})))


def sdi(prev: IterationSnapshot, next_: IterationSnapshot):
    """(added, deleted, changed, sdi) between two design iterations."""
    renames = next_.renames
    targets = list(renames.values())
    if len(set(targets)) != len(targets):
        raise ValueError("rename map is not injective")
    missing = set(renames) - prev.classes
    if missing:
        raise ValueError(f"rename sources absent from previous snapshot: {sorted(missing)}")

    renamed_prev = {renames.get(name, name) for name in prev.classes}
    changed = len(renames)
    added = len(next_.classes - renamed_prev)
    deleted = len((prev.classes - set(renames)) - next_.classes)
    return added, deleted, changed, added + deleted + changed


@dataclass(frozen=True)
class UseCase:
    name: str
    scenarios: tuple[str, ...]


@dataclass(frozen=True)
class UseCaseModel:
    use_cases: tuple[UseCase, ...]
    similar_pairs: frozenset[frozenset]  # unordered scenario-name pairs

    def __post_init__(self):
        declared = {s for uc in self.use_cases for s in uc.scenarios}
        for pair in self.similar_pairs:
            if len(pair) != 2:
                raise ValueError(f"similarity pair must join two distinct scenarios: {set(pair)}")
            if not pair <= declared:
                raise ValueError(f"similarity pair references undeclared scenario: {set(pair)}")

    @classmethod
    def from_file(cls, file) -> "UseCaseModel":
        if hasattr(file, "read"):
            doc = json.load(file)
        else:
            with open(file, encoding="utf-8") as fh:
                doc = json.load(fh)
        use_cases = tuple(
            UseCase(name=uc["name"], scenarios=tuple(uc["scenarios"]))
            for uc in doc["useCases"])
        pairs = frozenset(frozenset(p) for p in doc.get("similarPairs", []))
        return cls(use_cases=use_cases, similar_pairs=pairs)


def use_case_cohesion_local(model: UseCaseModel, use_case_name: str) -> float | None:
    """Similar-pair density within one use case; None below 2 scenarios."""
    uc = next((u for u in model.use_cases if u.name == use_case_name), None)
    if uc is None:
        raise KeyError(f"unknown use case: {use_case_name}")
    n = len(uc.scenarios)
    if n < 2:
        return None
    scen = set(uc.scenarios)
    within = sum(1 for pair in model.similar_pairs if pair <= scen)
    return within / (n * (n - 1) // 2)


def use_case_cohesion_global(model: UseCaseModel) -> float | None:
    """1 minus model-wide similar-pair density; None below 2 scenarios."""
    scenarios = [s for uc in model.use_cases for s in uc.scenarios]
    n = len(scenarios)
    if n < 2:
        return None
    return 1.0 - len(model.similar_pairs) / (n * (n - 1) // 2)


def domain_coupling_cf(model: ClassModel) -> float | None:
    """Coupling factor of a domain model; delegates to the MOOD suite."""
    return mood.cf(model)
