"""Metric-based smell detection: marginal filters composed with and/or,
plus the ATFD/TCC companion metrics and the shipped rule set."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .ck import _cohesion_field_sets
from .model import ClassModel, TypeDecl

FILTER_KINDS = ("higherThan", "lowerThan", "topCount", "topPercent",
                "bottomCount", "bottomPercent")


class RuleError(Exception):
    pass


def atfd(model: ClassModel, name: str) -> int:
    """Distinct foreign declared classes whose fields this class accesses."""
    decl = model.get(name)
    foreign = set()
    for meth in decl.methods:
        for owner, _ in meth.accessed_fields:
            if owner != name and owner in model.types:
                foreign.add(owner)
    return len(foreign)


def tcc(decl: TypeDecl) -> float | None:
    """Directly-connected method pairs over all pairs; None below 2 methods."""
    sets = _cohesion_field_sets(decl)
    m = len(sets)
    if m < 2:
        return None
    connected = 0
    for i in range(m):
        for j in range(i + 1, m):
            if sets[i] & sets[j]:
                connected += 1
    return connected / (m * (m - 1) // 2)


@dataclass(frozen=True)
class Filter:
    metric: str
    kind: str
    value: float

    def __post_init__(self):
        if self.kind not in FILTER_KINDS:
            raise RuleError(f"unknown filter kind: {self.kind}")
        if self.kind in ("higherThan", "lowerThan") and not math.isfinite(self.value):
            raise RuleError(f"{self.kind} threshold must be finite")
        if self.kind in ("topCount", "bottomCount") and self.value < 1:
            raise RuleError("count filters need k >= 1")
        if self.kind in ("topPercent", "bottomPercent") and not 0 < self.value <= 100:
            raise RuleError("percent filters need 0 < p <= 100")


@dataclass(frozen=True)
class Composite:
    op: str  # "and" | "or"
    children: tuple

    def __post_init__(self):
        if self.op not in ("and", "or"):
            raise RuleError(f"unknown composition operator: {self.op}")
        if not self.children:
            raise RuleError("empty composition")


@dataclass(frozen=True)
class DetectionRule:
    name: str
    expr: object  # Filter or Composite

    def leaves(self) -> list[Filter]:
        out = []

        def walk(node):
            if isinstance(node, Filter):
                out.append(node)
            else:
                for child in node.children:
                    walk(child)

        walk(self.expr)
        return out


def _ranked(report: dict, metric: str, reverse: bool) -> list[str]:
    """Entities ordered by metric; ties at the cut break by name ascending."""
    entities = [(name, values[metric]) for name, values in report.items()
                if values.get(metric) is not None]
    return [name for name, _ in
            sorted(entities, key=lambda kv: (-kv[1] if reverse else kv[1], kv[0]))]


def _leaf_set(leaf: Filter, report: dict) -> set[str]:
    for name, values in report.items():
        if leaf.metric not in values:
            raise RuleError(f"unknown metric in rule: {leaf.metric}")
        break
    if leaf.kind == "higherThan":
        return {n for n, v in report.items()
                if v.get(leaf.metric) is not None and v[leaf.metric] > leaf.value}
    if leaf.kind == "lowerThan":
        return {n for n, v in report.items()
                if v.get(leaf.metric) is not None and v[leaf.metric] < leaf.value}
    population = _ranked(report, leaf.metric,
                         reverse=leaf.kind in ("topCount", "topPercent"))
    if leaf.kind in ("topCount", "bottomCount"):
        k = int(leaf.value)
    else:
        k = math.ceil(leaf.value / 100.0 * len(population))
    return set(population[:k])


def evaluate_rule(rule: DetectionRule, report: dict):
    """Flag entities matching the rule; per-entity leaf evidence included.

    ``report`` maps entity name to {metric: value}; None values mean the
    metric is undefined for that entity and never match a filter.
    """

    def evaluate(node) -> set[str]:
        if isinstance(node, Filter):
            return _leaf_set(node, report)
        sets = [evaluate(child) for child in node.children]
        result = sets[0]
        for s in sets[1:]:
            result = result & s if node.op == "and" else result | s
        return result

    flagged = evaluate(rule.expr)
    leaves = rule.leaves()
    leaf_sets = [_leaf_set(leaf, report) for leaf in leaves]
    evidence = {}
    for name in sorted(flagged):
        evidence[name] = [
            {"metric": leaf.metric, "op": leaf.kind, "threshold": leaf.value,
             "value": report[name].get(leaf.metric),
             "matched": name in leaf_set}
            for leaf, leaf_set in zip(leaves, leaf_sets)
        ]
    return sorted(flagged), evidence


def _expr_from_json(doc) -> object:
    if "and" in doc or "or" in doc:
        op = "and" if "and" in doc else "or"
        return Composite(op=op, children=tuple(_expr_from_json(c) for c in doc[op]))
    try:
        return Filter(metric=doc["metric"], kind=doc["op"], value=float(doc["value"]))
    except KeyError as exc:
        raise RuleError(f"rule leaf missing key: {exc}") from None


def load_rules(file) -> list[DetectionRule]:
    """Rule JSON: {"name", "expr": {"and"|"or": [{"metric","op","value"}...]}}
    or a list of such objects."""
    if hasattr(file, "read"):
        doc = json.load(file)
    else:
        with open(file, encoding="utf-8") as fh:
            doc = json.load(fh)
    if isinstance(doc, dict):
        doc = [doc]
    return [DetectionRule(name=r["name"], expr=_expr_from_json(r["expr"]))
            for r in doc]


def builtin_rules() -> dict[str, DetectionRule]:
    """Shipped defaults; thresholds are conventions, override via rule files.

    Class-level rules read the class report (atfd, wmc, tcc); LongMethod and
    FeatureEnvy read the method report (methodLoc, methodVg, envy where envy
    is foreign minus own member accesses).
    """
    god_class = DetectionRule(
        name="GodClass",
        expr=Composite("and", (
            Filter("atfd", "topPercent", 20),
            Filter("wmc", "higherThan", 47),
            Filter("tcc", "lowerThan", 0.33),
        )),
    )
    long_method = DetectionRule(
        name="LongMethod",
        expr=Composite("or", (
            Filter("methodLoc", "higherThan", 80),
            Filter("methodVg", "higherThan", 10),
        )),
    )
    # foreign accesses exceed own accesses by at least 3
    feature_envy = DetectionRule(
        name="FeatureEnvy",
        expr=Filter("envy", "higherThan", 2),
    )
    return {"GodClass": god_class, "LongMethod": long_method,
            "FeatureEnvy": feature_envy}
