"""Command-line surface: one subcommand per analysis verb.

Exit codes: 0 success, 1 analysis error, 2 usage error. Every error path
prints a single ``qualimeter: error:`` line to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import ck, detect, mood, qmood, stats
from .complexity import (
    MiInputs,
    cyclomatic,
    halstead_volume,
    maintainability_index,
    system_complexity_summary,
)
from .ingest import (
    IngestError,
    count_lines,
    load_interchange,
    parse_java_source,
    save_interchange,
)
from .maintain import (
    DEFAULT_PROFILE,
    METRIC_ORDER,
    LogiscopeMetrics,
    criteria,
    kiviat_status,
    level_distribution,
    load_profile,
    logiscope_metrics,
)
from .model import UNRESOLVED, ClassModel, validate
from .report import (
    emit_comparison_report,
    emit_kiviat_svg,
    emit_treemap_svg,
    fmt,
    write_csv,
    write_json,
)
from .treemap import LayoutParams, TreemapNode, layout_hierarchy, rectangle_samples

SUITES = ("ck", "mood", "qmood", "logiscope", "complexity")

CONFIG_ENV = "QUALIMETER_CONFIG"


class CliError(Exception):
    pass


def _load_env_config() -> dict:
    path = os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, ValueError) as exc:
        raise CliError(f"bad config file {path}: {exc}")


def _load_model(inputs, input_mode: str) -> ClassModel:
    for path in inputs:
        if not os.path.exists(path):
            raise CliError(f"input path does not exist: {path}")
    if input_mode == "interchange":
        if len(inputs) != 1:
            raise CliError("interchange mode takes exactly one file")
        return load_interchange(inputs[0])
    model = parse_java_source(inputs)
    problems = validate(model)
    if problems:
        raise CliError("model invalid: " + "; ".join(problems))
    return model


def _out_path(args, filename: str):
    if args.out is None:
        return None
    os.makedirs(args.out, exist_ok=True)
    return os.path.join(args.out, filename)


def _emit(args, doc: dict, basename: str, csv_header=None, csv_rows=None) -> None:
    fmt_kind = args.format
    if fmt_kind == "csv":
        if csv_header is None:
            raise CliError("csv format unavailable for this command")
        target = _out_path(args, basename + ".csv") or sys.stdout
        write_csv(csv_header, csv_rows, target)
        return
    target = _out_path(args, basename + ".json") or sys.stdout
    write_json(doc, target)


# ---------------------------------------------------------------------------
# subcommand implementations


def _cmd_extract(args) -> int:
    model = _load_model(args.inputs, "java")
    target = _out_path(args, "model.json")
    if target is None:
        save_interchange(model, sys.stdout)
        sys.stdout.write("\n")
    else:
        save_interchange(model, target)
    return 0


def _cmd_cloc(args) -> int:
    files, aggregate = count_lines(args.inputs)
    doc = {
        "files": [
            {"path": f.path, "language": f.language, "code": f.code_lines,
             "comment": f.comment_lines, "blank": f.blank_lines}
            for f in files
        ],
        "languages": aggregate,
    }
    rows = [[lang, row["files"], row["blank"], row["comment"], row["code"]]
            for lang, row in sorted(aggregate.items())]
    _emit(args, doc, "cloc",
          csv_header=["language", "files", "blank", "comment", "code"],
          csv_rows=rows)
    return 0


def _ck_report(model: ClassModel, args) -> dict:
    out = {}
    for name in sorted(model.types):
        decl = model.get(name)
        value, pairs = ck.lcom(decl)
        out[name] = {
            "wmc": ck.wmc(decl),
            "dit": ck.dit(model, name),
            "noc": ck.noc(model, name, count_interface_impls=args.noc_interfaces),
            "cbo": ck.cbo(model, name, bidirectional=args.cbo_bidirectional),
            "rfc": ck.rfc(model, name),
            "lcom": value,
            "lcomPairs": {"p": pairs.p, "q": pairs.q},
            "nom": ck.nom(decl),
        }
    return out


def _mood_report(model: ClassModel) -> dict:
    return {
        "mhf": mood.mhf(model),
        "ahf": mood.ahf(model),
        "mif": mood.mif(model),
        "aif": mood.aif(model),
        "cf": mood.cf(model),
        "pf": mood.pf(model),
    }


def _qmood_report(model: ClassModel, weights) -> dict:
    props = qmood.design_properties(model)
    indexes = qmood.quality_indexes(props, weights)
    return {"properties": props.as_dict(), "indexes": indexes.as_dict()}


def _logiscope_report(model: ClassModel, profile) -> dict:
    per_class = {}
    metrics_by_class = {}
    for name in sorted(model.types):
        metrics = logiscope_metrics(model, name)
        metrics_by_class[name] = metrics
        scores = criteria(metrics, profile, mode="banded")
        raw = criteria(metrics, profile, mode="raw")
        per_class[name] = {
            "metrics": metrics.as_dict(),
            "status": kiviat_status(metrics, profile),
            "criteria": {"raw": raw.as_dict(), "banded": scores.as_dict()},
            "levels": scores.levels,
        }
    return {
        "classes": per_class,
        "distribution": level_distribution(metrics_by_class, profile)
        if metrics_by_class else {},
    }


def _complexity_report(model: ClassModel, clpm_percent: bool) -> dict:
    total, avg, count = system_complexity_summary(model)
    methods = [m for decl in model.types.values() for m in decl.methods]
    mi = None
    if methods:
        volumes = [halstead_volume(m.halstead) for m in methods]
        hv = sum(volumes) / len(volumes)
        cc = total / count
        locpm = sum(m.code_lines for m in methods) / count
        fractions = []
        for m in methods:
            span = m.code_lines + m.comment_lines + m.blank_lines
            fractions.append(m.comment_lines / span if span else 0.0)
        clpm = sum(fractions) / count
        if clpm_percent:
            clpm /= 100.0
        if hv > 0 and locpm > 0:
            mi = maintainability_index(MiInputs(hv=hv, cc=cc, locpm=locpm, clpm=clpm))
    return {
        "sumVg": total,
        "avgVg": avg,
        "functionCount": count,
        "maintainabilityIndex": mi,
        "essentialComplexity": "unsupported",
        "moduleDesignComplexity": "unsupported",
    }


def _cmd_analyze(args) -> int:
    model = _load_model(args.inputs, args.input_mode)
    profile = load_profile(args.thresholds) if args.thresholds else DEFAULT_PROFILE
    weights = qmood.load_weights(args.weights) if args.weights else None

    for suite in args.suite:
        if suite == "ck":
            classes = _ck_report(model, args)
            rows = [[name] + [v for k, v in row.items() if k != "lcomPairs"]
                    for name, row in classes.items()]
            _emit(args, {"suite": "ck", "classes": classes}, "ck",
                  csv_header=["class", "wmc", "dit", "noc", "cbo", "rfc",
                              "lcom", "nom"],
                  csv_rows=rows)
        elif suite == "mood":
            _emit(args, {"suite": "mood", "system": _mood_report(model)}, "mood")
        elif suite == "qmood":
            _emit(args, {"suite": "qmood", **_qmood_report(model, weights)}, "qmood")
        elif suite == "logiscope":
            _emit(args, {"suite": "logiscope", **_logiscope_report(model, profile)},
                  "logiscope")
        elif suite == "complexity":
            _emit(args, {"suite": "complexity",
                         "system": _complexity_report(model, args.clpm_percent)},
                  "complexity")
    return 0


def build_detection_reports(model: ClassModel):
    """(class report, method report) fed to the detection rules."""
    class_report = {}
    for name in sorted(model.types):
        decl = model.get(name)
        class_report[name] = {
            "atfd": detect.atfd(model, name),
            "wmc": ck.wmc(decl),
            "tcc": detect.tcc(decl),
        }
    method_report = {}
    for name in sorted(model.types):
        decl = model.get(name)
        for meth in decl.methods:
            entity = f"{name}#{meth.name}/{len(meth.param_types)}"
            foreign = sum(1 for owner, _ in meth.accessed_fields
                          if owner not in (name, UNRESOLVED))
            own = sum(1 for owner, _ in meth.accessed_fields if owner == name)
            method_report[entity] = {
                "methodLoc": meth.code_lines,
                "methodVg": cyclomatic(meth),
                "foreignAccess": foreign,
                "ownAccess": own,
                "envy": foreign - own,
            }
    return class_report, method_report


def _cmd_detect(args) -> int:
    model = _load_model(args.inputs, args.input_mode)
    class_report, method_report = build_detection_reports(model)
    rules = dict(detect.builtin_rules())
    for path in args.rules or []:
        for rule in detect.load_rules(path):
            rules[rule.name] = rule
    findings = {}
    for rule_name in sorted(rules):
        rule = rules[rule_name]
        report = method_report if rule_name in ("LongMethod", "FeatureEnvy") \
            else class_report
        flagged, evidence = detect.evaluate_rule(rule, report)
        findings[rule_name] = {"flagged": flagged, "evidence": evidence}
    _emit(args, {"rules": sorted(rules), "findings": findings}, "detect")
    return 0


def _cmd_kiviat(args) -> int:
    model = _load_model(args.inputs, args.input_mode)
    profile = load_profile(args.thresholds) if args.thresholds else DEFAULT_PROFILE
    names = args.classes or sorted(model.types)
    if args.out is None:
        raise CliError("kiviat needs --out for SVG emission")
    statuses = {}
    for name in names:
        metrics = logiscope_metrics(model, name)
        safe = name.replace("/", "_").replace(".", "_")
        target = _out_path(args, f"kiviat_{safe}.svg")
        statuses[name] = emit_kiviat_svg(metrics, target, profile, title=name)
    write_json({"statuses": statuses}, _out_path(args, "kiviat.json"))
    return 0


def _hierarchy_from_model(model: ClassModel) -> TreemapNode:
    children = [
        TreemapNode(name=f.path, weight=max(f.code_lines, 1))
        for f in sorted(model.files, key=lambda f: f.path)
    ]
    if not children:
        raise CliError("model has no files to lay out")
    return TreemapNode(name="codebase", weight=0, children=children)


def _cmd_treemap(args) -> int:
    if args.out is None:
        raise CliError("treemap needs --out for SVG emission")
    with open(args.input, encoding="utf-8") as fh:
        doc = json.load(fh)
    if "types" in doc:
        root = _hierarchy_from_model(load_interchange(args.input))
    else:
        root = TreemapNode.from_json(doc)
    params = LayoutParams(resolution=args.resolution, seed=args.seed)
    size = float(args.resolution)
    points = rectangle_samples(size, size, args.resolution)
    layout = layout_hierarchy(root, points, params)
    emit_treemap_svg(layout, _out_path(args, "treemap.svg"), size, size)
    return 0


def _cmd_stability(args) -> int:
    prev = stats.IterationSnapshot.from_file(args.previous)
    nxt = stats.IterationSnapshot.from_file(args.next)
    added, deleted, changed, value = stats.sdi(prev, nxt)
    _emit(args, {"from": prev.label, "to": nxt.label, "added": added,
                 "deleted": deleted, "changed": changed, "sdi": value},
          "stability")
    return 0


def _cmd_correlate(args) -> int:
    with open(args.input, encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        a, b = doc["a"], doc["b"]
    except KeyError:
        raise CliError("correlate input needs 'a' and 'b' value arrays")
    series = stats.RankSeries.from_values(a, b)
    _emit(args, {"n": len(a), "spearman": stats.spearman(series)}, "correlate")
    return 0


def _distribution_from_input(path: str, profile) -> dict:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if "types" in doc:
        model = load_interchange(path)
        metrics = {name: logiscope_metrics(model, name) for name in model.types}
        return level_distribution(metrics, profile)
    doc.pop("schemaVersion", None)
    return doc


def _cmd_compare(args) -> int:
    profile = load_profile(args.thresholds) if args.thresholds else DEFAULT_PROFILE
    dist_a = _distribution_from_input(args.report_a, profile)
    dist_b = _distribution_from_input(args.report_b, profile)
    name_a = os.path.splitext(os.path.basename(args.report_a))[0]
    name_b = os.path.splitext(os.path.basename(args.report_b))[0]
    json_out = _out_path(args, "compare.json") or sys.stdout
    csv_out = _out_path(args, "compare.csv")
    emit_comparison_report(dist_a, dist_b, name_a, name_b, json_out, csv_out)
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_common(sub, inputs="+"):
    if inputs:
        sub.add_argument("inputs", nargs=inputs, help="source roots or interchange file")
    sub.add_argument("--input-mode", choices=("java", "interchange"), default="java")
    sub.add_argument("--format", choices=("json", "csv", "svg"), default="json")
    sub.add_argument("--out", default=None, help="output directory")
    sub.add_argument("--thresholds", default=None, help="threshold profile file")
    sub.add_argument("--weights", default=None, help="QMOOD weight matrix file")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--clpm-percent", action="store_true",
                     help="interpret comment density as a percentage")
    sub.add_argument("--cbo-bidirectional", action="store_true")
    sub.add_argument("--noc-interfaces", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qualimeter",
        description="Class-model extraction and code-quality metric reports.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("extract", help="parse Java and write the interchange model")
    _add_common(p)
    p.set_defaults(func=_cmd_extract)

    p = subs.add_parser("cloc", help="count blank/comment/code lines per language")
    _add_common(p)
    p.set_defaults(func=_cmd_cloc)

    p = subs.add_parser("analyze", help="run metric suites over a model")
    _add_common(p)
    p.add_argument("--suite", action="append", choices=SUITES, required=True)
    p.set_defaults(func=_cmd_analyze)

    p = subs.add_parser("detect", help="evaluate smell detection rules")
    _add_common(p)
    p.add_argument("--rules", action="append", default=None, help="rule file")
    p.set_defaults(func=_cmd_detect)

    p = subs.add_parser("kiviat", help="emit per-class Kiviat SVG charts")
    _add_common(p)
    p.add_argument("--classes", action="append", default=None)
    p.set_defaults(func=_cmd_kiviat)

    p = subs.add_parser("treemap", help="lay out a weighted hierarchy as SVG")
    _add_common(p, inputs=None)
    p.add_argument("input", help="hierarchy JSON or interchange model")
    p.add_argument("--resolution", type=int, default=256)
    p.set_defaults(func=_cmd_treemap)

    p = subs.add_parser("stability", help="design instability between snapshots")
    _add_common(p, inputs=None)
    p.add_argument("previous")
    p.add_argument("next")
    p.set_defaults(func=_cmd_stability)

    p = subs.add_parser("correlate", help="Spearman rank correlation of two series")
    _add_common(p, inputs=None)
    p.add_argument("input", help="JSON file with 'a' and 'b' arrays")
    p.set_defaults(func=_cmd_correlate)

    p = subs.add_parser("compare", help="compare two quality-level reports")
    _add_common(p, inputs=None)
    p.add_argument("report_a")
    p.add_argument("report_b")
    p.set_defaults(func=_cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_env_config()
        for key, value in config.items():
            attr = key.replace("-", "_")
            if hasattr(args, attr) and getattr(args, attr) in (None, False):
                setattr(args, attr, value)
        return args.func(args)
    except (CliError, IngestError, ValueError, KeyError, OSError) as exc:
        print(f"qualimeter: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
