"""QMOOD design-property vector and weighted quality-attribute indexes."""

from __future__ import annotations

import json
from dataclasses import dataclass, fields as dc_fields

from .ck import cbo, dit, nom
from .model import CLASS_KIND, ClassModel, inheritance_closure
from .mood import inherited_methods, _override_census

PROPERTY_NAMES = (
    "design_size", "hierarchies", "abstraction", "encapsulation", "coupling",
    "cohesion", "composition", "inheritance", "polymorphism", "messaging",
    "complexity",
)

ATTRIBUTE_NAMES = (
    "reusability", "flexibility", "understandability",
    "functionality", "extendibility", "effectiveness",
)

#: Default per-attribute coefficient rows over the 11 design properties.
DEFAULT_WEIGHTS: dict[str, dict[str, float]] = {
    "reusability": {"coupling": 0.25, "cohesion": 0.25,
                    "messaging": 0.5, "design_size": 0.5},
    "flexibility": {"encapsulation": 0.25, "coupling": -0.25,
                    "composition": 0.5, "polymorphism": 0.5},
    "understandability": {"abstraction": 0.33, "encapsulation": 0.33,
                          "coupling": -0.33, "cohesion": 0.33,
                          "polymorphism": -0.33, "complexity": -0.33,
                          "design_size": -0.33},
    "functionality": {"cohesion": 0.12, "polymorphism": 0.22, "messaging": 0.22,
                      "design_size": 0.22, "hierarchies": 0.22},
    "extendibility": {"abstraction": 0.5, "coupling": -0.5,
                      "inheritance": 0.5, "polymorphism": 0.5},
    "effectiveness": {"abstraction": 0.2, "encapsulation": 0.2,
                      "composition": 0.2, "inheritance": 0.2,
                      "polymorphism": 0.2},
}


@dataclass(frozen=True)
class QmoodProperties:
    design_size: float = 0.0     # DSC
    hierarchies: float = 0.0     # NOH
    abstraction: float = 0.0     # ANA
    encapsulation: float = 0.0   # DAM
    coupling: float = 0.0        # DCC
    cohesion: float = 0.0        # CAMC
    composition: float = 0.0     # MOA
    inheritance: float = 0.0     # MFA
    polymorphism: float = 0.0    # NOP
    messaging: float = 0.0       # CIS
    complexity: float = 0.0      # NOM

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in dc_fields(self)}


@dataclass(frozen=True)
class QualityIndexes:
    reusability: float
    flexibility: float
    understandability: float
    functionality: float
    extendibility: float
    effectiveness: float

    @property
    def tqi(self) -> float:
        return (self.reusability + self.flexibility + self.understandability
                + self.functionality + self.extendibility + self.effectiveness)

    def as_dict(self) -> dict[str, float]:
        out = {f.name: getattr(self, f.name) for f in dc_fields(self)}
        out["tqi"] = self.tqi
        return out


def _mean(values) -> float:
    values = list(values)
    return sum(values) / len(values) if values else 0.0


def _camc(decl) -> float | None:
    """Cohesion among methods of class: parameter-type overlap ratio."""
    own = decl.simple_name
    methods = [m for m in decl.methods if not m.is_constructor]
    union: set[str] = set()
    for m in methods:
        union |= {t for t in m.param_types if t != own and t != decl.qualified_name}
    if not methods or not union:
        return None
    overlap = sum(
        len({t for t in m.param_types if t in union}) for m in methods)
    return overlap / (len(methods) * len(union))


def design_properties(model: ClassModel) -> QmoodProperties:
    if not model.types:
        raise ValueError("empty model")
    decls = list(model.types.values())
    classes = [d for d in decls if d.kind == CLASS_KIND]

    dam_values = []
    for d in decls:
        if d.fields:
            hidden = sum(1 for f in d.fields if f.visibility != "public")
            dam_values.append(hidden / len(d.fields))

    camc_values = [v for v in (_camc(d) for d in decls) if v is not None]

    noh = 0
    mfa_values = []
    nop_values = []
    moa_values = []
    # signatures overridden somewhere below each class
    overridden_sigs_by_class: dict[str, set] = {}
    for d in classes:
        ancestor_sigs = set()
        cur = model.superclass_of(d)
        while cur is not None:
            for m in cur.methods:
                if not m.is_constructor:
                    ancestor_sigs.add(m.signature)
            cur = model.superclass_of(cur)
        own_overriding = {
            m.signature for m in d.methods
            if not m.is_constructor and m.signature in ancestor_sigs
        }
        cur = model.superclass_of(d)
        while cur is not None and own_overriding:
            overridden_sigs_by_class.setdefault(
                cur.qualified_name, set()).update(own_overriding)
            cur = model.superclass_of(cur)

    for d in decls:
        moa_values.append(sum(1 for f in d.fields if f.declared_type in model.types))
        if d.kind != CLASS_KIND:
            mfa_values.append(0.0)
            nop_values.append(0.0)
            continue
        ancestors, descendants = inheritance_closure(model, d.qualified_name)
        if not ancestors and descendants:
            noh += 1
        inherited = len(inherited_methods(model, d))
        declared = sum(1 for m in d.methods if not m.is_constructor)
        mfa_values.append(inherited / (inherited + declared)
                          if ancestors and (inherited + declared) else 0.0)
        ancestor_sigs = set()
        for a in ancestors:
            for m in model.types[a].methods:
                if not m.is_constructor:
                    ancestor_sigs.add(m.signature)
        overridden_below = overridden_sigs_by_class.get(d.qualified_name, set())
        polymorphic = 0
        for m in d.methods:
            if m.is_constructor:
                continue
            if m.signature in ancestor_sigs or m.signature in overridden_below:
                polymorphic += 1
        nop_values.append(float(polymorphic))

    return QmoodProperties(
        design_size=float(len(decls)),
        hierarchies=float(noh),
        abstraction=_mean(dit(model, d.qualified_name) for d in decls),
        encapsulation=_mean(dam_values),
        coupling=_mean(cbo(model, d.qualified_name) for d in decls),
        cohesion=_mean(camc_values),
        composition=_mean(moa_values),
        inheritance=_mean(mfa_values),
        polymorphism=_mean(nop_values),
        messaging=_mean(
            sum(1 for m in d.methods
                if m.visibility == "public" and not m.is_constructor)
            for d in decls),
        complexity=_mean(nom(d) for d in decls),
    )


def load_weights(file) -> dict[str, dict[str, float]]:
    """Weight matrix JSON: {attribute: {property: coefficient}}."""
    if hasattr(file, "read"):
        doc = json.load(file)
    else:
        with open(file, encoding="utf-8") as fh:
            doc = json.load(fh)
    weights = {}
    for attr, row in doc.items():
        if attr not in ATTRIBUTE_NAMES:
            raise ValueError(f"unknown quality attribute: {attr}")
        for prop in row:
            if prop not in PROPERTY_NAMES:
                raise ValueError(f"unknown design property: {prop}")
        weights[attr] = {k: float(v) for k, v in row.items()}
    merged = {a: dict(DEFAULT_WEIGHTS[a]) for a in ATTRIBUTE_NAMES}
    merged.update(weights)
    return merged


def quality_indexes(props: QmoodProperties,
                    weights: dict[str, dict[str, float]] | None = None) -> QualityIndexes:
    weights = weights if weights is not None else DEFAULT_WEIGHTS
    vector = props.as_dict()
    values = {}
    for attr in ATTRIBUTE_NAMES:
        row = weights.get(attr, {})
        values[attr] = sum(coeff * vector[prop] for prop, coeff in row.items())
    return QualityIndexes(**values)


def rank_designs(indexed_designs) -> list[tuple[str, QualityIndexes]]:
    """Descending TQI; ties resolved by design name ascending."""
    items = list(indexed_designs)
    if not items:
        raise ValueError("no designs to rank")
    return sorted(items, key=lambda kv: (-kv[1].tqi, kv[0]))
