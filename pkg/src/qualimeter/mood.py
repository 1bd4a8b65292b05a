"""System-level MOOD metrics: MHF, AHF, MIF, AIF, CF, PF.

Every metric is normalized to [0, 1]. Ratios with an empty denominator are
*undefined* and returned as None rather than coerced to zero.
"""

from __future__ import annotations

from .ck import _referenced_types
from .model import ClassModel, TypeDecl, inheritance_closure


def _total_classes(model: ClassModel) -> int:
    return len(model.types)


def visibility_fraction(model: ClassModel, owner: TypeDecl, visibility: str) -> float:
    """Fraction of *other* classes that may access a member, per Java rules."""
    tc = _total_classes(model)
    if tc < 2:
        return 0.0
    if visibility == "private":
        return 0.0
    if visibility == "public":
        return 1.0
    same_package = {
        t.qualified_name for t in model.types.values()
        if t.package_name == owner.package_name
    }
    if visibility == "package":
        visible = same_package
    else:  # protected: subclasses plus same package
        _, descendants = inheritance_closure(model, owner.qualified_name)
        visible = same_package | descendants
    visible.discard(owner.qualified_name)
    return len(visible) / (tc - 1)


def _hiding_factor(model: ClassModel, members_of) -> float | None:
    hidden = 0.0
    total = 0
    for decl in model.types.values():
        for visibility in members_of(decl):
            hidden += 1.0 - visibility_fraction(model, decl, visibility)
            total += 1
    if total == 0:
        return None
    return hidden / total


def ahf(model: ClassModel) -> float | None:
    """Attribute hiding factor: mean invisibility over all declared fields."""
    return _hiding_factor(model, lambda d: [f.visibility for f in d.fields])


def mhf(model: ClassModel) -> float | None:
    """Method hiding factor over declared non-constructor methods."""
    return _hiding_factor(
        model, lambda d: [m.visibility for m in d.methods if not m.is_constructor])


def _ancestor_chain(model: ClassModel, decl: TypeDecl):
    names, _ = inheritance_closure(model, decl.qualified_name)
    return [model.types[n] for n in names]


def inherited_methods(model: ClassModel, decl: TypeDecl) -> list:
    """Ancestor non-constructor methods neither overridden nor re-declared."""
    own_sigs = {m.signature for m in decl.methods if not m.is_constructor}
    seen: set = set(own_sigs)
    inherited = []
    for ancestor in _ancestor_chain(model, decl):
        for meth in ancestor.methods:
            if meth.is_constructor or meth.signature in seen:
                continue
            seen.add(meth.signature)
            inherited.append(meth)
    return inherited


def inherited_fields(model: ClassModel, decl: TypeDecl) -> list:
    own_names = {f.name for f in decl.fields}
    seen: set = set(own_names)
    inherited = []
    for ancestor in _ancestor_chain(model, decl):
        for fld in ancestor.fields:
            if fld.name in seen:
                continue
            seen.add(fld.name)
            inherited.append(fld)
    return inherited


def mif(model: ClassModel) -> float | None:
    """Inherited methods over available (defined + inherited) methods."""
    inherited_total = 0
    available_total = 0
    for decl in model.types.values():
        inh = len(inherited_methods(model, decl))
        defined = sum(1 for m in decl.methods if not m.is_constructor)
        inherited_total += inh
        available_total += inh + defined
    if available_total == 0:
        return None
    return inherited_total / available_total


def aif(model: ClassModel) -> float | None:
    inherited_total = 0
    available_total = 0
    for decl in model.types.values():
        inh = len(inherited_fields(model, decl))
        inherited_total += inh
        available_total += inh + len(decl.fields)
    if available_total == 0:
        return None
    return inherited_total / available_total


def is_client(model: ClassModel, client: str, supplier: str) -> bool:
    if client == supplier:
        return False
    return supplier in _referenced_types(model, model.get(client),
                                         include_inheritance=False)


def cf(model: ClassModel) -> float | None:
    """Coupling factor: reference-edge density over the TC^2 - TC pairs."""
    tc = _total_classes(model)
    if tc < 2:
        return None
    edges = 0
    for decl in model.types.values():
        edges += len(_referenced_types(model, decl, include_inheritance=False))
    return edges / (tc * tc - tc)


def _override_census(model: ClassModel, decl: TypeDecl):
    """(overriding count, new-method count) among non-constructor methods."""
    ancestor_sigs = set()
    for ancestor in _ancestor_chain(model, decl):
        for meth in ancestor.methods:
            if not meth.is_constructor:
                ancestor_sigs.add(meth.signature)
    overriding = new = 0
    for meth in decl.methods:
        if meth.is_constructor:
            continue
        if meth.signature in ancestor_sigs:
            overriding += 1
        else:
            new += 1
    return overriding, new


def pf(model: ClassModel) -> float | None:
    """Polymorphism factor: overrides over override opportunities."""
    numerator = 0
    denominator = 0
    for decl in model.types.values():
        overriding, new = _override_census(model, decl)
        _, descendants = inheritance_closure(model, decl.qualified_name)
        numerator += overriding
        denominator += new * len(descendants)
    if denominator == 0:
        return None
    return min(numerator / denominator, 1.0)
