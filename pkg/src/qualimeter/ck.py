"""Chidamber-Kemerer suite per class: WMC, DIT, NOC, CBO, RFC, LCOM, NOM."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complexity import cyclomatic
from .model import CLASS_KIND, ClassModel, TypeDecl, inheritance_closure


@dataclass(frozen=True)
class CohesionPairs:
    p: int  # pairs sharing no instance field
    q: int  # pairs sharing at least one instance field


def wmc(decl: TypeDecl) -> int:
    return sum(cyclomatic(m) for m in decl.methods)


def dit(model: ClassModel, name: str) -> int:
    """Depth from the root; a root (or externally-parented) class scores 0."""
    ancestors, _ = inheritance_closure(model, name)
    return len(ancestors)


def noc(model: ClassModel, name: str, count_interface_impls: bool = False) -> int:
    decl = model.get(name)
    if decl.kind != CLASS_KIND:
        if not count_interface_impls:
            return 0
        return sum(
            1 for t in model.types.values()
            if name in t.implemented_interfaces
            or (t.kind != CLASS_KIND and name in t.super_types)
        )
    return len(model.direct_subclasses(name))


def _referenced_types(model: ClassModel, decl: TypeDecl,
                      include_inheritance: bool) -> set[str]:
    refs: set[str] = set()

    def note(type_name: str):
        if type_name in model.types and type_name != decl.qualified_name:
            refs.add(type_name)

    for fld in decl.fields:
        note(fld.declared_type)
    for meth in decl.methods:
        for pt in meth.param_types:
            note(pt)
        note(meth.return_type)
        for owner, _ in meth.called_methods:
            note(owner)
        for owner, _ in meth.accessed_fields:
            note(owner)
    if include_inheritance:
        for parent in decl.super_types:
            note(parent)
        for iface in decl.implemented_interfaces:
            note(iface)
    return refs


def cbo(model: ClassModel, name: str, bidirectional: bool = False,
        include_inheritance: bool = False) -> int:
    """Distinct declared classes referenced (outgoing; flag adds incoming)."""
    decl = model.get(name)
    coupled = _referenced_types(model, decl, include_inheritance)
    if bidirectional:
        for other in model.types.values():
            if other.qualified_name == name:
                continue
            if name in _referenced_types(model, other, include_inheritance):
                coupled.add(other.qualified_name)
    return len(coupled)


def rfc(model: ClassModel, name: str) -> int:
    """|declared methods| + |distinct external (receiver, method) calls|."""
    decl = model.get(name)
    own_names = {m.name for m in decl.methods}
    external_calls = set()
    for meth in decl.methods:
        for receiver, called in meth.called_methods:
            if receiver == decl.qualified_name and called in own_names:
                continue  # self-call to a declared method: already counted
            external_calls.add((receiver, called))
    return len(decl.methods) + len(external_calls)


def _cohesion_field_sets(decl: TypeDecl) -> list[set[str]]:
    """Instance-field usage per eligible method (non-constructor, non-static)."""
    instance_fields = {f.name for f in decl.fields if not f.is_static}
    sets = []
    for meth in decl.methods:
        if meth.is_constructor or meth.is_static:
            continue
        used = {
            fname for owner, fname in meth.accessed_fields
            if owner == decl.qualified_name and fname in instance_fields
        }
        sets.append(used)
    return sets


def lcom(decl: TypeDecl) -> tuple[int, CohesionPairs]:
    """CK LCOM: max(|P| - |Q|, 0) over eligible method pairs."""
    sets = _cohesion_field_sets(decl)
    p = q = 0
    for a, b in combinations(sets, 2):
        if a & b:
            q += 1
        else:
            p += 1
    return max(p - q, 0), CohesionPairs(p=p, q=q)


def nom(decl: TypeDecl, include_constructors: bool = False) -> int:
    if include_constructors:
        return len(decl.methods)
    return sum(1 for m in decl.methods if not m.is_constructor)
