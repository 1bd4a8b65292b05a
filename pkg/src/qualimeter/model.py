"""Language-agnostic class model consumed by every metric suite.

The model is a flat census of declared types, their members, and the
reference edges between them. It is immutable after construction, so any
number of analysis passes can read it concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

VISIBILITIES = ("public", "protected", "package", "private")

#: Marker for a call/access receiver the extractor could not resolve.
UNRESOLVED = "?"

CLASS_KIND = "class"
INTERFACE_KIND = "interface"


@dataclass(frozen=True)
class HalsteadCounts:
    """Distinct/total operator and operand counts for one method body."""

    n1: int = 0
    n2: int = 0
    N1: int = 0
    N2: int = 0

    @property
    def vocabulary(self) -> int:
        return self.n1 + self.n2

    @property
    def length(self) -> int:
        return self.N1 + self.N2


@dataclass(frozen=True)
class FieldDecl:
    name: str
    declared_type: str = ""
    visibility: str = "package"
    is_static: bool = False


@dataclass(frozen=True)
class MethodDecl:
    name: str
    param_types: tuple[str, ...] = ()
    return_type: str = "void"
    visibility: str = "package"
    is_static: bool = False
    is_abstract: bool = False
    is_constructor: bool = False
    # (ownerTypeName, fieldName); owner may be UNRESOLVED
    accessed_fields: tuple[tuple[str, str], ...] = ()
    # (receiverTypeName or UNRESOLVED, methodName)
    called_methods: tuple[tuple[str, str], ...] = ()
    decision_count: int = 0
    statement_count: int = 0
    halstead: HalsteadCounts = HalsteadCounts()
    code_lines: int = 0
    comment_lines: int = 0
    blank_lines: int = 0
    overrides_super: bool = False

    @property
    def signature(self) -> tuple[str, tuple[str, ...]]:
        return (self.name, self.param_types)


@dataclass(frozen=True)
class TypeDecl:
    qualified_name: str
    kind: str = CLASS_KIND
    super_types: tuple[str, ...] = ()
    implemented_interfaces: tuple[str, ...] = ()
    fields: tuple[FieldDecl, ...] = ()
    methods: tuple[MethodDecl, ...] = ()
    package_name: str = ""
    source_file: str = ""
    total_lines: int = 0
    comment_lines: int = 0

    @property
    def simple_name(self) -> str:
        return self.qualified_name.rsplit(".", 1)[-1]

    @property
    def is_interface(self) -> bool:
        return self.kind == INTERFACE_KIND


@dataclass(frozen=True)
class FileLineCount:
    path: str
    language: str
    code_lines: int
    comment_lines: int
    blank_lines: int

    @property
    def total_lines(self) -> int:
        return self.code_lines + self.comment_lines + self.blank_lines


class ClassModel:
    """Immutable census of declared types, reference edges and file counts.

    ``declared`` preserves the construction order (including duplicates, so
    validation can report them); ``types`` maps each qualified name to its
    first declaration.
    """

    def __init__(self, types=(), external_types=(), files=()):
        self.declared: tuple[TypeDecl, ...] = tuple(types)
        self.types: dict[str, TypeDecl] = {}
        for decl in self.declared:
            self.types.setdefault(decl.qualified_name, decl)
        self.external_types: frozenset[str] = frozenset(external_types)
        self.files: tuple[FileLineCount, ...] = tuple(files)

    def __contains__(self, name: str) -> bool:
        return name in self.types

    def get(self, name: str) -> TypeDecl:
        try:
            return self.types[name]
        except KeyError:
            raise KeyError(f"unknown type: {name}") from None

    def superclass_of(self, decl: TypeDecl) -> TypeDecl | None:
        """Declared superclass, or None for roots / external parents."""
        if decl.kind != CLASS_KIND:
            return None
        for name in decl.super_types:
            if name in self.types:
                return self.types[name]
        return None

    def direct_subclasses(self, name: str) -> list[TypeDecl]:
        parent = self.get(name)
        out = []
        for decl in self.types.values():
            if decl.kind == CLASS_KIND and self.superclass_of(decl) is parent:
                out.append(decl)
        return sorted(out, key=lambda d: d.qualified_name)


def _owner_known(model: ClassModel, owner: str) -> bool:
    return owner == UNRESOLVED or owner in model.types or owner in model.external_types


def validate(model: ClassModel) -> list[str]:
    """Check every structural invariant; returns one description per breach."""
    violations: list[str] = []

    seen: set[str] = set()
    for decl in model.declared:
        if decl.qualified_name in seen:
            violations.append(f"duplicate type: {decl.qualified_name}")
        seen.add(decl.qualified_name)

    for decl in model.types.values():
        name = decl.qualified_name
        if decl.kind not in (CLASS_KIND, INTERFACE_KIND):
            violations.append(f"{name}: unknown kind {decl.kind!r}")
        if decl.kind == CLASS_KIND and len(decl.super_types) > 1:
            violations.append(f"{name}: class with multiple superclasses")

        field_names: set[str] = set()
        for fld in decl.fields:
            if not fld.name:
                violations.append(f"{name}: field with empty name")
            if fld.name in field_names:
                violations.append(f"{name}: duplicate field {fld.name}")
            field_names.add(fld.name)
            if fld.visibility not in VISIBILITIES:
                violations.append(f"{name}.{fld.name}: bad visibility {fld.visibility!r}")

        signatures: set[tuple] = set()
        for meth in decl.methods:
            if meth.signature in signatures:
                violations.append(f"{name}: duplicate method signature {meth.name}")
            signatures.add(meth.signature)
            if meth.visibility not in VISIBILITIES:
                violations.append(f"{name}.{meth.name}: bad visibility {meth.visibility!r}")
            if meth.decision_count < 0:
                violations.append(f"{name}.{meth.name}: negative decision count")
            h = meth.halstead
            if min(h.n1, h.n2, h.N1, h.N2) < 0:
                violations.append(f"{name}.{meth.name}: negative halstead count")
            if h.n1 > 0 and h.N1 < h.n1:
                violations.append(f"{name}.{meth.name}: halstead N1 < n1")
            if h.n2 > 0 and h.N2 < h.n2:
                violations.append(f"{name}.{meth.name}: halstead N2 < n2")
            for owner, _ in meth.accessed_fields:
                if not _owner_known(model, owner):
                    violations.append(f"{name}.{meth.name}: access to undeclared owner {owner}")
            for owner, _ in meth.called_methods:
                if not _owner_known(model, owner):
                    violations.append(f"{name}.{meth.name}: call to undeclared receiver {owner}")

    violations.extend(_inheritance_cycles(model))

    for fc in model.files:
        if min(fc.code_lines, fc.comment_lines, fc.blank_lines) < 0:
            violations.append(f"{fc.path}: negative line count")

    return violations


def _inheritance_cycles(model: ClassModel) -> list[str]:
    """DFS over extends edges restricted to declared types."""
    WHITE, GREY, BLACK = 0, 1, 2
    color = {name: WHITE for name in model.types}
    cycles: list[str] = []

    def visit(name: str, trail: list[str]) -> None:
        color[name] = GREY
        trail.append(name)
        for parent in model.types[name].super_types:
            if parent not in model.types:
                continue
            if color[parent] == GREY:
                start = trail.index(parent)
                cycles.append("inheritance cycle: " + " -> ".join(trail[start:] + [parent]))
            elif color[parent] == WHITE:
                visit(parent, trail)
        trail.pop()
        color[name] = BLACK

    for name in sorted(model.types):
        if color[name] == WHITE:
            visit(name, [])
    return cycles


def inheritance_closure(model: ClassModel, type_name: str):
    """Superclass ancestors (nearest first) and the transitive subclass set.

    Interfaces are excluded from the ancestor chain; the chain stops at the
    first undeclared parent.
    """
    decl = model.get(type_name)

    ancestors: list[str] = []
    cur = model.superclass_of(decl)
    seen = {decl.qualified_name}
    while cur is not None and cur.qualified_name not in seen:
        ancestors.append(cur.qualified_name)
        seen.add(cur.qualified_name)
        cur = model.superclass_of(cur)

    descendants: set[str] = set()
    frontier = [type_name]
    while frontier:
        nxt = []
        for name in frontier:
            for child in model.direct_subclasses(name):
                if child.qualified_name not in descendants:
                    descendants.add(child.qualified_name)
                    nxt.append(child.qualified_name)
        frontier = nxt
    return ancestors, descendants
