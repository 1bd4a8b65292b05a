"""Model construction: shallow Java extraction, interchange files, line counts.

The Java front end is lexical: comments are stripped, string/char literals
masked, braces matched. That is deep enough for every metric in the toolkit;
receiver resolution for calls/field accesses is heuristic and falls back to
the unresolved marker.
"""

from __future__ import annotations

import json
import logging
import os
import re
from dataclasses import dataclass, field, replace

from .model import (
    CLASS_KIND,
    INTERFACE_KIND,
    UNRESOLVED,
    VISIBILITIES,
    ClassModel,
    FieldDecl,
    FileLineCount,
    HalsteadCounts,
    MethodDecl,
    TypeDecl,
)

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1

JAVA_KEYWORDS = {
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char",
    "class", "const", "continue", "default", "do", "double", "else", "enum",
    "extends", "final", "finally", "float", "for", "goto", "if", "implements",
    "import", "instanceof", "int", "interface", "long", "native", "new",
    "package", "private", "protected", "public", "return", "short", "static",
    "strictfp", "super", "switch", "synchronized", "this", "throw", "throws",
    "transient", "try", "void", "volatile", "while",
}

PRIMITIVES = {"boolean", "byte", "char", "double", "float", "int", "long", "short", "void"}

_MODIFIERS = {"public", "protected", "private", "static", "final", "abstract",
              "synchronized", "native", "strictfp", "transient", "volatile", "default"}

_DECISION_WORDS = ("if", "for", "while", "case", "catch")


class IngestError(Exception):
    pass


class InterchangeError(IngestError):
    """Interchange document violates the schema; message names the path."""


# ---------------------------------------------------------------------------
# comment stripping / line classification


def strip_java(text: str):
    """Blank out comments and mask literal contents, preserving line layout.

    Returns (stripped_text, line_kinds) where line_kinds[i] is one of
    'blank', 'comment', 'code' for each physical line (cloc semantics:
    a line with any code is 'code').
    """
    out = []
    n = len(text)
    i = 0
    state = "code"  # code | line | block | str | chr
    has_code = [False]
    has_comment = [False]

    def newline():
        has_code.append(False)
        has_comment.append(False)

    while i < n:
        c = text[i]
        nxt = text[i + 1] if i + 1 < n else ""
        if c == "\n":
            out.append("\n")
            if state == "line":
                state = "code"
            newline()
            i += 1
            continue
        if state == "code":
            if c == "/" and nxt == "/":
                state = "line"
                out.append("  ")
                has_comment[-1] = True
                i += 2
                continue
            if c == "/" and nxt == "*":
                state = "block"
                out.append("  ")
                has_comment[-1] = True
                i += 2
                continue
            if c == '"':
                state = "str"
                out.append('"')
                has_code[-1] = True
                i += 1
                continue
            if c == "'":
                state = "chr"
                out.append("'")
                has_code[-1] = True
                i += 1
                continue
            out.append(c)
            if not c.isspace():
                has_code[-1] = True
            i += 1
            continue
        if state in ("line", "block"):
            if state == "block" and c == "*" and nxt == "/":
                state = "code"
                out.append("  ")
                i += 2
                continue
            out.append(" ")
            if not c.isspace():
                has_comment[-1] = True
            i += 1
            continue
        # string / char literal: mask content, honour escapes
        if c == "\\" and i + 1 < n:
            out.append("  ")
            i += 2
            continue
        if (state == "str" and c == '"') or (state == "chr" and c == "'"):
            out.append(c)
            state = "code"
        else:
            out.append(" ")
        i += 1

    kinds = []
    for code_f, comm_f in zip(has_code, has_comment):
        if code_f:
            kinds.append("code")
        elif comm_f:
            kinds.append("comment")
        else:
            kinds.append("blank")
    return "".join(out), kinds


def _strip_generics(text: str) -> str:
    """Remove balanced <...> groups (type arguments/parameters)."""
    out = []
    depth = 0
    for idx, c in enumerate(text):
        if c == "<":
            depth += 1
        elif c == ">" and depth > 0:
            depth -= 1
        elif depth == 0:
            out.append(c)
    return "".join(out) if depth == 0 else text


def _strip_annotations(text: str) -> str:
    return re.sub(r"@\w+(\s*\([^)]*\))?", " ", text)


# ---------------------------------------------------------------------------
# raw per-file extraction (pre-resolution)


@dataclass
class _RawMethod:
    name: str
    param_types: tuple
    params: dict            # param name -> type name
    return_type: str
    visibility: str
    is_static: bool
    is_abstract: bool
    is_constructor: bool
    decision_count: int
    statement_count: int
    halstead: HalsteadCounts
    code_lines: int
    comment_lines: int
    blank_lines: int
    dotted_accesses: list = field(default_factory=list)   # (receiver ident, member, is_call)
    bare_calls: list = field(default_factory=list)
    bare_idents: set = field(default_factory=set)


@dataclass
class _RawType:
    qualified_name: str
    kind: str
    super_types: tuple
    implemented: tuple
    package: str
    source_file: str
    total_lines: int
    comment_lines: int
    fields: list = field(default_factory=list)            # FieldDecl
    methods: list = field(default_factory=list)           # _RawMethod


def _find_matching_brace(text: str, open_idx: int) -> int:
    depth = 0
    for i in range(open_idx, len(text)):
        if text[i] == "{":
            depth += 1
        elif text[i] == "}":
            depth -= 1
            if depth == 0:
                return i
    raise IngestError("unbalanced braces")


_TYPE_DECL_RE = re.compile(r"\b(class|interface)\s+(\w+)")


def _split_params(paramtext: str):
    """Split a parameter list on top-level commas."""
    parts = []
    depth = 0
    cur = []
    for c in paramtext:
        if c in "<([":
            depth += 1
        elif c in ">)]":
            depth -= 1
        if c == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(c)
    if "".join(cur).strip():
        parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _parse_param(param: str):
    """'final Map<K,V> name' -> (type, name)."""
    p = _strip_generics(_strip_annotations(param)).replace("...", "[]").strip()
    words = p.split()
    words = [w for w in words if w != "final"]
    if len(words) < 2:
        return (words[0] if words else "?", "")
    type_name = words[-2].rstrip("[]")
    name = words[-1].rstrip("[]")
    return type_name, name


def _member_visibility(mods: list[str], in_interface: bool) -> str:
    for v in ("public", "protected", "private"):
        if v in mods:
            return v
    return "public" if in_interface else "package"


_NUMBER_RE = re.compile(r"\b\d[\w.]*\b")
_WORD_RE = re.compile(r"[A-Za-z_]\w*")
_OPERATOR_RE = re.compile(
    r"<<=|>>=|>>>|==|!=|<=|>=|&&|\|\||\+\+|--|\+=|-=|\*=|/=|%=|&=|\|=|\^=|<<|>>|->|"
    r"[+\-*/%=<>!&|^~?:;,.(){}\[\]]"
)


def _halstead(body: str) -> HalsteadCounts:
    operators: list[str] = []
    operands: list[str] = []
    for lit in re.findall(r'"[^"]*"|\'[^\']*\'', body):
        operands.append(lit)
    masked = re.sub(r'"[^"]*"|\'[^\']*\'', " ", body)
    for num in _NUMBER_RE.findall(masked):
        operands.append(num)
    masked = _NUMBER_RE.sub(" ", masked)
    for word in _WORD_RE.findall(masked):
        if word in JAVA_KEYWORDS:
            operators.append(word)
        else:
            operands.append(word)
    masked = _WORD_RE.sub(" ", masked)
    operators.extend(_OPERATOR_RE.findall(masked))
    return HalsteadCounts(
        n1=len(set(operators)), n2=len(set(operands)),
        N1=len(operators), N2=len(operands),
    )


def _decision_count(body: str) -> int:
    count = 0
    for word in _DECISION_WORDS:
        count += len(re.findall(r"\b%s\b" % word, body))
    count += body.count("&&") + body.count("||")
    # ternary '?': generics are already rare inside bodies; strings are masked
    count += _strip_generics(body).count("?")
    return count


_BLOCK_CONTROL_WORDS = ("if", "for", "while", "switch", "try", "catch", "do", "else")


def _statement_count(body: str) -> int:
    """Terminators plus block-control statements; an approximation."""
    count = body.count(";")
    for word in _BLOCK_CONTROL_WORDS:
        count += len(re.findall(r"\b%s\b" % word, body))
    return count


def _body_references(body: str, raw: _RawMethod) -> None:
    masked = re.sub(r'"[^"]*"|\'[^\']*\'', " ", body)
    for m in re.finditer(r"\bnew\s+(\w+)\s*\(", masked):
        raw.dotted_accesses.append((m.group(1), "<init>", True, True))
    for m in re.finditer(r"(\w+)\s*\.\s*(\w+)\s*(\()?", masked):
        receiver, member, paren = m.group(1), m.group(2), m.group(3)
        if receiver in JAVA_KEYWORDS and receiver not in ("this", "super"):
            continue
        if receiver[0].isdigit():  # part of a numeric literal like 3.14
            continue
        raw.dotted_accesses.append((receiver, member, paren is not None, False))
    for m in re.finditer(r"(?<![.\w])(\w+)\s*\(", masked):
        name = m.group(1)
        if name in JAVA_KEYWORDS:
            continue
        if re.search(r"\bnew\s+$", masked[:m.start()]):
            continue  # constructor call, already captured above
        raw.bare_calls.append(name)
    for m in re.finditer(r"(?<![.\w])([A-Za-z_]\w*)\b(?!\s*\()", masked):
        word = m.group(1)
        if word not in JAVA_KEYWORDS:
            raw.bare_idents.add(word)


def _line_span_counts(kinds, start_line, end_line):
    code = comment = blank = 0
    for k in kinds[start_line:end_line + 1]:
        if k == "code":
            code += 1
        elif k == "comment":
            comment += 1
        else:
            blank += 1
    return code, comment, blank


def _parse_type_body(body: str, stripped: str, kinds, offset: int, rt: _RawType) -> list:
    """Parse members of one type body; returns nested type declarations found.

    ``offset`` is the index of ``body`` start within ``stripped``.
    """
    nested = []
    # blank out nested type declarations first so member scanning skips them
    work = body
    for m in _TYPE_DECL_RE.finditer(body):
        decl_start = m.start()
        if work[decl_start] == " ":
            continue
        try:
            open_idx = body.index("{", m.end())
        except ValueError:
            continue
        close_idx = _find_matching_brace(body, open_idx)
        nested.append((offset + decl_start, offset + m.end(), m.group(1), m.group(2),
                       offset + open_idx, offset + close_idx))
        work = work[:decl_start] + " " * (close_idx + 1 - decl_start) + work[close_idx + 1:]

    in_interface = rt.kind == INTERFACE_KIND
    simple = rt.qualified_name.rsplit(".", 1)[-1]
    i = 0
    seg_start = 0
    depth = 0
    while i < len(work):
        c = work[i]
        if c == "{":
            header = work[seg_start:i]
            close = _find_matching_brace(work, i)
            mbody = work[i + 1:close]
            _parse_method(header, mbody, stripped, kinds,
                          offset + seg_start, offset + close, simple, in_interface, rt,
                          abstract=False)
            i = close + 1
            seg_start = i
            continue
        if c == ";":
            segment = work[seg_start:i]
            if "(" in segment:
                _parse_method(segment, "", stripped, kinds,
                              offset + seg_start, offset + i, simple, in_interface, rt,
                              abstract=True)
            else:
                _parse_fields(segment, in_interface, rt)
            i += 1
            seg_start = i
            continue
        i += 1
    return nested


_METHOD_HEAD_RE = re.compile(r"(\w+)\s*\(")


def _parse_method(header, body, stripped, kinds, abs_start, abs_end,
                  simple_name, in_interface, rt: _RawType, abstract: bool) -> None:
    clean = _strip_annotations(header)
    m = _METHOD_HEAD_RE.search(clean)
    if m is None:
        return  # static/instance initializer block
    name = m.group(1)
    pre = _strip_generics(clean[:m.start()])
    open_paren = clean.index("(", m.start())
    close_paren = clean.rfind(")")
    if close_paren < open_paren:
        return
    paramtext = clean[open_paren + 1:close_paren]

    words = pre.split()
    mods = [w for w in words if w in _MODIFIERS]
    type_words = [w for w in words if w not in _MODIFIERS]
    is_ctor = name == simple_name and not type_words
    return_type = type_words[-1].rstrip("[]") if type_words else ("" if is_ctor else "void")

    params = {}
    param_types = []
    for p in _split_params(_strip_generics(paramtext)):
        ptype, pname = _parse_param(p)
        param_types.append(ptype)
        if pname:
            params[pname] = ptype

    start_line = stripped.count("\n", 0, abs_start)
    end_line = stripped.count("\n", 0, abs_end)
    # drop blank lines left over from the previous member boundary
    while start_line < end_line and kinds[start_line] == "blank":
        start_line += 1
    code, comment, blank = _line_span_counts(kinds, start_line, end_line)

    raw = _RawMethod(
        name=name,
        param_types=tuple(param_types),
        params=params,
        return_type=return_type,
        visibility=_member_visibility(mods, in_interface),
        is_static="static" in mods,
        is_abstract=abstract or "abstract" in mods,
        is_constructor=is_ctor,
        decision_count=_decision_count(body),
        statement_count=_statement_count(body),
        halstead=_halstead(body),
        code_lines=code,
        comment_lines=comment,
        blank_lines=blank,
    )
    if body:
        _body_references(body, raw)
    rt.methods.append(raw)


def _parse_fields(segment: str, in_interface: bool, rt: _RawType) -> None:
    clean = _strip_generics(_strip_annotations(segment)).strip()
    if not clean:
        return
    head = clean.split("=", 1)[0].strip()
    words = head.replace(",", " , ").split()
    mods = [w for w in words if w in _MODIFIERS]
    rest = [w for w in words if w not in _MODIFIERS]
    if len(rest) < 2 or rest[0] in ("package", "import"):
        return
    declared_type = rest[0].rstrip("[]")
    names = [w.rstrip("[]") for w in rest[1:] if w != ","]
    visibility = _member_visibility(mods, in_interface)
    for name in names:
        if not re.fullmatch(r"[A-Za-z_]\w*", name):
            continue
        rt.fields.append(FieldDecl(
            name=name, declared_type=declared_type,
            visibility=visibility, is_static="static" in mods or in_interface,
        ))


def _extract_file(path: str, text: str) -> list[_RawType]:
    stripped, kinds = strip_java(text)
    if stripped.count("{") != stripped.count("}"):
        raise IngestError(f"{path}: unbalanced braces")

    pkg_match = re.search(r"\bpackage\s+([\w.]+)\s*;", stripped)
    package = pkg_match.group(1) if pkg_match else ""

    raw_types: list[_RawType] = []

    def handle(decl_start, head_end, kind, name, open_idx, close_idx, qual_prefix):
        qualified = (qual_prefix + "." + name) if qual_prefix else name
        header = _strip_generics(stripped[head_end:open_idx])
        supers: tuple = ()
        implemented: tuple = ()
        ext = re.search(r"\bextends\s+([\w.,\s]+?)(?=\bimplements\b|$)", header)
        if ext:
            supers = tuple(s.strip() for s in ext.group(1).split(",") if s.strip())
        imp = re.search(r"\bimplements\s+([\w.,\s]+)", header)
        if imp:
            implemented = tuple(s.strip() for s in imp.group(1).split(",") if s.strip())
        start_line = stripped.count("\n", 0, decl_start)
        end_line = stripped.count("\n", 0, close_idx)
        code, comment, blank = _line_span_counts(kinds, start_line, end_line)
        rt = _RawType(
            qualified_name=(package + "." + qualified) if package else qualified,
            kind=CLASS_KIND if kind == "class" else INTERFACE_KIND,
            super_types=supers,
            implemented=implemented,
            package=package,
            source_file=path,
            total_lines=code + comment + blank,
            comment_lines=comment,
        )
        raw_types.append(rt)
        nested = _parse_type_body(stripped[open_idx + 1:close_idx], stripped, kinds,
                                  open_idx + 1, rt)
        for n_decl, n_head_end, n_kind, n_name, n_open, n_close in nested:
            handle(n_decl, n_head_end, n_kind, n_name, n_open, n_close, qualified)

    consumed = [False] * len(stripped)
    for m in _TYPE_DECL_RE.finditer(stripped):
        if consumed[m.start()]:
            continue
        try:
            open_idx = stripped.index("{", m.end())
        except ValueError:
            continue
        close_idx = _find_matching_brace(stripped, open_idx)
        for i in range(m.start(), close_idx + 1):
            consumed[i] = True
        handle(m.start(), m.end(), m.group(1), m.group(2), open_idx, close_idx, "")

    return raw_types


def _resolve_model(raw_types: list[_RawType], files) -> ClassModel:
    by_simple: dict[str, str] = {}
    declared_names = set()
    for rt in raw_types:
        declared_names.add(rt.qualified_name)
        by_simple.setdefault(rt.qualified_name.rsplit(".", 1)[-1], rt.qualified_name)

    def resolve_type_name(name: str) -> str | None:
        """Map a source type name to a declared qualified name, if any."""
        if not name or name in PRIMITIVES:
            return None
        if name in declared_names:
            return name
        return by_simple.get(name.rsplit(".", 1)[-1])

    externals: set[str] = set()

    def note_external(name: str):
        if name and name not in PRIMITIVES and resolve_type_name(name) is None:
            externals.add(name)

    types: list[TypeDecl] = []
    for rt in sorted(raw_types, key=lambda r: (r.source_file, r.qualified_name)):
        own_fields = {f.name: f for f in rt.fields}
        supers = []
        for s in rt.super_types:
            resolved = resolve_type_name(s)
            supers.append(resolved or s)
            note_external(s)
        implemented = []
        for s in rt.implemented:
            resolved = resolve_type_name(s)
            implemented.append(resolved or s)
            note_external(s)
        for f in rt.fields:
            note_external(f.declared_type)

        methods = []
        for raw in rt.methods:
            for pt in raw.param_types:
                note_external(pt)
            note_external(raw.return_type)
            accesses: list[tuple[str, str]] = []
            calls: list[tuple[str, str]] = []
            for entry in raw.dotted_accesses:
                receiver, member, is_call, is_new = entry
                if is_new:
                    target = resolve_type_name(receiver)
                    note_external(receiver)
                    calls.append((target or receiver, member))
                    continue
                if receiver in ("this", "super"):
                    owner = rt.qualified_name
                elif receiver in raw.params:
                    owner = resolve_type_name(raw.params[receiver]) or UNRESOLVED
                elif receiver in own_fields:
                    owner = resolve_type_name(own_fields[receiver].declared_type) or UNRESOLVED
                elif resolve_type_name(receiver):
                    owner = resolve_type_name(receiver)  # static access
                else:
                    owner = UNRESOLVED
                if is_call:
                    calls.append((owner, member))
                else:
                    accesses.append((owner, member))
            for name in raw.bare_calls:
                calls.append((rt.qualified_name, name))
            for ident in sorted(raw.bare_idents):
                if ident in own_fields and ident not in raw.params:
                    accesses.append((rt.qualified_name, ident))
            methods.append(MethodDecl(
                name=raw.name,
                param_types=raw.param_types,
                return_type=raw.return_type,
                visibility=raw.visibility,
                is_static=raw.is_static,
                is_abstract=raw.is_abstract,
                is_constructor=raw.is_constructor,
                accessed_fields=tuple(accesses),
                called_methods=tuple(calls),
                decision_count=raw.decision_count,
                statement_count=raw.statement_count,
                halstead=raw.halstead,
                code_lines=raw.code_lines,
                comment_lines=raw.comment_lines,
                blank_lines=raw.blank_lines,
            ))
        types.append(TypeDecl(
            qualified_name=rt.qualified_name,
            kind=rt.kind,
            super_types=tuple(supers),
            implemented_interfaces=tuple(implemented),
            fields=tuple(rt.fields),
            methods=tuple(methods),
            package_name=rt.package,
            source_file=rt.source_file,
            total_lines=rt.total_lines,
            comment_lines=rt.comment_lines,
        ))

    model = ClassModel(types=types, external_types=externals, files=files)
    return _mark_overrides(model)


def _mark_overrides(model: ClassModel) -> ClassModel:
    """Recompute overrides_super from declared superclass chains."""
    rebuilt = []
    for decl in model.declared:
        ancestor_sigs = set()
        cur = model.superclass_of(decl)
        while cur is not None:
            for m in cur.methods:
                if not m.is_constructor:
                    ancestor_sigs.add(m.signature)
            cur = model.superclass_of(cur)
        methods = tuple(
            m if (m.is_constructor or (m.signature in ancestor_sigs) == m.overrides_super)
            else replace(m, overrides_super=m.signature in ancestor_sigs)
            for m in decl.methods
        )
        if methods != decl.methods:
            decl = replace(decl, methods=methods)
        rebuilt.append(decl)
    return ClassModel(types=rebuilt, external_types=model.external_types, files=model.files)


def _walk_files(root_paths, extensions=None):
    out = []
    for root in root_paths:
        if os.path.isfile(root):
            out.append(root)
            continue
        for dirpath, dirnames, filenames in os.walk(root):
            dirnames.sort()
            for fn in sorted(filenames):
                out.append(os.path.join(dirpath, fn))
    if extensions is not None:
        out = [p for p in out if os.path.splitext(p)[1] in extensions]
    return sorted(out)


def parse_java_source(root_paths) -> ClassModel:
    """Extract a ClassModel from every .java file under the given roots."""
    raw_types: list[_RawType] = []
    files = []
    for path in _walk_files(root_paths, extensions={".java"}):
        try:
            with open(path, encoding="utf-8", errors="replace") as fh:
                text = fh.read()
        except OSError as exc:
            log.warning("unreadable file skipped: %s (%s)", path, exc)
            continue
        try:
            raw_types.extend(_extract_file(path, text))
        except IngestError as exc:
            log.warning("file skipped: %s", exc)
            continue
        counted = classify_lines(text, _JAVA_CONFIG)
        files.append(FileLineCount(
            path=path, language="java",
            code_lines=counted.code_lines,
            comment_lines=counted.comment_lines,
            blank_lines=counted.blank_lines,
        ))
    if not raw_types:
        log.warning("no types found under %s", list(root_paths))
    return _resolve_model(raw_types, files)


# ---------------------------------------------------------------------------
# interchange format


def save_interchange(model: ClassModel, file) -> None:
    doc = {
        "schemaVersion": SCHEMA_VERSION,
        "types": [_type_to_json(t) for t in sorted(model.types.values(),
                                                   key=lambda t: t.qualified_name)],
        "files": [
            {"path": f.path, "language": f.language, "code": f.code_lines,
             "comment": f.comment_lines, "blank": f.blank_lines}
            for f in model.files
        ],
        "externals": sorted(model.external_types),
    }
    if hasattr(file, "write"):
        json.dump(doc, file, indent=2, sort_keys=True)
    else:
        with open(file, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)


def _type_to_json(t: TypeDecl) -> dict:
    return {
        "name": t.qualified_name,
        "kind": t.kind,
        "package": t.package_name,
        "extends": list(t.super_types),
        "implements": list(t.implemented_interfaces),
        "fields": [
            {"name": f.name, "type": f.declared_type,
             "visibility": f.visibility, "static": f.is_static}
            for f in t.fields
        ],
        "methods": [
            {
                "name": m.name,
                "params": list(m.param_types),
                "returns": m.return_type,
                "visibility": m.visibility,
                "static": m.is_static,
                "abstract": m.is_abstract,
                "constructor": m.is_constructor,
                "decisions": m.decision_count,
                "statements": m.statement_count,
                "halstead": {"n1": m.halstead.n1, "n2": m.halstead.n2,
                             "N1": m.halstead.N1, "N2": m.halstead.N2},
                "lines": {"code": m.code_lines, "comment": m.comment_lines,
                          "blank": m.blank_lines},
                "accesses": [list(a) for a in m.accessed_fields],
                "calls": [list(c) for c in m.called_methods],
            }
            for m in t.methods
        ],
        "lines": {"total": t.total_lines, "comment": t.comment_lines},
    }


def _require(doc, key, path, types=None):
    if not isinstance(doc, dict) or key not in doc:
        raise InterchangeError(f"missing key: {path}.{key}")
    value = doc[key]
    if types is not None and not isinstance(value, types):
        raise InterchangeError(f"bad value type at {path}.{key}")
    if isinstance(value, int) and not isinstance(value, bool) and value < 0:
        raise InterchangeError(f"negative count at {path}.{key}")
    return value


def load_interchange(file) -> ClassModel:
    if hasattr(file, "read"):
        doc = json.load(file)
    else:
        with open(file, encoding="utf-8") as fh:
            doc = json.load(fh)

    raw_types = _require(doc, "types", "$", list)
    types = []
    for ti, tdoc in enumerate(raw_types):
        path = f"$.types[{ti}]"
        name = _require(tdoc, "name", path, str)
        kind = _require(tdoc, "kind", path, str)
        if kind not in (CLASS_KIND, INTERFACE_KIND):
            raise InterchangeError(f"unknown kind at {path}.kind: {kind}")
        fields = []
        for fi, fdoc in enumerate(tdoc.get("fields", [])):
            fpath = f"{path}.fields[{fi}]"
            vis = _require(fdoc, "visibility", fpath, str)
            if vis not in VISIBILITIES:
                raise InterchangeError(f"unknown visibility token at {fpath}: {vis}")
            fields.append(FieldDecl(
                name=_require(fdoc, "name", fpath, str),
                declared_type=fdoc.get("type", ""),
                visibility=vis,
                is_static=bool(fdoc.get("static", False)),
            ))
        methods = []
        for mi, mdoc in enumerate(tdoc.get("methods", [])):
            mpath = f"{path}.methods[{mi}]"
            vis = _require(mdoc, "visibility", mpath, str)
            if vis not in VISIBILITIES:
                raise InterchangeError(f"unknown visibility token at {mpath}: {vis}")
            h = mdoc.get("halstead", {})
            lines = mdoc.get("lines", {})
            methods.append(MethodDecl(
                name=_require(mdoc, "name", mpath, str),
                param_types=tuple(mdoc.get("params", [])),
                return_type=mdoc.get("returns", "void"),
                visibility=vis,
                is_static=bool(mdoc.get("static", False)),
                is_abstract=bool(mdoc.get("abstract", False)),
                is_constructor=bool(mdoc.get("constructor", False)),
                accessed_fields=tuple((a[0], a[1]) for a in mdoc.get("accesses", [])),
                called_methods=tuple((c[0], c[1]) for c in mdoc.get("calls", [])),
                decision_count=int(mdoc.get("decisions", 0)),
                statement_count=int(mdoc.get("statements", 0)),
                halstead=HalsteadCounts(
                    n1=int(h.get("n1", 0)), n2=int(h.get("n2", 0)),
                    N1=int(h.get("N1", 0)), N2=int(h.get("N2", 0)),
                ),
                code_lines=int(lines.get("code", 0)),
                comment_lines=int(lines.get("comment", 0)),
                blank_lines=int(lines.get("blank", 0)),
            ))
        tlines = tdoc.get("lines", {})
        types.append(TypeDecl(
            qualified_name=name,
            kind=kind,
            super_types=tuple(tdoc.get("extends", [])),
            implemented_interfaces=tuple(tdoc.get("implements", [])),
            fields=tuple(fields),
            methods=tuple(methods),
            package_name=tdoc.get("package", ""),
            total_lines=int(tlines.get("total", 0)),
            comment_lines=int(tlines.get("comment", 0)),
        ))

    files = []
    for fi, fdoc in enumerate(doc.get("files", [])):
        fpath = f"$.files[{fi}]"
        files.append(FileLineCount(
            path=_require(fdoc, "path", fpath, str),
            language=fdoc.get("language", "unknown"),
            code_lines=int(fdoc.get("code", 0)),
            comment_lines=int(fdoc.get("comment", 0)),
            blank_lines=int(fdoc.get("blank", 0)),
        ))

    model = ClassModel(types=types, external_types=doc.get("externals", []), files=files)
    return _mark_overrides(model)


# ---------------------------------------------------------------------------
# cloc-style line counting


@dataclass(frozen=True)
class LanguageCommentConfig:
    language: str
    extensions: tuple[str, ...]
    line_prefixes: tuple[str, ...] = ()
    block_delimiters: tuple[tuple[str, str], ...] = ()


DEFAULT_LANGUAGE_CONFIGS = (
    LanguageCommentConfig("java", (".java",), ("//",), ((("/*"), ("*/")),)),
    LanguageCommentConfig("c", (".c", ".h"), ("//",), ((("/*"), ("*/")),)),
    LanguageCommentConfig("cpp", (".cpp", ".hpp", ".cc"), ("//",), ((("/*"), ("*/")),)),
    LanguageCommentConfig("python", (".py",), ("#",)),
    LanguageCommentConfig("perl", (".pl", ".pm"), ("#",)),
    LanguageCommentConfig("shell", (".sh",), ("#",)),
    LanguageCommentConfig("make", (".mk", ".mak"), ("#",)),
    LanguageCommentConfig("json", (".json",)),
)

_JAVA_CONFIG = DEFAULT_LANGUAGE_CONFIGS[0]


def classify_lines(text: str, config: LanguageCommentConfig) -> FileLineCount:
    """Classify each physical line exactly once: blank, comment, or code."""
    code = comment = blank = 0
    in_block = None  # closing delimiter while inside a block comment
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for line in lines:
        stripped = line.strip()
        if in_block is not None:
            end = stripped.find(in_block)
            if end < 0:
                comment += 1 if stripped else 0
                blank += 0 if stripped else 1
                continue
            rest = stripped[end + len(in_block):].strip()
            in_block = None
            if rest and not _is_pure_comment(rest, config):
                code += 1
            else:
                comment += 1
            continue
        if not stripped:
            blank += 1
        elif _is_pure_comment(stripped, config):
            comment += 1
            for start, end in config.block_delimiters:
                if stripped.startswith(start) and end not in stripped[len(start):]:
                    in_block = end
        else:
            code += 1
            for start, end in config.block_delimiters:
                pos = stripped.rfind(start)
                if pos >= 0 and end not in stripped[pos + len(start):]:
                    in_block = end
    return FileLineCount(path="", language=config.language,
                         code_lines=code, comment_lines=comment, blank_lines=blank)


def _is_pure_comment(stripped: str, config: LanguageCommentConfig) -> bool:
    for prefix in config.line_prefixes:
        if stripped.startswith(prefix):
            return True
    for start, end in config.block_delimiters:
        if stripped.startswith(start):
            close = stripped.find(end, len(start))
            if close < 0:
                return True
            return stripped[close + len(end):].strip() == "" or \
                _is_pure_comment(stripped[close + len(end):].strip(), config)
    return False


def count_lines(root_paths, configs=DEFAULT_LANGUAGE_CONFIGS):
    """Per-file counts plus cloc-style per-language aggregates."""
    by_ext = {}
    for cfg in configs:
        for ext in cfg.extensions:
            by_ext.setdefault(ext, cfg)
    unknown = LanguageCommentConfig("unknown", ())

    results = []
    for path in _walk_files(root_paths):
        cfg = by_ext.get(os.path.splitext(path)[1], unknown)
        try:
            with open(path, encoding="utf-8", errors="replace") as fh:
                text = fh.read()
        except OSError as exc:
            log.warning("unreadable file skipped: %s (%s)", path, exc)
            continue
        counted = classify_lines(text, cfg)
        results.append(FileLineCount(
            path=path, language=cfg.language,
            code_lines=counted.code_lines,
            comment_lines=counted.comment_lines,
            blank_lines=counted.blank_lines,
        ))

    aggregate: dict[str, dict[str, int]] = {}
    for fc in results:
        row = aggregate.setdefault(fc.language,
                                   {"files": 0, "blank": 0, "comment": 0, "code": 0})
        row["files"] += 1
        row["blank"] += fc.blank_lines
        row["comment"] += fc.comment_lines
        row["code"] += fc.code_lines
    return results, aggregate
