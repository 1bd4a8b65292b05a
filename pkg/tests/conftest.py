"""Shared fixtures: the parsed fixture corpus, its hand-counted manifest,
and small builders for synthetic class models."""

import json
import pathlib
import random

import pytest

from qualimeter.ingest import parse_java_source
from qualimeter.model import (
    ClassModel,
    FieldDecl,
    HalsteadCounts,
    MethodDecl,
    TypeDecl,
)

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
CORPUS = FIXTURES / "corpus"


@pytest.fixture(scope="session")
def corpus_model():
    return parse_java_source([str(CORPUS / "fx")])


@pytest.fixture(scope="session")
def manifest():
    return json.loads((CORPUS / "manifest.json").read_text())


def make_method(name, params=(), visibility="public", accesses=(), calls=(),
                decisions=0, statements=0, ctor=False, static=False,
                abstract=False, returns="void", overrides=False,
                halstead=None, code_lines=0, comment_lines=0, blank_lines=0):
    return MethodDecl(
        name=name, param_types=tuple(params), return_type=returns,
        visibility=visibility, is_static=static, is_abstract=abstract,
        is_constructor=ctor, accessed_fields=tuple(accesses),
        called_methods=tuple(calls), decision_count=decisions,
        statement_count=statements,
        halstead=halstead or HalsteadCounts(),
        code_lines=code_lines, comment_lines=comment_lines,
        blank_lines=blank_lines, overrides_super=overrides,
    )


def make_field(name, type_name="int", visibility="private", static=False):
    return FieldDecl(name=name, declared_type=type_name,
                     visibility=visibility, is_static=static)


def make_type(name, kind="class", supers=(), implements=(), fields=(),
              methods=(), package=None, total_lines=0, comment_lines=0):
    if package is None:
        package = name.rpartition(".")[0]
    return TypeDecl(
        qualified_name=name, kind=kind, super_types=tuple(supers),
        implemented_interfaces=tuple(implements), fields=tuple(fields),
        methods=tuple(methods), package_name=package,
        total_lines=total_lines, comment_lines=comment_lines,
    )


def make_model(*types, externals=()):
    return ClassModel(types=tuple(types), external_types=tuple(externals))


def random_model(rng: random.Random, max_classes=30) -> ClassModel:
    """A structurally valid random model for property tests."""
    count = rng.randint(1, max_classes)
    packages = ["pa", "pb", "pc"]
    names = [f"{rng.choice(packages)}.C{i}" for i in range(count)]
    types = []
    for i, name in enumerate(names):
        supers = ()
        if i > 0 and rng.random() < 0.5:
            supers = (names[rng.randrange(i)],)  # earlier class: acyclic
        fields = tuple(
            make_field(f"f{j}", visibility=rng.choice(
                ("public", "protected", "package", "private")))
            for j in range(rng.randint(0, 4)))
        methods = []
        for j in range(rng.randint(0, 5)):
            target = rng.choice(names)
            accesses = []
            if rng.random() < 0.5:
                accesses.append((target, "f0"))
            methods.append(make_method(
                f"m{j}",
                visibility=rng.choice(
                    ("public", "protected", "package", "private")),
                accesses=accesses,
                decisions=rng.randint(0, 4),
                overrides=bool(supers) and rng.random() < 0.3,
            ))
        types.append(make_type(name, supers=supers, fields=fields,
                               methods=tuple(methods)))
    return make_model(*types)
