import random

import pytest

from qualimeter.model import inheritance_closure, validate
from conftest import make_field, make_method, make_model, make_type, random_model


class TestValidate:
    def test_empty_model_is_clean(self):
        assert validate(make_model()) == []

    def test_inheritance_cycle_reported(self):
        m = make_model(
            make_type("p.A", supers=("p.B",)),
            make_type("p.B", supers=("p.A",)),
        )
        violations = validate(m)
        assert any("cycle" in v for v in violations)

    def test_duplicate_type_reported(self):
        m = make_model(make_type("p.A"), make_type("p.A"))
        violations = validate(m)
        assert any("duplicate" in v for v in violations)
        assert any("p.A" in v for v in violations)

    def test_validate_is_idempotent(self):
        m = make_model(make_type("p.A", supers=("p.B",)),
                       make_type("p.B", supers=("p.A",)))
        assert validate(m) == validate(m)

    def test_bad_visibility_reported(self):
        m = make_model(make_type(
            "p.A", fields=(make_field("x", visibility="friend"),)))
        assert any("visibility" in v for v in validate(m))

    def test_corpus_is_clean(self, corpus_model):
        assert validate(corpus_model) == []


class TestInheritanceClosure:
    def test_two_level_chain(self):
        m = make_model(
            make_type("t.SuperC"),
            make_type("t.A", supers=("t.SuperC",)),
            make_type("t.C", supers=("t.A",)),
        )
        ancestors, _ = inheritance_closure(m, "t.C")
        assert ancestors == ["t.A", "t.SuperC"]

    def test_root_has_no_ancestors(self):
        m = make_model(make_type("p.A"))
        ancestors, _ = inheritance_closure(m, "p.A")
        assert ancestors == []

    def test_descendants_are_transitive(self):
        m = make_model(
            make_type("p.A"),
            make_type("p.B", supers=("p.A",)),
            make_type("p.D", supers=("p.A",)),
            make_type("p.E", supers=("p.D",)),
        )
        _, descendants = inheritance_closure(m, "p.A")
        assert descendants == {"p.B", "p.D", "p.E"}

    def test_unknown_type_raises(self):
        with pytest.raises(KeyError):
            inheritance_closure(make_model(), "p.Nope")

    def test_closure_consistency_on_random_models(self):
        rng = random.Random(20240817)
        for _ in range(50):
            m = random_model(rng, max_classes=12)
            for name in m.types:
                _, descendants = inheritance_closure(m, name)
                for child in descendants:
                    ancestors, _ = inheritance_closure(m, child)
                    assert name in ancestors
