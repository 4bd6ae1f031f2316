import json

import numpy as np
import pytest

import einstein4 as e4
from einstein4 import documents
from einstein4.documents import DocumentError, emit_document, parse_document


BERGER_DOC = json.dumps({
    "format_version": 1,
    "berger": {"lambda": 1.0, "a": [1 / 6, 1 / 6, 2 / 3], "b": [-1 / 6, -1 / 6, 1 / 3]},
})

RIEMANN_DOC = json.dumps({
    "format_version": 1,
    "riemann": {"components": [
        {"indices": [1, 2, 1, 2], "value": 1.0},
        {"indices": [3, 4, 3, 4], "value": 1.0},
    ]},
})


class TestParse:
    def test_berger_document(self):
        doc = parse_document(BERGER_DOC)
        assert doc.kind == "berger"
        assert np.allclose(doc.berger.a, [1 / 6, 1 / 6, 2 / 3])

    def test_riemann_document_filled_by_symmetry(self, s2xs2_tensor):
        doc = parse_document(RIEMANN_DOC)
        assert doc.kind == "riemann"
        assert np.allclose(doc.riemann.components, s2xs2_tensor.components)

    def test_duplicate_consistent_assignment_ok(self):
        text = json.dumps({
            "format_version": 1,
            "riemann": {"components": [
                {"indices": [1, 2, 1, 2], "value": 1.0},
                {"indices": [2, 1, 1, 2], "value": -1.0},
                {"indices": [3, 4, 3, 4], "value": 1.0},
            ]},
        })
        doc = parse_document(text)
        assert doc.riemann.components[0, 1, 0, 1] == 1.0

    def test_conflicting_assignment_rejected(self):
        text = json.dumps({
            "format_version": 1,
            "riemann": {"components": [
                {"indices": [1, 2, 1, 2], "value": 1.0},
                {"indices": [2, 1, 1, 2], "value": 1.0},  # must be -1 by antisymmetry
            ]},
        })
        with pytest.raises(DocumentError, match="conflicting"):
            parse_document(text)

    def test_bianchi_violation_rejected(self):
        text = json.dumps({
            "format_version": 1,
            "riemann": {"components": [{"indices": [1, 2, 3, 4], "value": 1.0}]},
        })
        with pytest.raises(DocumentError, match="curvature tensor"):
            parse_document(text)

    def test_invalid_json(self):
        with pytest.raises(DocumentError, match="invalid JSON"):
            parse_document("{not json")

    def test_wrong_version(self):
        with pytest.raises(DocumentError, match="format_version"):
            parse_document(json.dumps({"format_version": 2, "berger": {}}))

    def test_both_sections_rejected(self):
        text = json.dumps({"format_version": 1, "berger": {}, "riemann": {}})
        with pytest.raises(DocumentError, match="exactly one"):
            parse_document(text)

    def test_bad_indices(self):
        text = json.dumps({
            "format_version": 1,
            "riemann": {"components": [{"indices": [0, 2, 1, 2], "value": 1.0}]},
        })
        with pytest.raises(DocumentError, match="indices"):
            parse_document(text)

    def test_inadmissible_berger_rejected(self):
        text = json.dumps({
            "format_version": 1,
            "berger": {"lambda": 1.0, "a": [0.5, 0.2, 0.3], "b": [0, 0, 0]},
        })
        with pytest.raises(DocumentError, match="berger"):
            parse_document(text)


class TestEmit:
    def test_round_trip_idempotent(self):
        for text in (BERGER_DOC, RIEMANN_DOC):
            once = emit_document(parse_document(text))
            twice = emit_document(parse_document(once))
            assert once == twice

    def test_emit_berger_parses_back(self, cp2):
        text = documents.emit_berger_document(cp2)
        doc = parse_document(text)
        assert np.allclose(doc.berger.a, cp2.a)
        assert np.allclose(doc.berger.b, cp2.b)

    def test_riemann_emit_minimal_components(self):
        doc = parse_document(RIEMANN_DOC)
        data = json.loads(emit_document(doc))
        assert len(data["riemann"]["components"]) == 2


class TestShippedData:
    @pytest.mark.parametrize("name,kind", [
        ("s4", "berger"), ("cp2", "berger"), ("s2xs2", "riemann"), ("sampled", "berger"),
    ])
    def test_shipped_documents_parse(self, name, kind):
        from importlib import resources
        text = resources.files("einstein4").joinpath(f"data/{name}.json").read_text()
        doc = parse_document(text)
        assert doc.kind == kind

    def test_sampled_document_is_first_of_stream(self):
        from importlib import resources
        text = resources.files("einstein4").joinpath("data/sampled.json").read_text()
        doc = parse_document(text)
        bf = e4.sample_admissible(seed=7, count=1)[0]
        assert np.allclose(doc.berger.a, bf.a)
        assert np.allclose(doc.berger.b, bf.b)
