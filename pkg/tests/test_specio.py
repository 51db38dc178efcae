import json

import pytest

from ainfkit.specio import FORMAT, SpecError, dump_document, load_spec


def test_load_valid_document(fixture_path):
    doc = load_spec(fixture_path("gapped_product.json"))
    assert len(doc.algebra.names) == 9
    emb_a, emb_b = doc.embedding_pair()
    assert emb_a.target is doc.algebra
    b = doc.bounding("b")
    assert not b.is_zero()


def test_missing_sections_are_located(fixture_path, tmp_path):
    p = tmp_path / "min.json"
    p.write_text(json.dumps({"format": FORMAT}))
    doc = load_spec(str(p))
    with pytest.raises(SpecError, match="algebra"):
        doc.algebra
    with pytest.raises(SpecError, match="embeddings"):
        doc.embedding_pair()
    with pytest.raises(SpecError, match="bounding"):
        doc.bounding()


def test_bad_format_and_syntax(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("[1, 2]")
    with pytest.raises(SpecError, match="top level"):
        load_spec(str(p))
    p.write_text('{"format": "ainfctl/0"}')
    with pytest.raises(SpecError, match="format"):
        load_spec(str(p))
    p.write_text("{")
    with pytest.raises(SpecError, match="invalid JSON"):
        load_spec(str(p))
    with pytest.raises(SpecError):
        load_spec(str(tmp_path / "absent.json"))


def test_validation_errors_carry_location(fixture_path, tmp_path):
    raw = json.load(open(fixture_path("derham_t1.json")))
    # corrupt one structure constant's output degree
    op = raw["algebra"]["ops"][0]
    op["output"] = raw["algebra"]["space"]["basis"][0][0]
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(raw))
    doc = load_spec(str(p))
    with pytest.raises(SpecError, match="algebra"):
        doc.algebra


def test_unknown_bounding_name_rejected(fixture_path, tmp_path):
    raw = json.load(open(fixture_path("barcode_simple.json")))
    raw["bounding"]["b"] = {"ghost": [["1", "1"]]}
    p = tmp_path / "ghost.json"
    p.write_text(json.dumps(raw))
    doc = load_spec(str(p))
    with pytest.raises(SpecError, match="ghost"):
        doc.bounding("b")


def test_dump_document_is_canonical():
    a = dump_document({"b": 1, "a": [2, 3]})
    b = dump_document({"a": [2, 3], "b": 1})
    assert a == b
    assert a.endswith("\n")
