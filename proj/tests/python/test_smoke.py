"""Smoke tests for the Python bindings."""

import json
import os
from pathlib import Path

import pytest

import ecorelint

FIXTURES = Path(os.environ.get("ECORELINT_FIXTURES", "tests/fixtures"))


def load(name: str) -> "ecorelint.Model":
    return ecorelint.load_model(str(FIXTURES / name))


def test_load_and_round_trip():
    model = load("models/library.ecore")
    assert model.root_name == "library"
    original = (FIXTURES / "models/library.ecore").read_bytes().decode()
    assert model.to_xmi() == original
    assert "/library/Book/title" in model.paths()


def test_json_export_parses():
    model = load("models/orders.ecore")
    doc = json.loads(model.to_json())
    assert doc["kind"] == "EPackage"
    assert [c["name"] for c in doc["classifiers"]] == [
        "Order",
        "Customer",
        "Invoice",
        "Status",
    ]


def test_lint_clean_and_cycle():
    assert load("models/library.ecore").lint() == []
    findings = load("models/cycle.ecore").lint()
    assert [d["rule"] for d in findings] == ["SEM-004"]
    assert findings[0]["severity"] == "error"
    assert findings[0]["path"] == "/loop/A"


def test_lint_with_dictionary():
    model = load("rules/EMP-002-pos.ecore")
    findings = model.lint(dictionary=["p", "bad", "name"])
    assert [d["rule"] for d in findings] == ["EMP-002"]


def test_split_identifier():
    assert ecorelint.split_identifier("myBadSpelling") == ["my", "bad", "spelling"]
    assert ecorelint.split_identifier("URLParser2") == ["url", "parser", "2"]


def test_diff_and_changelog():
    a = load("models/library.ecore")
    b = load("models/shapes.ecore")
    assert ecorelint.diff(a, a) == {"added": [], "removed": [], "changed": []}
    delta = ecorelint.diff(a, b)
    # Different root names: nothing matches, so both sides list everything.
    assert "/library/Book" in delta["removed"]
    assert "/shapes/Circle" in delta["added"]
    log = json.loads(ecorelint.changelog(a, a, format="json"))
    assert log == {"added": [], "removed": [], "changed": []}


def test_layout_metrics():
    layout = (FIXTURES / "rules/EMP-101-pos.layout.json").read_text()
    metrics = ecorelint.layout_metrics(layout)
    assert metrics["crossings"] == 0
    assert metrics["min_edge_angle_deg"] == pytest.approx(10.0, abs=0.01)


def test_filter():
    model = load("models/diamond.ecore")
    assert model.filter("supertypes-of:/diamond/D") == [
        "/diamond/A",
        "/diamond/B",
        "/diamond/C",
        "/diamond/D",
    ]


def test_instance_synthesis_and_validation():
    model = load("instances/catalog.ecore")
    xmi = model.new_instance("Library")
    assert model.validate_instance(xmi) == []
    with pytest.raises(ValueError):
        model.new_instance("Media")  # abstract root


def test_search_replace():
    model = load("models/library.ecore")
    replaced, changes = ecorelint.search_replace(model, "Book", "Volume", kinds=["EClass"])
    assert {c["path"] for c in changes} == {"/library/Book"}
    assert "/library/Volume" in replaced.paths()
    # the original Model object is untouched
    assert "/library/Book" in model.paths()


def test_import_conflicts():
    target = load("models/orders.ecore")
    merged, conflicts = ecorelint.import_model(target, load("models/shapes.ecore"))
    assert conflicts == [] and merged is not None
    again, clashes = ecorelint.import_model(target, load("models/orders.ecore"))
    assert again is None
    assert {c["name"] for c in clashes} == {"Order", "Customer", "Invoice", "Status"}


def test_parse_errors_are_value_errors():
    with pytest.raises(ValueError):
        ecorelint.parse_model("<not-ecore/>")
    with pytest.raises(ValueError):
        ecorelint.parse_model("truncated <")


def test_rule_catalog():
    catalog = ecorelint.rule_catalog()
    ids = {r["id"] for r in catalog}
    assert {"SYN-001", "SEM-004", "EMP-101", "INS-005"} <= ids
