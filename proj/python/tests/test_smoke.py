import json
import os
from pathlib import Path

import pytest

import amlkit

DATA = Path(os.environ.get("AMLKIT_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def test_round_trip_and_sugar():
    assert amlkit.normalize("C->A") == "C -> A"
    assert amlkit.canonical_term("~~[]B") == amlkit.canonical_term("[]B")
    assert amlkit.canonical("~~A -> B") == amlkit.canonical("A -> B")


def test_parse_error_is_value_error():
    with pytest.raises(amlkit.ParseError):
        amlkit.normalize("A ->")
    with pytest.raises(ValueError):
        amlkit.normalize("(A")


def test_check_shipped_proof():
    r = amlkit.check((DATA / "proofs" / "aai_fig3.prf").read_text())
    assert r["accepted"], r["message"]
    assert r["conclusion"] is not None


def test_check_needs_theory():
    text = (DATA / "proofs" / "enace_s5.prf").read_text()
    assert not amlkit.check(text, "AML")["accepted"]
    assert amlkit.check(text, "AML_S5")["accepted"]


def test_prove_barbara_and_recheck():
    r = amlkit.prove(["B -> A", "C -> B"], "C -> A")
    assert r["depth"] == 1
    assert amlkit.check(r["proof"])["accepted"]


def test_prove_failure_is_reported():
    r = amlkit.prove(["A -> <u>~B"], "B -> <u>~A", depth=4)
    assert r["proof"] is None
    assert r["reason"]


def test_refute_returns_a_violating_model():
    r = amlkit.refute(["A -> <u>~B"], "B -> <u>~A")
    assert r["model"] is not None
    assert json.loads(r["model"])
    assert amlkit.evaluate(r["model"], ["A -> <u>~B"], "B -> <u>~A") == "violated"


def test_evaluate_snow_model():
    snow = (DATA / "models" / "snow.model.json").read_text()
    assert amlkit.evaluate(snow, ["Man -> <u>~White"], "White -> <u>~Man") == "violated"


def test_classify_moods():
    assert amlkit.classify("AAA", "first")["verdict"] == "valid"
    bad = amlkit.classify("AAA", "second")
    assert bad["verdict"] == "invalid"
    assert amlkit.evaluate(bad["model"], bad["premises"], bad["conclusion"]) == "violated"
    assert amlkit.classify("AAI", "third")["premises"][0] == "*C"
