import json

import pytest

from ppanaphora.harness import io
from ppanaphora.model import ValidationError

from conftest import data_bytes

FIXTURES = ["corpus.json", "cycle.json", "discourse.json"]


def test_shipped_corpus_loads(corpus):
    assert sorted(corpus) == ["chain", "ex1", "ex2"]
    ex2 = corpus["ex2"].sentences[0]
    assert [p.preposition for p in ex2.pps] == ["since", "at", "in", "on"]


@pytest.mark.parametrize("name", FIXTURES)
def test_corpus_round_trip(name, lex):
    docs = io.load_corpus(data_bytes(name), lex)
    text = io.serialize_corpus(docs)
    again = io.load_corpus(text, lex)
    assert again == docs
    assert io.serialize_corpus(again) == text
    # one document per line
    assert len(text.splitlines()) == len(docs) + 2


def test_lexicon_round_trip(lex):
    again = io.load_lexicon(io.serialize_lexicon(lex))
    assert again == lex
    assert io.lexicon_to_dict(again) == io.lexicon_to_dict(lex)


def test_rules_round_trip(rules, lex):
    again = io.load_rules(io.serialize_rules(rules), lex)
    assert again == rules
    assert io.rules_to_dict(again) == io.rules_to_dict(rules)


@pytest.mark.parametrize("data", [b"", b"   \n"])
def test_empty_file(data):
    with pytest.raises(io.FormatError, match="empty file"):
        io.load_corpus(data)


def test_json_error_reports_position():
    with pytest.raises(io.FormatError, match="line 2 column"):
        io.load_corpus(b'{"documents": [\n  {"id": }]}')


def test_non_utf8_is_a_format_error():
    with pytest.raises(io.FormatError, match="UTF-8"):
        io.load_lexicon(b'{"classes": ["\xff"]}')


def test_missing_field_names_location():
    with pytest.raises(io.FormatError, match=r"documents\[0\]"):
        io.load_corpus(b'{"documents": [{"sentences": []}]}')


def test_rule_with_undefined_class(lex):
    raw = {"rules": [{"governor": "buy", "prep": "of", "object_class": "WIDGET",
                      "role": "THEME", "score": 3}]}
    with pytest.raises(io.DanglingReferenceError) as info:
        io.load_rules(json.dumps(raw), lex)
    assert info.value.ref == "WIDGET"


def test_rule_score_must_be_positive(lex):
    raw = {"rules": [{"governor": "buy", "prep": "of", "object_class": "HUMAN",
                      "role": "THEME", "score": 0}]}
    with pytest.raises(io.FormatError, match="positive"):
        io.load_rules(json.dumps(raw), lex)


def _corpus_dict():
    return json.loads(data_bytes("corpus.json"))


def test_dangling_np_reference():
    raw = _corpus_dict()
    raw["documents"][1]["sentences"][0]["pps"][0]["object"] = "e42"
    with pytest.raises(io.DanglingReferenceError, match="e42"):
        io.load_corpus(json.dumps(raw))


def test_duplicate_id_in_document():
    raw = _corpus_dict()
    s = raw["documents"][1]["sentences"][0]
    s["pps"][1]["id"] = s["pps"][0]["id"]
    with pytest.raises(io.FormatError, match="used twice"):
        io.load_corpus(json.dumps(raw))


def test_validation_runs_with_lexicon(lex):
    raw = _corpus_dict()
    raw["documents"][1]["sentences"][0]["pps"][0]["sites"] = []
    io.load_corpus(json.dumps(raw))   # structurally fine
    with pytest.raises(ValidationError):
        io.load_corpus(json.dumps(raw), lex)
