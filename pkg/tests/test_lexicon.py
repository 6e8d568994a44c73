import dataclasses

import pytest

from echosent.lexicon import (
    EMOTION_CATEGORIES,
    load_emotion_lexicon,
    load_valence_lexicon,
    normalize_token,
)

# Known rows of the bundled valence excerpt.
KNOWN_VALENCES = {
    ":-)": 1.3,
    "lmao": 2.0,
    "lol": 2.9,
    "abducted": -2.3,
    "abduction": -2.8,
    "agrees": 1.5,
    "alarm": -1.4,
    "alarmed": -1.4,
    "alarmist": -1.1,
    "amaze": 2.5,
    "amort": -2.1,
}


def test_bundled_valence_rows_roundtrip(vlex):
    for token, value in KNOWN_VALENCES.items():
        assert vlex.lookup(token) == value


def test_roundtrip_property_against_file(data_dir):
    # independent parse of the same file: every valid row must round-trip
    path = str(data_dir / "vader_lexicon.txt")
    lex = load_valence_lexicon(path)
    with open(path, encoding="utf-8") as fh:
        rows = [line.rstrip("\n").split("\t") for line in fh if line.strip()]
    assert rows
    for fields in rows:
        assert lex.lookup(fields[0]) == float(fields[1])


def test_case_folding_and_verbatim_symbols(vlex):
    assert vlex.lookup("LOL") == 2.9
    assert vlex.lookup("Lol") == 2.9
    assert vlex.lookup(":-)") == 1.3
    assert normalize_token(":-)") == ":-)"
    assert normalize_token("LOL") == "lol"


def test_absent_token_is_none_not_error(vlex):
    assert vlex.lookup("zzzzqq") is None
    assert "zzzzqq" not in vlex


def test_empty_file(tmp_path):
    p = tmp_path / "empty.txt"
    p.write_text("")
    lex = load_valence_lexicon(p)
    assert len(lex) == 0
    assert lex.lookup("anything") is None


def test_extra_columns_ignored(tmp_path):
    p = tmp_path / "lex.txt"
    p.write_text("fine\t0.8\t0.6\t[1, 0, 1]\n")
    assert load_valence_lexicon(p).lookup("fine") == 0.8


def test_duplicate_rows_last_wins_with_warning(tmp_path, caplog):
    p = tmp_path / "lex.txt"
    p.write_text("good\t1.9\ngood\t1.0\n")
    with caplog.at_level("WARNING"):
        lex = load_valence_lexicon(p)
    assert lex.lookup("good") == 1.0
    assert any("duplicate" in rec.message for rec in caplog.records)


@pytest.mark.parametrize(
    "content",
    ["good\n", "good\tnotanumber\n", "good\t4.5\n", "good\t-7\n", "\t1.0\n"],
)
def test_valence_errors(tmp_path, content):
    p = tmp_path / "lex.txt"
    p.write_text(content)
    with pytest.raises(ValueError):
        load_valence_lexicon(p)


def test_missing_file():
    with pytest.raises(OSError):
        load_valence_lexicon("/nonexistent/path/lexicon.txt")


def test_two_loads_equal_and_immutable(data_dir):
    path = str(data_dir / "vader_lexicon.txt")
    a = load_valence_lexicon(path)
    b = load_valence_lexicon(path)
    assert a == b
    with pytest.raises(TypeError):
        a.entries["new"] = 1.0
    with pytest.raises(dataclasses.FrozenInstanceError):
        a.source = "elsewhere"


# ---------------------------------------------------------------------------
# Emotion lexicon


def test_bundled_emotion_rows(elex):
    assert elex.lookup("abandon") == {"fear", "negative", "sadness"}
    assert elex.lookup("abacus") == {"trust"}


def test_flag_zero_token_absent(tmp_path):
    p = tmp_path / "emo.txt"
    p.write_text("abacus\ttrust\t0\n")
    lex = load_emotion_lexicon(p)
    assert lex.lookup("abacus") is None
    assert len(lex) == 0


def test_emotion_set_built_from_flag_one_rows(tmp_path):
    p = tmp_path / "emo.txt"
    p.write_text(
        "abandon\tfear\t1\nabandon\tnegative\t1\nabandon\tsadness\t1\n"
        "abandon\tjoy\t0\n"
    )
    lex = load_emotion_lexicon(p)
    assert lex.lookup("abandon") == {"fear", "negative", "sadness"}


@pytest.mark.parametrize(
    "content",
    ["word\tboredom\t1\n", "word\tfear\t2\n", "word\tfear\tx\n", "word\tfear\n"],
)
def test_emotion_errors(tmp_path, content):
    p = tmp_path / "emo.txt"
    p.write_text(content)
    with pytest.raises(ValueError):
        load_emotion_lexicon(p)


def test_emotion_categories_are_the_ten_moods():
    assert len(EMOTION_CATEGORIES) == 10
    assert set(EMOTION_CATEGORIES) == {
        "anticipation", "positive", "negative", "sadness", "disgust",
        "joy", "anger", "surprise", "fear", "trust",
    }


def test_symbol_tokens_have_no_letters(vlex):
    symbols = vlex.symbol_tokens()
    assert ":-)" in symbols
    assert "lol" not in symbols
    assert all(not any(c.isalpha() for c in tok) for tok in symbols)
