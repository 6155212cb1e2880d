import pytest

from taskmix.errors import LexiconError
from taskmix.lexicon import audit_totality, load_lexicon, load_registries

MINI_REGISTRY = """\
{
  "SCPOS-RW": {
    "source_language": "ja",
    "target_languages": ["en"],
    "text_labels": ["ポジティブ", "ネガティブ"],
    "word_labels": ["関連語"]
  }
}
"""

MINI_LEXICON = """\
# comment line
SCPOS-RW\tja\ten\tポジティブ\tpositive
SCPOS-RW\tja\ten\tネガティブ\tnegative
SCPOS-RW\tja\ten\t関連語\trelated word
"""


def _write(tmp_path, name, content):
    path = tmp_path / name
    path.write_text(content, "utf-8")
    return path


def test_load_and_translate(tmp_path):
    registries = load_registries(_write(tmp_path, "reg.json", MINI_REGISTRY))
    lexicon = load_lexicon(_write(tmp_path, "lex.tsv", MINI_LEXICON), registries)
    assert lexicon.translate("SCPOS-RW", "ja", "en", "ポジティブ") == "positive"


def test_identity_when_same_language(tmp_path):
    registries = load_registries(_write(tmp_path, "reg.json", MINI_REGISTRY))
    lexicon = load_lexicon(_write(tmp_path, "lex.tsv", MINI_LEXICON), registries)
    assert lexicon.translate("SCPOS-RW", "en", "en", "positive") == "positive"


def test_unknown_label_is_an_error(tmp_path):
    registries = load_registries(_write(tmp_path, "reg.json", MINI_REGISTRY))
    lexicon = load_lexicon(_write(tmp_path, "lex.tsv", MINI_LEXICON), registries)
    with pytest.raises(LexiconError, match="unknown label"):
        lexicon.translate("SCPOS-RW", "ja", "en", "unseen-label")


def test_unsupported_pair_is_an_error(tmp_path):
    registries = load_registries(_write(tmp_path, "reg.json", MINI_REGISTRY))
    lexicon = load_lexicon(_write(tmp_path, "lex.tsv", MINI_LEXICON), registries)
    with pytest.raises(LexiconError, match="unsupported language pair"):
        lexicon.translate("SCPOS-RW", "ja", "zh", "ポジティブ")


def test_missing_mapping_fails_load_naming_the_label(tmp_path):
    registries = load_registries(_write(tmp_path, "reg.json", MINI_REGISTRY))
    incomplete = MINI_LEXICON.replace(
        "SCPOS-RW\tja\ten\t関連語\trelated word\n", ""
    )
    with pytest.raises(LexiconError, match="関連語"):
        load_lexicon(_write(tmp_path, "lex.tsv", incomplete), registries)


def test_conflicting_duplicate_rows_fail_load(tmp_path):
    registries = load_registries(_write(tmp_path, "reg.json", MINI_REGISTRY))
    conflicting = MINI_LEXICON + "SCPOS-RW\tja\ten\tポジティブ\tgood\n"
    with pytest.raises(LexiconError, match="conflicting"):
        load_lexicon(_write(tmp_path, "lex.tsv", conflicting), registries)


def test_identical_duplicate_rows_are_tolerated(tmp_path):
    registries = load_registries(_write(tmp_path, "reg.json", MINI_REGISTRY))
    doubled = MINI_LEXICON + "SCPOS-RW\tja\ten\tポジティブ\tpositive\n"
    lexicon = load_lexicon(_write(tmp_path, "lex.tsv", doubled), registries)
    assert lexicon.translate("SCPOS-RW", "ja", "en", "ポジティブ") == "positive"


def test_malformed_row_reports_line(tmp_path):
    registries = load_registries(_write(tmp_path, "reg.json", MINI_REGISTRY))
    broken = MINI_LEXICON + "too\tfew\tfields\n"
    with pytest.raises(LexiconError, match="line 5"):
        load_lexicon(_write(tmp_path, "lex.tsv", broken), registries)


def test_bundled_lexicon_is_total_over_bundled_registries():
    lexicon = load_lexicon()
    assert audit_totality(lexicon, load_registries()) == []


def test_bundled_lexicon_determinism():
    a = load_lexicon()
    b = load_lexicon()
    for dataset, src, tgt, label in [
        ("SCNM", "ja", "en", "動物名"),
        ("SCNM", "ja", "zh", "国名"),
        ("TCREE", "ja", "en", "イベント"),
    ]:
        assert a.translate(dataset, src, tgt, label) == b.translate(
            dataset, src, tgt, label
        )
