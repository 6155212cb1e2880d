import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import reference_parse
from taskmix.errors import FormatError
from taskmix.format import (
    LabelEntityPair,
    Sample,
    build_input,
    pair_from_tuple,
    parse_input,
    parse_output,
    serialize_output,
    validate_sample,
    validate_task_word,
)

P = LabelEntityPair


# ---------------------------------------------------------------- task words

def test_task_word_rejects_reserved_and_whitespace():
    for bad in ("", "N R", "a:b", "a;b", "a/b", "x\tb", "a\n"):
        with pytest.raises(FormatError):
            validate_task_word(bad)
    validate_task_word("NER")
    validate_task_word("TCREE")


# --------------------------------------------------------------- input lines

def test_build_input_example():
    line = build_input("Giant pandas are mammals, endemic to China.", "NER")
    assert line == "Giant pandas are mammals, endemic to China. /NER"


def test_build_input_rejects_empty_text():
    with pytest.raises(FormatError, match="empty text"):
        build_input("", "NER")


def test_build_input_rejects_whitespace_task_word():
    with pytest.raises(FormatError, match="whitespace"):
        build_input("abc", "N R")


def test_parse_input_inverse_of_build():
    assert parse_input("Giant pandas are mammals, endemic to China. /NER") == (
        "Giant pandas are mammals, endemic to China.",
        "NER",
    )


def test_parse_input_splits_at_last_slash():
    assert parse_input("text with /slash inside /NER") == (
        "text with /slash inside",
        "NER",
    )


def test_parse_input_missing_marker():
    with pytest.raises(FormatError):
        parse_input("no marker here")


def test_parse_input_empty_task_word():
    with pytest.raises(FormatError):
        parse_input("some text /")


@given(
    text=st.text(min_size=1, max_size=60),
    word=st.text(
        alphabet=st.characters(whitelist_categories=("Lu", "Ll", "Nd")),
        min_size=1,
        max_size=8,
    ),
)
def test_input_round_trip_property(text, word):
    assert parse_input(build_input(text, word)) == (text, word)


# -------------------------------------------------------------- output lines

def test_parse_output_example():
    parsed = parse_output("nature NER:Animal Name;pandas:Nation;China", "NER")
    assert parsed.text_label == "nature"
    assert parsed.pairs == {("Animal Name", "pandas"), ("Nation", "China")}
    assert parsed.raw_tail is None


def test_parse_output_marker_absent():
    parsed = parse_output("some text without marker", "NER")
    assert parsed.text_label == ""
    assert parsed.pairs == frozenset()


def test_parse_output_tcree_tail():
    parsed = parse_output("positive TCREE:rel;arg1;arg2", "TCREE", tcree_mode=True)
    assert parsed.text_label == "positive"
    assert parsed.raw_tail == "rel;arg1;arg2"
    assert parsed.pairs == frozenset()


def test_parse_output_keeps_malformed_chunks_as_tuples():
    parsed = parse_output("lbl NER:only-label:a;b;c", "NER")
    assert ("only-label",) in parsed.pairs
    assert ("a", "b", "c") in parsed.pairs


def test_parse_output_drops_empty_chunks_keeps_blank_ones():
    # "::" yields an empty chunk (dropped pre-strip); " : " survives the
    # filter and strips down to a 1-tuple of ""
    parsed = parse_output("x NER: ; :  : ", "NER")
    assert parsed.pairs  # permissive: junk decodes, validation rejects later


def test_serialize_output_example():
    line = serialize_output(
        "nature", [P("Animal Name", "pandas"), P("Nation", "China")], "NER"
    )
    assert line == "nature NER:Animal Name;pandas:Nation;China"


def test_serialize_output_empty_pairs():
    assert serialize_output("label", [], "NER") == "label NER"


def test_serialize_output_rejects_reserved_characters():
    with pytest.raises(FormatError, match="reserved"):
        serialize_output("lbl", [P("a:b", "x")], "NER")
    with pytest.raises(FormatError, match="reserved"):
        serialize_output("lbl", [P("a", "x;y")], "NER")


def test_serialize_output_rejects_task_word_in_label():
    with pytest.raises(FormatError, match="task word"):
        serialize_output("aNERb", [], "NER")


def test_serialize_output_tcree_tail_round_trip():
    line = serialize_output("positive", [], "TCREE", raw_tail="rel;arg1;arg2")
    assert line == "positive TCREE:rel;arg1;arg2"
    parsed = parse_output(line, "TCREE", tcree_mode=True)
    assert parsed.raw_tail == "rel;arg1;arg2"


_field = st.text(
    alphabet=st.characters(
        blacklist_characters=":;", blacklist_categories=("Cs", "Cc", "Zs", "Zl", "Zp")
    ),
    min_size=1,
    max_size=12,
)


@given(
    label=_field,
    pairs=st.lists(st.tuples(_field, _field), max_size=5),
    word=st.sampled_from(["NER", "POS", "RW", "TCREE2"]),
)
@settings(max_examples=200)
def test_output_round_trip_property(label, pairs, word):
    if word in label:
        label = label.replace(word, "x")
        if not label:
            label = "x"
    pair_objs = [P(a, b) for a, b in pairs]
    parsed = parse_output(serialize_output(label, pair_objs, word), word)
    assert parsed.text_label == label
    assert parsed.pairs == {(a, b) for a, b in pairs}


def test_duplicate_pairs_collapse_to_set():
    pairs = [P("A", "x"), P("A", "x"), P("B", "y")]
    parsed = parse_output(serialize_output("l", pairs, "NER"), "NER")
    assert parsed.pairs == {("A", "x"), ("B", "y")}


# ------------------------------------------------- reference-decoder parity

def _random_outputs(seed, n):
    rng = random.Random(seed)
    pool = ["NER", ":", ";", "a", "b", "label", " ", "ポ", "中", "x;y", "p:q", "/"]
    for _ in range(n):
        yield "".join(rng.choice(pool) for _ in range(rng.randint(0, 14)))


@pytest.mark.parametrize("tcree", [False, True])
def test_parse_matches_reference_on_random_soup(tcree):
    for output in _random_outputs(7 if tcree else 11, 300):
        got = parse_output(output, "NER", tcree)
        assert (got.text_label, set(got.pairs), got.raw_tail) == reference_parse(
            output, "NER", tcree
        )


# ------------------------------------------------------------------ samples

def _fig_sample(**overrides):
    base = dict(
        id="s1",
        dataset="SCNM",
        language="en",
        text="Giant pandas are mammals, endemic to China.",
        task_word="NER",
        text_label="nature",
        pairs=[P("Animal Name", "pandas"), P("Nation", "China")],
    )
    base.update(overrides)
    return Sample(**base)


def test_validate_sample_clean_with_grounding():
    assert validate_sample(_fig_sample(), grounding=True) == []


def test_validate_sample_ungrounded_entity():
    sample = _fig_sample(pairs=[P("Animal Name", "panda bears")])
    violations = validate_sample(sample, grounding=True)
    assert [v.rule for v in violations] == ["grounding"]
    assert violations[0].field == "pairs[0].entity"
    # without grounding the same sample is fine
    assert validate_sample(sample, grounding=False) == []


def test_validate_sample_empty_text_label():
    violations = validate_sample(_fig_sample(text_label=" "))
    assert any(v.field == "text_label" and v.rule == "empty" for v in violations)


def test_validate_sample_flags_one_tuple_pair():
    sample = _fig_sample(pairs=[pair_from_tuple(("Animal Name",))])
    violations = validate_sample(sample)
    assert any(v.field == "pairs[0].entity" and v.rule == "empty" for v in violations)


def test_validate_sample_flags_reserved_in_label():
    sample = _fig_sample(pairs=[P("a;b", "pandas")])
    assert any(v.rule == "reserved" for v in validate_sample(sample))


def test_validate_sample_unknown_dataset_language():
    violations = validate_sample(_fig_sample(dataset="NOPE", language="fr"))
    assert {v.field for v in violations} == {"dataset", "language"}


def test_pair_from_tuple_folds_extra_fields():
    assert pair_from_tuple(("a", "b", "c")) == P("a", "b;c")
    assert pair_from_tuple(("a",)) == P("a", "")
    assert pair_from_tuple(()) == P("", "")
