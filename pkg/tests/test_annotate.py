import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tenseval.annotate import (
    AnnotationError,
    annotate,
    annotate_text,
    detokenize,
    read_annotated,
    tokenize,
    write_annotated,
)
from tenseval.tense_en import label_annotated, label_sentence


def surfaces(text):
    return [t.surface for t in tokenize(text)]


def tags_of(text, lexicon):
    return [(a.surface, a.tag, a.lemma) for a in annotate(tokenize(text), lexicon)]


# ---------------------------------------------------------------- tokenize


def test_tokenize_contraction_expansion():
    assert surfaces("I'll go.") == ["I", "will", "go", "."]
    assert surfaces("We've won.") == ["We", "have", "won", "."]
    assert surfaces("They're here.") == ["They", "are", "here", "."]
    assert surfaces("I'm done.") == ["I", "am", "done", "."]
    assert surfaces("He doesn't know.") == ["He", "does", "not", "know", "."]


def test_tokenize_negative_special_cases():
    assert surfaces("We won't go.") == ["We", "will", "not", "go", "."]
    assert surfaces("I can't say.") == ["I", "can", "not", "say", "."]
    assert surfaces("We cannot agree.") == ["We", "can", "not", "agree", "."]


def test_tokenize_keeps_ambiguous_clitics():
    assert surfaces("That's fine.") == ["That", "'s", "fine", "."]
    assert surfaces("I'd go.") == ["I", "'d", "go", "."]


def test_tokenize_plain_sentence():
    assert surfaces("We therefore abstained.") == [
        "We", "therefore", "abstained", ".",
    ]


def test_tokenize_empty_input():
    assert tokenize("") == []
    assert tokenize("   \t ") == []


def test_tokenize_punctuation_and_spans():
    tokens = tokenize('He said: "wait, (really) wait!"')
    assert [t.surface for t in tokens] == [
        "He", "said", ":", '"', "wait", ",", "(", "really", ")", "wait", "!", '"',
    ]
    for first, second in zip(tokens, tokens[1:]):
        assert first.span[1] <= second.span[0]
        assert first.index + 1 == second.index
    assert all(t.span[0] < t.span[1] for t in tokens)


def test_tokenize_hyphenated_words_stay_whole():
    assert surfaces("the last part-session .") == [
        "the", "last", "part-session", ".",
    ]


_VOCAB = [
    "We", "voted", "don't", "I'll", "that's", "(well)", "again...", "27",
    "part-session", "employers'", "won't", "He", "said:", '"quote"', "it",
]


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from(_VOCAB), min_size=0, max_size=10))
def test_tokenize_detokenize_round_trip(words):
    first = tokenize(" ".join(words))
    second = tokenize(detokenize(first))
    assert [t.surface for t in first] == [t.surface for t in second]


# ------------------------------------------------------------------ annotate


def test_annotate_preserves_length_and_is_deterministic(lexicon):
    tokens = tokenize("That's why the way had been paved in Helsinki.")
    first = annotate(tokens, lexicon)
    second = annotate(tokens, lexicon)
    assert len(first) == len(tokens)
    assert first == second


def test_annotate_helsinki_sentence(lexicon):
    tagged = dict(
        (a.surface, (a.tag, a.lemma))
        for a in annotate_text("That's why the way had been paved in Helsinki.", lexicon)
    )
    assert tagged["'s"] == ("finite-present", "be")
    assert tagged["had"] == ("finite-past", "have")
    assert tagged["been"] == ("participle-past", "be")
    assert tagged["paved"] == ("participle-past", "pave")


def test_annotate_clitic_d_resolution(lexicon):
    finished = tags_of("I'd finished it.", lexicon)
    assert finished[1] == ("'d", "finite-past", "have")
    go = tags_of("I'd go home.", lexicon)
    assert go[1] == ("'d", "modal", "would")


def test_annotate_possessive_s(lexicon):
    tags = tags_of("Europe 's position on enlargement stays firm .", lexicon)
    assert tags[1] == ("'s", "other", "'s")


def test_annotate_past_participle_ambiguity(lexicon):
    made_finite = tags_of("We made comparisons.", lexicon)
    assert made_finite[1][1] == "finite-past"
    made_participle = tags_of("We have made comparisons.", lexicon)
    assert made_participle[2][1] == "participle-past"


def test_annotate_s_form_licensing(lexicon):
    occurs = tags_of("a new crisis occurs next year", lexicon)
    assert ("occurs", "finite-present", "occur") in occurs
    # proper nouns never receive a suffix reading
    mrs = tags_of("I believed that Mrs Lulling was wrong .", lexicon)
    assert ("Mrs", "other", "mrs") in mrs
    assert ("Lulling", "other", "lulling") in mrs


def test_annotate_going_to(lexicon):
    tags = tags_of("We are going to act now .", lexicon)
    assert ("going", "going-to", "go") in tags


def test_annotate_imperative_base(lexicon):
    tags = tags_of("Let us now hope for more .", lexicon)
    assert tags[0] == ("Let", "finite-present", "let")


def test_annotate_attributive_ed_demoted(lexicon):
    tags = dict(
        (a.surface, a.tag)
        for a in annotate_text(
            "I will cite as an example qualified majority voting .", lexicon
        )
    )
    assert tags["qualified"] == "other"


def test_annotate_undecidable_tokens_become_other(lexicon):
    tags = tags_of("Blorp festoon quark .", lexicon)
    assert all(tag == "other" for _, tag, _ in tags)


# --------------------------------------------------------- gold annotations


def test_read_annotated_well_formed(tmp_path):
    path = tmp_path / "gold.txt"
    path.write_text(
        "We\tother\t-\nvoted\tfinite-past\tvote\n.\tother\t-\n",
        encoding="utf-8",
    )
    sentences = read_annotated(path)
    assert len(sentences) == 1
    assert len(sentences[0]) == 3
    assert sentences[0][1].tag == "finite-past"
    assert sentences[0][1].lemma == "vote"


def test_read_annotated_two_columns_fails_with_line_number(tmp_path):
    path = tmp_path / "gold.txt"
    path.write_text("We\tother\t-\nvoted\tfinite-past\n", encoding="utf-8")
    with pytest.raises(AnnotationError) as err:
        read_annotated(path)
    assert "gold.txt:2" in str(err.value)


def test_read_annotated_unknown_tag_fails(tmp_path):
    path = tmp_path / "gold.txt"
    path.write_text("We\tnoun\t-\n", encoding="utf-8")
    with pytest.raises(AnnotationError):
        read_annotated(path)


def test_read_annotated_missing_verb_lemma_fails(tmp_path):
    path = tmp_path / "gold.txt"
    path.write_text("voted\tfinite-past\t-\n", encoding="utf-8")
    with pytest.raises(AnnotationError):
        read_annotated(path)


def test_read_annotated_empty_file(tmp_path):
    path = tmp_path / "gold.txt"
    path.write_text("", encoding="utf-8")
    assert read_annotated(path) == []


def test_write_read_round_trip(tmp_path, lexicon):
    sentences = [
        annotate_text("We voted on them.", lexicon),
        annotate_text("The world is changing.", lexicon),
    ]
    path = tmp_path / "out.txt"
    write_annotated(sentences, path)
    back = read_annotated(path)
    assert [[(a.surface, a.tag, a.lemma) for a in s] for s in back] == [
        [(a.surface, a.tag, a.lemma if a.lemma else "") for a in s]
        for s in sentences
    ]


def test_gold_path_matches_heuristic_path_on_identical_tags(tmp_path, lexicon):
    texts = [
        "We have made this change.",
        "What will happen if a new crisis occurs next year?",
        "Hello there.",
    ]
    sentences = [annotate_text(t, lexicon) for t in texts]
    path = tmp_path / "tags.txt"
    write_annotated(sentences, path)
    reread = read_annotated(path)
    for text, gold in zip(texts, reread):
        assert str(label_annotated(gold)) == str(label_sentence(text, lexicon))
