import pytest

from tenseval.lexicon import LexiconError, MorphLexicon, default_lexicon


def test_modal_inventory(lexicon):
    assert lexicon.en_modals == {
        "can", "may", "shall", "must", "could", "might", "should", "would",
    }
    assert "will" not in lexicon.en_modals
    assert lexicon.en_future_aux == {"will"}


def test_modals_disjoint_from_auxiliaries(lexicon):
    assert not lexicon.en_modals & set(lexicon.en_auxiliaries)
    assert not lexicon.en_future_aux & set(lexicon.en_auxiliaries)


def test_lookup_modal(lexicon):
    kinds = {a.kind for a in lexicon.lookup("should")}
    assert kinds == {"en_modal"}


def test_lookup_had_is_doubly_ambiguous(lexicon):
    analyses = lexicon.lookup("had")
    assert len(analyses) == 2
    assert all(a.lemma == "have" for a in analyses)
    features = {frozenset(a.features) for a in analyses}
    assert frozenset({"lemma=have", "finite", "past"}) in features
    assert frozenset({"lemma=have", "participle", "past"}) in features


def test_lookup_unknown_token_is_empty(lexicon):
    assert lexicon.lookup("xylophone") == frozenset()


def test_lookup_is_total_and_pure(lexicon):
    for token in ("", "z", "547", "état", "should", "notaword"):
        if not token:
            continue
        first = lexicon.lookup(token)
        second = lexicon.lookup(token)
        assert first == second


def test_irregular_forms_round_trip(lexicon):
    for base, verb in lexicon.en_irregulars.items():
        assert verb.past and verb.participle
        past_analyses = lexicon.lookup(verb.past)
        assert any(
            a.lemma == base and a.has("finite") and a.has("past")
            for a in past_analyses
        ), base
        pp_analyses = lexicon.lookup(verb.participle)
        assert any(
            a.lemma == base and a.has("participle") for a in pp_analyses
        ), base


def test_irregular_bases_merged_into_verb_bases(lexicon):
    assert "take" in lexicon.en_verb_bases
    assert "vote" in lexicon.en_verb_bases


def test_suffix_voted(lexicon):
    analyses = lexicon.analyze_suffix("voted", "en")
    feats = {tuple(sorted(a.features)) for a in analyses}
    assert ("finite", "past") in feats
    assert ("participle", "past") in feats
    assert all(a.licensed and a.lemma == "vote" for a in analyses)


def test_suffix_running(lexicon):
    analyses = lexicon.analyze_suffix("running", "en")
    assert len(analyses) == 1
    (analysis,) = analyses
    assert analysis.lemma == "run"
    assert analysis.features == {"participle", "present"}


def test_suffix_notified_recovers_y_base(lexicon):
    analyses = lexicon.analyze_suffix("notified", "en")
    assert {a.lemma for a in analyses} == {"notify"}


def test_suffix_closed_class_words_excluded(lexicon):
    assert lexicon.analyze_suffix("was", "en") == frozenset()
    assert lexicon.analyze_suffix("this", "en") == frozenset()


def test_suffix_french_futur(lexicon):
    analyses = lexicon.analyze_suffix("finira", "fr")
    tenses = {a.tense for a in analyses}
    assert tenses == {"futur"}


def test_suffix_french_longest_match_wins(lexicon):
    # -rais (conditionnel) shadows -ais (imparfait) and -is (participe)
    analyses = lexicon.analyze_suffix("voudrais", "fr")
    assert {a.tense for a in analyses} == {"conditionnel"}


def test_suffix_french_nonverbs_rejected(lexicon):
    assert lexicon.analyze_suffix("mais", "fr") == frozenset()
    assert lexicon.analyze_suffix("jamais", "fr") == frozenset()


def test_suffix_french_irregular_participle(lexicon):
    analyses = lexicon.analyze_suffix("fait", "fr")
    assert {a.tense for a in analyses} == {"participe"}


def test_suffix_rejects_empty_token(lexicon):
    with pytest.raises(ValueError):
        lexicon.analyze_suffix("", "en")
    with pytest.raises(ValueError):
        lexicon.analyze_suffix("voted", "de")


def test_chain_interrupters(lexicon):
    assert lexicon.is_chain_interrupter("just")
    assert lexicon.is_chain_interrupter("therefore")
    assert lexicon.is_chain_interrupter("certainly")  # -ly rule
    assert not lexicon.is_chain_interrupter("voted")


def test_loader_rejects_malformed_line(tmp_path):
    bad = tmp_path / "bad.tsv"
    bad.write_text("good\ten_verb_base\t-\nonly two\tcolumns\n", encoding="utf-8")
    with pytest.raises(LexiconError) as err:
        MorphLexicon.load(tmp_path)
    assert "bad.tsv:2" in str(err.value)


def test_loader_rejects_unknown_table(tmp_path):
    bad = tmp_path / "bad.tsv"
    bad.write_text("word\tno_such_table\t-\n", encoding="utf-8")
    with pytest.raises(LexiconError):
        MorphLexicon.load(tmp_path)


def test_default_lexicon_is_cached_and_versioned():
    first = default_lexicon()
    second = default_lexicon()
    assert first is second
    assert first.version.strip()
