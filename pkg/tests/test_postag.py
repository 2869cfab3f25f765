import pytest

from acadaid.postag import COARSE_TAGS, LexiconTagger, TaggedDocument, load_tagged_corpus


@pytest.fixture(scope="module")
def tagger():
    return LexiconTagger()


class TestLexiconTagger:
    def test_function_words(self, tagger):
        assert tagger.tag_word("the") == "DET"
        assert tagger.tag_word("of") == "ADP"
        assert tagger.tag_word("and") == "CONJ"
        assert tagger.tag_word("they") == "PRON"

    def test_lexicon_verbs_and_adjectives(self, tagger):
        assert tagger.tag_word("said") == "VERB"
        assert tagger.tag_word("big") == "ADJ"

    def test_suffix_heuristics(self, tagger):
        assert tagger.tag_word("quickly") == "ADV"
        assert tagger.tag_word("financial") == "ADJ"
        assert tagger.tag_word("evaluation") == "NOUN"
        assert tagger.tag_word("running") == "VERB"

    def test_numeric(self, tagger):
        assert tagger.tag_word("1234") == "NUM"
        assert tagger.tag_word("3-4") == "NUM"

    def test_fallback_noun(self, tagger):
        assert tagger.tag_word("flibbertigibbet") == "NOUN"
        assert tagger.tag_word("corpus") == "NOUN"

    def test_sequence_tagging(self, tagger):
        tags = tagger.tag(["the", "error", "rate", "is", "low"])
        assert tags == ("DET", "NOUN", "NOUN", "VERB", "ADJ")


class TestTaggedDocument:
    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            TaggedDocument("d", ("a", "b"), ("NOUN",))

    def test_unknown_tag_rejected(self):
        with pytest.raises(ValueError):
            TaggedDocument("d", ("a",), ("NOMINAL",))


class TestLoadTaggedCorpus:
    def test_parses_token_tag_pairs(self, tmp_path):
        p = tmp_path / "tagged.txt"
        p.write_text("The_DET error_NOUN rate_NOUN\nWe_PRON report_VERB\n", encoding="utf-8")
        docs = load_tagged_corpus(p)
        assert len(docs) == 2
        assert docs[0].tokens == ("the", "error", "rate")
        assert docs[0].tags == ("DET", "NOUN", "NOUN")

    def test_bad_tag_names_line(self, tmp_path):
        p = tmp_path / "tagged.txt"
        p.write_text("ok_NOUN\nbad_WORD\n", encoding="utf-8")
        with pytest.raises(ValueError, match="line 2"):
            load_tagged_corpus(p)

    def test_missing_separator_rejected(self, tmp_path):
        p = tmp_path / "tagged.txt"
        p.write_text("plain token stream\n", encoding="utf-8")
        with pytest.raises(ValueError):
            load_tagged_corpus(p)


def test_tag_set_is_complete():
    assert len(COARSE_TAGS) == 12
    assert set(COARSE_TAGS) >= {"ADJ", "NOUN", "VERB", "PUNCT", "OTHER"}
