"""Tokenization, punctuation trimming, and content-word selection."""

import random

from lyricfit.prosody import STOPWORDS, clean_token, content_words, load_stopwords, tokenize


class TestContentWords:
    def test_fight_and_nights_survive(self):
        assert content_words("the fight of the nights") == [("fight", 1), ("nights", 4)]

    def test_all_stopwords_yield_nothing(self):
        assert content_words("of the and a") == []

    def test_laughs_echo_both_kept(self):
        assert content_words("laughs echo") == [("laughs", 0), ("echo", 1)]

    def test_positions_index_the_original_tokens(self):
        assert content_words("it seems the laughs echo") == [
            ("seems", 1),
            ("laughs", 3),
            ("echo", 4),
        ]

    def test_punctuation_trimmed_but_case_kept(self):
        assert content_words("Stars, burn above!") == [("Stars", 0), ("burn", 1)]

    def test_subset_of_tokens_in_order(self):
        rng = random.Random(415)
        vocab = "the moon a burn of stars night and echo shine to we".split()
        for _ in range(100):
            line = " ".join(rng.choice(vocab) for _ in range(rng.randint(1, 10)))
            tokens = tokenize(line)
            result = content_words(line)
            positions = [p for _, p in result]
            assert positions == sorted(set(positions))
            for word, pos in result:
                assert clean_token(tokens[pos]) == word
                assert word.lower() not in STOPWORDS


class TestTokenCleaning:
    def test_strips_quotes_and_trailing_punctuation(self):
        assert clean_token('"hello!"') == "hello"
        assert clean_token("(night),") == "night"

    def test_keeps_internal_apostrophes(self):
        assert clean_token("don't") == "don't"

    def test_pure_punctuation_becomes_empty(self):
        assert clean_token("--") == ""

    def test_tokenize_splits_on_whitespace(self):
        assert tokenize("  twinkle  twinkle\tlittle ") == ["twinkle", "twinkle", "little"]


class TestStopwordOverride:
    def test_load_from_file(self, tmp_path):
        path = tmp_path / "stop.txt"
        path.write_text("# comment line\nmoon\nSTARS\n\nnight  # trailing\n")
        words = load_stopwords(path)
        assert words == frozenset({"moon", "stars", "night"})
        assert content_words("the moon stars night shine", stopwords=words) == [
            ("the", 0),
            ("shine", 4),
        ]
