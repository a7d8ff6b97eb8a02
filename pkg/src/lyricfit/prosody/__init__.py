"""Pronunciation, syllable, rhyme, and keyword analysis."""

from .keywords import KeywordScore, extract_keywords
from .lexicon import (
    Lexicon,
    Syllabification,
    Syllable,
    count_line_syllables,
    count_word_syllables,
    default_lexicon,
    syllabify,
)
from .rhyme import rhyme_key, rhymes
from .words import STOPWORDS, clean_token, content_words, load_stopwords, tokenize

__all__ = [
    "KeywordScore",
    "extract_keywords",
    "Lexicon",
    "Syllabification",
    "Syllable",
    "count_line_syllables",
    "count_word_syllables",
    "default_lexicon",
    "syllabify",
    "rhyme_key",
    "rhymes",
    "STOPWORDS",
    "clean_token",
    "content_words",
    "load_stopwords",
    "tokenize",
]
