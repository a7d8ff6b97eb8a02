"""Tokenization, stopwords, and content-word selection."""

from __future__ import annotations

import re

_TOKEN_RE = re.compile(r"\S+")
_TRIM_RE = re.compile(r"^[^0-9A-Za-z']+|[^0-9A-Za-z']+$")

# articles, prepositions, pronouns, auxiliaries, conjunctions, and their
# common contractions; importance scoring treats everything else as content
STOPWORDS = frozenset("""
a about above after again against ain't all also always am an and are aren't
as at be been being below beneath between both but by can can't cannot could
couldn't did didn't do does doesn't done down during each ever every few for
from had has hasn't have haven't having he he's her hers herself him himself
his how i i'd i'll i'm i've if in into is isn't it it's its itself just let's
may me might mine most must my myself never no nor not now of off on once only
or other our ours ourselves out over own same shall she she's should shouldn't
so some such than that that's the their theirs them themselves then there
there's these they they're this those though through to too under unto up upon
us very was wasn't we we'll we're we've were weren't what what's when where
which while who whom whose why will with won't would wouldn't yet you you'd
you'll you're you've your yours yourself
""".split())


def tokenize(line: str) -> list[str]:
    return _TOKEN_RE.findall(line)


def clean_token(token: str) -> str:
    """Strip surrounding punctuation, keeping internal apostrophes/hyphens."""
    return _TRIM_RE.sub("", token)


def content_words(line: str, stopwords: frozenset[str] = STOPWORDS) -> list[tuple[str, int]]:
    out = []
    for position, token in enumerate(tokenize(line)):
        word = clean_token(token)
        if word and word.lower() not in stopwords:
            out.append((word, position))
    return out


def load_stopwords(path) -> frozenset[str]:
    """Read one stopword per line; '#' comments and blanks ignored."""
    words = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.split("#", 1)[0].strip().lower()
            if word:
                words.append(word)
    return frozenset(words)
