"""Exception types shared across the engine."""


class LyricfitError(Exception):
    """Base class for all engine errors."""


# --- melody parsing / export ---

class MalformedFile(LyricfitError):
    """Input bytes are not a well-formed file of the declared format."""


class UnsupportedContent(LyricfitError):
    """File parsed but contains nothing usable (no parts, no sounding notes)."""


class PolyphonyError(LyricfitError):
    """Chord found in the selected voice; the engine is monophonic."""

    def __init__(self, measure_index: int):
        super().__init__(f"chord in measure {measure_index}; melody must be monophonic")
        self.measure_index = measure_index


class AlignmentError(LyricfitError):
    """Syllables do not fit the notes they are attached to."""

    def __init__(self, message: str, phrase_index: int | None = None):
        super().__init__(message)
        self.phrase_index = phrase_index


# --- text / prosody ---

class EmptyWord(LyricfitError):
    pass


class EmptyLine(LyricfitError):
    pass


class EmptyText(LyricfitError):
    pass


class NoVowel(LyricfitError):
    """Word contains no vowel sound, so no rhyme key exists."""


# --- fitting pipeline ---

class TooManySyllables(LyricfitError):
    """Line has more syllables than the phrase has singable notes."""

    def __init__(self, excess: int):
        super().__init__(f"{excess} syllable(s) too many for the phrase")
        self.excess = excess


class NoViableCandidate(LyricfitError):
    """Every revision failed validation, including the repair retry."""


# --- generation ---

class MissingVariable(LyricfitError):
    """Prompt template placeholder left unbound."""

    def __init__(self, name: str):
        super().__init__(f"template variable {name!r} not provided")
        self.name = name


class CountMismatch(LyricfitError):
    """Generator response did not contain the expected number of items."""

    def __init__(self, got: int, expected: int):
        super().__init__(f"expected {expected} item(s), got {got}")
        self.got = got
        self.expected = expected


class GeneratorUnavailable(LyricfitError):
    """Text generator could not be reached after retries."""


class AuthError(LyricfitError):
    """Generator endpoint rejected the supplied credentials."""


# --- project service ---

class NotFound(LyricfitError):
    pass


class VersionConflict(LyricfitError):
    """Stale project version supplied with a mutation."""

    def __init__(self, supplied: int, current: int):
        super().__init__(f"project version is {current}, mutation based on {supplied}")
        self.supplied = supplied
        self.current = current


class ThemeMissing(LyricfitError):
    pass


class MelodyMissing(LyricfitError):
    pass


class DraftMissing(LyricfitError):
    pass


class NothingToExport(LyricfitError):
    pass


class SynthesisUnavailable(LyricfitError):
    pass


class LineCountMismatch(LyricfitError):
    def __init__(self, got: int, expected: int):
        super().__init__(f"{got} lyric line(s) for {expected} phrase(s)")
        self.got = got
        self.expected = expected
