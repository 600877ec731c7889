"""Exception types shared across the pipeline.

All errors raised for bad user input derive from VckbError so the CLI can
map them to exit code 1; anything else escaping to the top level is treated
as an internal invariant violation (exit code 2).
"""


class VckbError(Exception):
    """Base class for input and data errors."""


class InvalidCategory(VckbError):
    """Category string names a combination outside the valid taxonomy leaves."""


class MalformedRecord(VckbError):
    """A corpus, KB, or lexicon line violates the documented schema."""

    def __init__(self, path, line_number, message):
        super().__init__(f"{path}:{line_number}: {message}")
        self.path = str(path)
        self.line_number = line_number


class DanglingReference(VckbError):
    """A triple refers to an object id absent from its image."""


class EmptyCorpus(VckbError):
    """Scene corpus contained no records."""


class EmptyKb(VckbError):
    """Knowledge-base file contained no edges."""


class EmptyPhrase(VckbError):
    """Phrase was empty or whitespace-only."""


class NotAnNP(VckbError):
    """Token span is not a recognizable noun phrase."""


class InvalidConfig(VckbError):
    """Export configuration violates its invariants."""


class IoFailure(VckbError):
    """Reading or writing a dataset file failed."""
