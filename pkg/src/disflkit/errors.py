"""Exception hierarchy shared by all disflkit modules.

Every data-level failure raises a subclass of :class:`ToolkitError` so the
CLI can map it to a diagnostic on stderr and exit status 1.  Usage errors
(bad flags, missing arguments) are argparse's business and exit with 2.
"""


class ToolkitError(Exception):
    """Base class for all data errors raised by disflkit."""


class MalformedTag(ToolkitError):
    """A transcript item has unbalanced or nested tag delimiters."""


class EmptyPartial(ToolkitError):
    """A bare hyphen: partial-word marker with no prefix letters."""


class DuplicateId(ToolkitError):
    """The same utterance_id appears more than once."""


class MissingField(ToolkitError):
    """A manifest record lacks a required field."""

    def __init__(self, field: str, message: str | None = None):
        self.field = field
        super().__init__(message or f"missing required field {field!r}")


class MalformedRecord(ToolkitError):
    """A manifest line is not a well-formed record."""


class BadDuration(ToolkitError):
    """duration_sec is negative or not a number."""


class UncoverableCharacter(ToolkitError):
    """No vocabulary piece covers a character of the input text."""

    def __init__(self, position: int, message: str | None = None):
        self.position = position
        super().__init__(message or f"no vocabulary piece covers character at position {position}")


class TargetTooSmall(ToolkitError):
    """Requested vocabulary size cannot even hold the alphabet plus specials."""


class EmptyReference(ToolkitError):
    """WER is undefined: the reference contains no words."""


class UnknownUtteranceId(ToolkitError):
    """A hypothesis refers to an utterance_id absent from the references."""


class ZeroBaseline(ToolkitError):
    """Relative metrics are undefined when the baseline WER is zero."""


class MissingBaseline(ToolkitError):
    """No designated baseline entry among the inputs to report on."""


class IdCollision(ToolkitError):
    """Two manifests being merged share an utterance_id."""
