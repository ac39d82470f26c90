"""Exception hierarchy shared across the engine."""


class PrefqError(Exception):
    """Base class for all engine errors."""


class FormulaSyntaxError(PrefqError):
    """Raised by the DSL parser; carries the offending position and expectations."""

    def __init__(self, message, position, expected=()):
        self.position = position
        self.expected = tuple(expected)
        detail = f"{message} at position {position}"
        if self.expected:
            detail += f" (expected {', '.join(self.expected)})"
        super().__init__(detail)


class FormulaTypeError(PrefqError):
    """Sort violation: order atom on D, mixed-sort atom, unknown attribute."""


class SchemaMismatch(PrefqError):
    """Two operands were expected to share a schema but do not."""


class StageCapExceeded(PrefqError):
    """A fixpoint iteration ran past its configured stage cap."""

    def __init__(self, cap, context=""):
        self.cap = cap
        suffix = f" while computing {context}" if context else ""
        super().__init__(f"no fixpoint within {cap} stages{suffix}")


class NotAnIntervalOrder(PrefqError):
    """Weak-order extension requires an interval-order input."""


class NotSPO(PrefqError):
    """An incremental law was invoked without its strict-partial-order precondition."""


class StaleCache(PrefqError):
    """A cached winnow result no longer matches the live relation version."""


class HeaderMismatch(PrefqError):
    """CSV header row does not match the declared schema."""


class ValueParseError(PrefqError):
    """A CSV cell could not be parsed under its attribute's sort."""

    def __init__(self, row, column, text):
        self.row = row
        self.column = column
        super().__init__(f"row {row}, column {column!r}: cannot parse {text!r}")


class DuplicateTuple(PrefqError):
    """A duplicate tuple was found while building an instance."""

    def __init__(self, row):
        self.row = row
        super().__init__(f"duplicate tuple at row {row}")


class OverlapError(PrefqError):
    """Insert and delete sets of one update overlap."""


class NotZeroCompatible(PrefqError):
    """Utility combination requires 0-compatible induced orders."""


class VersionError(PrefqError):
    """Session file carries an unknown format version."""


class CommandError(PrefqError):
    """A session command failed; carries position context inside the command text."""
