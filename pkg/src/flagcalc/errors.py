"""Exception types shared across the package."""


class FlagcalcError(Exception):
    """Base class for all errors raised by flagcalc."""


class UnsupportedType(FlagcalcError):
    """Requested Cartan type/rank is not in the supported finite list."""


class BadIndex(FlagcalcError):
    """A simple-root index is outside 1..rank."""


class BadMask(FlagcalcError):
    """A subword bitmask does not match the word length."""


class NotReduced(FlagcalcError):
    """A word that must be reduced is not."""


class PreconditionViolated(FlagcalcError):
    """An operation was called outside its stated domain (e.g. descent case)."""


class InexactDivision(FlagcalcError):
    """Internal: an exact polynomial division left a remainder."""


class NotInSpan(FlagcalcError):
    """A vector is not an integral combination of the requested basis."""


class OracleInconsistency(FlagcalcError):
    """The fixed-point restriction table could not be built consistently.

    This is fatal: it signals a sign/convention error, not bad user input.
    """


class InternalError(FlagcalcError):
    """An arithmetic identity that is guaranteed by theory failed."""


class ParseError(FlagcalcError):
    """A class expression failed to parse; carries the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(message)
        self.pos = pos
