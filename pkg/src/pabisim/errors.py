"""Exception hierarchy shared by all modules."""


class PAError(Exception):
    """Base class for every error raised by pabisim."""


class MassExceedsOne(PAError):
    pass


class DuplicateState(PAError):
    pass


class NotInSupport(PAError):
    pass


class UncoveredState(PAError):
    pass


class DimensionMismatch(PAError):
    pass


class ActionMismatch(PAError):
    pass


class CoverMismatch(PAError):
    pass


class InvalidAutomaton(PAError):
    pass


class NotBisimilar(PAError):
    pass


class NotQuotient(PAError):
    pass


class NotRescaled(PAError):
    pass


class MeetNotBisimilar(PAError):
    """Raised when a computed meet/join fails its post-hoc bisimilarity check.

    Unreachable for valid finite inputs; kept as a guard against exactly the
    failure mode that non-compact (infinite) automata exhibit.
    """


class InvalidQuotientSet(PAError):
    pass


class PaParseError(PAError):
    """Parse failure in a ``.pa`` document, carrying a source position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class PaSyntaxError(PaParseError):
    pass


class MassNotOne(PaParseError):
    pass


class UnknownState(PaParseError):
    pass


class UnknownAction(PaParseError):
    pass


class IrrationalLiteral(PaParseError):
    pass
