"""Exception hierarchy shared across the package."""


class ProgressiveERError(Exception):
    """Base class for every error raised by this package."""


class InvalidPairError(ProgressiveERError, ValueError):
    pass


class SamePair(InvalidPairError):
    """A comparison of a profile with itself."""


class SameSource(InvalidPairError):
    """A clean-clean comparison between two profiles of the same source."""


class IngestionError(ProgressiveERError):
    pass


class ParseError(IngestionError):
    def __init__(self, path, line, message):
        self.path = str(path)
        self.line = line
        super().__init__(f"{path}:{line}: {message}")


class DuplicateExternalId(IngestionError):
    pass


class UnknownId(IngestionError):
    pass


class DivisionDegenerate(ProgressiveERError, ZeroDivisionError):
    pass


class ZeroCardinalityBlock(ProgressiveERError, ZeroDivisionError):
    pass


class NotCoOccurring(ProgressiveERError, ValueError):
    pass


class EmptyBlocks(ProgressiveERError):
    """The blocking workflow produced no block to schedule."""


class EmptyGroundTruth(ProgressiveERError, ValueError):
    pass
