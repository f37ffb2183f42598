"""Exception hierarchy.

Validation errors carry a ``witness`` so a failing table can be debugged
without re-running the scan.
"""


class ISWError(Exception):
    """Base class for every error raised by the package."""


class InvalidSemigroup(ISWError, ValueError):
    kind = "invalid"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

    def to_json(self):
        return {"error": self.kind, "message": str(self), "witness": self.witness}


class MalformedTable(InvalidSemigroup):
    kind = "malformed_table"


class NotAssociative(InvalidSemigroup):
    kind = "not_associative"


class NotRegular(InvalidSemigroup):
    kind = "not_regular"


class IdempotentsDoNotCommute(InvalidSemigroup):
    kind = "idempotents_do_not_commute"


class NonUniqueInverse(InvalidSemigroup):
    kind = "non_unique_inverse"


class OrderTooLarge(ISWError):
    pass


class DegreeTooLarge(ISWError, ValueError):
    pass


class EmptyGeneratorSet(ISWError, ValueError):
    pass


class NotAGroup(ISWError, ValueError):
    pass


class LinksNotFunctorial(ISWError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidPair(ISWError, ValueError):
    pass


class ArityMismatch(ISWError, ValueError):
    pass


class BudgetExceeded(ISWError):
    pass


class LevelTooLarge(ISWError, ValueError):
    pass


class TheoremMismatch(ISWError, AssertionError):
    """Two routes that must agree by a proved theorem disagree.

    Never expected to fire; if it does, either the code or the theorem is
    wrong and the witness should be kept.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CharacterizationMismatch(TheoremMismatch):
    pass


class FormatError(ISWError, ValueError):
    """Input file is not JSON or does not follow one of the documented layouts."""
