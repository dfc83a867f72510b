"""Exception hierarchy shared by all modules."""


class LevirepError(Exception):
    """Base class for every error raised by this package."""


class UnsupportedRank(LevirepError):
    pass


class RankMismatch(LevirepError):
    pass


class VariableCountMismatch(LevirepError):
    pass


class BadIndex(LevirepError):
    pass


class ParseError(LevirepError):
    pass


class NotLeviInvariant(LevirepError):
    pass


class TagMismatch(LevirepError):
    pass


class NotInParabolicImage(LevirepError):
    pass


class NotDominant(LevirepError):
    pass


class NotInLattice(LevirepError):
    pass


class NonTerminating(LevirepError):
    pass


class DegenerateForm(LevirepError):
    pass


class NotInGroup(LevirepError):
    pass


class NotPolynomialCharacter(LevirepError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BadPartition(LevirepError):
    pass


class OutOfStatedRange(LevirepError):
    pass


class NotNested(LevirepError):
    pass


class ConventionError(LevirepError):
    """Raised when the divided-difference orientation fails its anchors."""
