"""Exception types shared across the package."""


class CosetSemiError(Exception):
    pass


class ParseError(CosetSemiError):
    """A group spec or Cayley-table file could not be parsed."""


class AxiomError(CosetSemiError):
    """A Cayley table violates a group axiom.

    ``witness`` holds the first failing tuple (a triple for associativity,
    a single element for identity/inverse failures).
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CapExceeded(CosetSemiError):
    pass


class BudgetExceeded(CosetSemiError):
    pass


class NotNormal(CosetSemiError):
    pass


class Degenerate(CosetSemiError):
    pass


class HypothesisFailed(CosetSemiError):
    pass


class SearchTimeout(CosetSemiError):
    """An isomorphism search ran out of time; the answer is unknown."""


class UnknownSuite(CosetSemiError):
    pass
