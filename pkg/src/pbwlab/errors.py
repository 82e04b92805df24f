"""Exception types shared across the workbench."""


class PbwError(Exception):
    """Base class for all workbench errors."""


class DivisionByZero(PbwError, ZeroDivisionError):
    """Division by the zero rational function, or a substitution/evaluation
    that collapses a denominator to zero."""


class NonTerminating(PbwError):
    """The rewriting step budget was exceeded; the rule set is ill-founded
    or the budget too small for the input."""


class UnknownGenerator(PbwError):
    pass


class TwistAxiomFailure(PbwError):
    """The coefficient-transport axiom failed; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnknownKey(PbwError):
    pass


class MissingParameter(PbwError):
    pass


class ConfluenceFailure(PbwError):
    """A shipped catalogue presentation failed its confluence check."""


class PoleInF(PbwError):
    """The raising tensor operator hits a pole n + 2h = 0 on the module."""


class SolveFailure(PbwError):
    """The triangular projector-coefficient solve broke down (engine bug)."""


class CutoffTooSmall(PbwError):
    """A projector series did not stabilize between consecutive cutoffs."""


class DegenerateWeight(PbwError):
    """Non-generic weights: a singular subspace has the wrong dimension or a
    coefficient denominator vanishes on an encountered weight."""


class DslSyntaxError(PbwError):
    """Parse error with source location."""

    def __init__(self, message, line, col):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
