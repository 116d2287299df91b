"""Exception hierarchy shared by every module of the workbench."""


class RBWBError(Exception):
    """Base class for all workbench errors."""


class DivisionByZero(RBWBError, ZeroDivisionError):
    pass


class MixedFieldContexts(RBWBError, TypeError):
    pass


class DimensionMismatch(RBWBError, ValueError):
    pass


class KTooLarge(RBWBError, ValueError):
    pass


class OrderTooLarge(RBWBError, ValueError):
    pass


class NotAnRBOperator(RBWBError, ValueError):
    pass


class SubgroupCheckFailed(RBWBError):
    """Image or kernel of an RB operator failed to be a subgroup."""


class CandidateFails(RBWBError):
    pass


class HypothesisViolated(RBWBError, ValueError):
    def __init__(self, which, detail=""):
        self.which = which
        super().__init__(f"{which}: {detail}" if detail else which)


class ConstraintViolated(RBWBError, ValueError):
    pass


class WrongCharacteristic(RBWBError, ValueError):
    pass


class SpaceTooLarge(RBWBError, ValueError):
    pass


class UnknownGenerator(RBWBError, KeyError):
    pass


class UnknownCheck(RBWBError, KeyError):
    pass


class FlavorMismatch(RBWBError, ValueError):
    pass


class ParseError(RBWBError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
