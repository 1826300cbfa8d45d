"""Exception hierarchy.

Input errors (bad files, unknown names, ill-typed arguments) derive from
``InputError``; failures of a law or a gluing obligation derive from
``ObligationError`` and carry the report that explains them.
"""


class DslglueError(Exception):
    pass


class InputError(DslglueError):
    pass


class ParseError(InputError):
    pass


class UnknownSigil(InputError):
    def __init__(self, sigil):
        super().__init__(f"unknown sigil {sigil}")
        self.sigil = sigil


class UnknownSymbol(InputError):
    def __init__(self, name):
        super().__init__(f"unknown symbol {name}")
        self.name = name


class UnknownBuiltin(InputError):
    def __init__(self, name):
        super().__init__(f"unknown builtin {name}")
        self.name = name


class ArityMismatch(InputError):
    pass


class TypeMismatch(InputError):
    pass


class InvalidBound(InputError):
    pass


class IllColoredTerm(InputError):
    pass


class IndexOutOfRange(IllColoredTerm):
    pass


class ColorMismatch(IllColoredTerm):
    pass


class SizeMismatch(InputError):
    pass


class PreconditionError(InputError):
    pass


class SearchSpaceExceeded(DslglueError):
    pass


class ObligationError(DslglueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvalidMorphism(ObligationError):
    pass


class SafetyViolation(ObligationError):
    pass


class InconsistentQuotient(ObligationError):
    pass


class ActionDisagreement(ObligationError):
    pass
