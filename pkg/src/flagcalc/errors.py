"""Exception hierarchy.

Every domain error carries a short machine-readable ``code`` which the
command line emits as ``{"error": code, "detail": ...}``.
"""


class FlagCalcError(Exception):
    code = "Error"

    def __init__(self, detail=""):
        super().__init__(detail)
        self.detail = detail


class InvalidCartan(FlagCalcError):
    code = "InvalidCartan"


class BadDiagonal(InvalidCartan):
    code = "BadDiagonal"


class BadPair(InvalidCartan):
    code = "BadPair"


class AsymmetricZero(InvalidCartan):
    code = "AsymmetricZero"


class NotSymmetrizable(InvalidCartan):
    code = "NotSymmetrizable"


class UnclassifiableComponent(FlagCalcError):
    code = "UnclassifiableComponent"


class UnsupportedType(FlagCalcError):
    code = "UnsupportedType"


class IndexOutOfRange(FlagCalcError):
    code = "IndexOutOfRange"


class NonTerminating(FlagCalcError):
    code = "NonTerminating"


class NonIntegral(FlagCalcError):
    code = "NonIntegral"


class NonIntegralResult(NonIntegral):
    code = "NonIntegralResult"


class NotFound(FlagCalcError):
    code = "NotFound"


class CapacityExceeded(FlagCalcError):
    code = "CapacityExceeded"


class BudgetExceeded(FlagCalcError):
    code = "BudgetExceeded"


class InconsistentDerivation(FlagCalcError):
    code = "InconsistentDerivation"


class NotReduced(FlagCalcError):
    code = "NotReduced"


class CheckpointCorrupt(FlagCalcError):
    code = "CheckpointCorrupt"
