"""Exception hierarchy shared by every cdakit module."""


class CDAError(Exception):
    """Base class for all cdakit errors."""


class InvalidArray(CDAError, ValueError):
    pass


class InvalidInteraction(CDAError, ValueError):
    pass


class InvalidStrength(CDAError, ValueError):
    pass


class InvalidWindow(CDAError, ValueError):
    pass


class InvalidSymbol(CDAError, ValueError):
    pass


class NotAPrimePower(CDAError, ValueError):
    pass


class ParameterError(CDAError, ValueError):
    pass


class IngredientError(CDAError, ValueError):
    """An input array does not have the property a construction needs."""


class ConstructionVerificationError(CDAError):
    """A construction produced an array that failed its own postcondition."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InfeasibleCheck(CDAError):
    """A brute-force check would exceed its configured work budget."""


class RecipeError(CDAError, ValueError):
    pass


class UnknownSeed(CDAError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown seed"


class ArrayFormatError(CDAError, ValueError):
    pass
