"""Exception hierarchy shared by the counting engine and the CLI."""


class PalcountError(Exception):
    """Base class for all errors raised by palcount."""


class IntegralityError(PalcountError, ArithmeticError):
    """A float-assisted count strayed from an integer by more than the tolerance."""


class ExactRangeError(PalcountError, OverflowError):
    """q**n is too large for the float-assisted path to stay exact."""


class CountOverflowError(PalcountError, OverflowError):
    """A count does not fit in a signed 64-bit integer."""


class SearchSpaceError(PalcountError, ValueError):
    """A brute-force search or group enumeration exceeds its size guard."""
