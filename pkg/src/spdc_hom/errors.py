"""Exception hierarchy.

Configuration-side failures derive from ``ConfigError``; everything raised
while computing derives from ``NumericalError``. The CLI maps the two
families to exit codes 2 and 3.
"""


class SpdcError(Exception):
    pass


class ConfigError(SpdcError, ValueError):
    pass


class MaterialLoadError(ConfigError):
    pass


class MaterialRangeError(ConfigError):
    """Wavelength outside the validity window of a dispersion model."""


class NumericalError(SpdcError, ArithmeticError):
    pass


class DomainError(NumericalError, ValueError):
    """Argument outside the mathematical domain of a formula."""


class ResolutionError(NumericalError):
    """Grid too coarse or too narrow for the requested quantity."""


class NumericalConsistencyError(NumericalError):
    pass


class ShapeError(NumericalError, ValueError):
    pass


class RangeWarning(UserWarning):
    """Delay range too short for a reliable baseline estimate."""
