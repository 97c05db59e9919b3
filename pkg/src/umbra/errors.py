"""Exception hierarchy shared by every module.

All errors derive from ``UmbraError`` so the CLI can map them to exit code 2
without catching unrelated bugs.
"""


class UmbraError(Exception):
    """Base class for library errors."""


class CapacityError(UmbraError):
    """Requested Bernoulli index exceeds the table cap."""


class InadmissiblePointError(UmbraError, ValueError):
    """A function was asked for a value at a pole or off its branch."""


class LatticePoleError(UmbraError):
    """The summand has poles on the integer lattice used by the summation rule."""


class NotSummableError(UmbraError):
    """The requested summation mode does not apply to this function."""


class UnknownSymbolError(UmbraError, KeyError):
    """An umbral symbol has no tabled moment value."""


class NotAlternatingError(UmbraError, ValueError):
    """Series acceleration was given terms that do not alternate and decrease."""


class PVDivergenceError(UmbraError):
    """Principal-value estimates grow instead of settling."""


class QuadratureError(UmbraError):
    """An integrand produced a non-finite value."""


class ZeroFileError(UmbraError, ValueError):
    """A zeros file is malformed."""


class RegistryError(UmbraError, KeyError):
    """Unknown identity or oracle name."""
