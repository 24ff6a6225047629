"""Settings of the command line routines."""

import os

import attr

import psiparam.errors as errors


TOLERANCE_VARIABLE = "PSIPARAM_TOLERANCE"
DEFAULT_DISPLAY_TOLERANCE = 1e-12


def _tolerance(value):
    try:
        tolerance = float(value)
    except (TypeError, ValueError) as error:
        raise errors.UsageError(
            f"{TOLERANCE_VARIABLE} must be a number, got {value!r}"
        ) from error
    if not 0 <= tolerance < float("inf"):
        raise errors.UsageError(
            f"{TOLERANCE_VARIABLE} must be a non-negative number, "
            f"got {value!r}"
        )
    return tolerance


@attr.s(frozen=True)
class Settings:
    """Data class which holds the configurable values.

    Attributes:
        display_tolerance (float): allowed deviation when the routines
            re-check the values they print
    """

    display_tolerance = attr.ib(
        default=DEFAULT_DISPLAY_TOLERANCE, converter=_tolerance
    )

    @classmethod
    def from_environment(cls, environ=os.environ):
        value = environ.get(TOLERANCE_VARIABLE)
        if value is None or not value.strip():
            return cls()
        return cls(value)
