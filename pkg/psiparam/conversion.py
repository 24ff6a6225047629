"""Converters for the attributes of the value classes."""

import numbers

import numpy as np

import psiparam.errors as errors


def to_readonly_array(value, dtype=float):
    """Copies the value into a numpy array which can't be modified.

    Args:
        value (array-like): the data
        dtype (numpy.dtype): the element type

    Returns:
        numpy.ndarray: read-only copy

    Raises:
        ValidationError: if the value isn't numeric
    """
    try:
        array = np.array(value, dtype=dtype)
    except (TypeError, ValueError) as error:
        raise errors.ValidationError(
            f"expected numeric values: {error}"
        ) from error
    if array.dtype.kind in "fc" and not np.all(np.isfinite(array)):
        raise errors.ValidationError("values must be finite")
    array.setflags(write=False)
    return array


def to_index(value):
    """Converts a value to an int,
    rejecting booleans and non-integral numbers.
    """
    if isinstance(value, (bool, np.bool_)):
        raise errors.ValidationError(f"expected an integer, got {value!r}")
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, numbers.Real) and float(value).is_integer():
        return int(value)
    if isinstance(value, str):
        try:
            return int(value)
        except ValueError:
            pass
    raise errors.ValidationError(f"expected an integer, got {value!r}")


def to_index_tuple(values):
    """Converts an iterable of integers to a sorted tuple without duplicates.

    Args:
        values (iterable of int): the indices

    Returns:
        tuple of int
    """
    if isinstance(values, (str, bytes)) or not hasattr(values, "__iter__"):
        raise errors.ValidationError(
            f"expected a list of indices, got {values!r}"
        )
    return tuple(sorted({to_index(value) for value in values}))


def to_float(value):
    """Converts a number to float, rejecting booleans and non-finite values."""
    if isinstance(value, (bool, np.bool_)):
        raise errors.ValidationError(f"expected a number, got {value!r}")
    try:
        result = float(value)
    except (TypeError, ValueError) as error:
        raise errors.ValidationError(
            f"expected a number, got {value!r}"
        ) from error
    if not np.isfinite(result):
        raise errors.ValidationError(f"expected a finite number, got {value}")
    return result


def to_float_tuple(value):
    """Converts a number or a sequence of numbers to a tuple of floats."""
    if isinstance(value, (numbers.Real, np.floating, str)):
        return (to_float(value),)
    try:
        return tuple(to_float(item) for item in value)
    except TypeError as error:
        raise errors.ValidationError(
            f"expected a number or a list of numbers, got {value!r}"
        ) from error
