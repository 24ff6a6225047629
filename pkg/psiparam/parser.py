"""This module defines the document formats
used to read the input and write the results of the routines.
"""

import abc
import csv
import enum
import io
import json
import math
import numbers

import numpy as np

import psiparam.errors as errors


def _format_float(value):
    """17 significant digits, enough to read back the same float."""
    value = float(value)
    if not math.isfinite(value):
        raise errors.ValidationError(f"can't write the number {value}")
    # adding 0.0 turns -0.0 into 0.0
    return "%.17g" % (value + 0.0)


class Parser:
    """Subclasses of this abstract class define
    how documents will be parsed and written.
    """

    @staticmethod
    @abc.abstractmethod
    def get_name():
        """Returns the constant name which is associated to this parser."""
        raise NotImplementedError()

    @abc.abstractmethod
    def parse(self, text):
        """Parses a document.

        Args:
            text (str): the document

        Returns:
            dict containing the key value pairs of the document

        Raises:
            ParseError: if the document is malformed
        """
        raise NotImplementedError()

    @abc.abstractmethod
    def unparse(self, data):
        """Composes the data to a string
        which follows the syntax of the parser.

        Args:
            data (dict): data as key value pairs

        Returns:
            string
        """
        raise NotImplementedError()


class JsonParser(Parser):
    """Parses a json object, writes it on a single line."""

    @staticmethod
    def get_name():
        return "json"

    def parse(self, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as error:
            raise errors.ParseError(
                error.msg, line=error.lineno, column=error.colno
            ) from error
        if not isinstance(data, dict):
            raise errors.ParseError(
                f"expected a json object, got {type(data).__name__}",
                line=1,
                column=1,
            )
        return data

    def unparse(self, data):
        return self._encode(data)

    def _encode(self, value):
        if value is None or isinstance(value, (bool, np.bool_)):
            return json.dumps(None if value is None else bool(value))
        if isinstance(value, str):
            return json.dumps(value)
        if isinstance(value, numbers.Integral):
            return str(int(value))
        if isinstance(value, numbers.Real):
            return _format_float(value)
        if isinstance(value, dict):
            return (
                "{"
                + ", ".join(
                    json.dumps(str(key)) + ": " + self._encode(item)
                    for key, item in value.items()
                )
                + "}"
            )
        if isinstance(value, (list, tuple, np.ndarray)):
            return "[" + ", ".join(self._encode(item) for item in value) + "]"
        raise errors.ValidationError(
            f"can't write a value of type {type(value).__name__}"
        )


class CsvParser(Parser):
    """Parses and writes comma separated rows of numbers.

    The data is a dict with a "header" list and a "rows" list.
    Other dicts are written as a header of their keys
    and a single row of their values.
    """

    @staticmethod
    def get_name():
        return "csv"

    def parse(self, text):
        reader = csv.reader(io.StringIO(text))
        lines = [line for line in reader if line]
        if not lines:
            raise errors.ParseError("expected a header row", line=1)
        header, *rows = lines
        parsed_rows = []
        for number, row in enumerate(rows, start=2):
            if len(row) != len(header):
                raise errors.ParseError(
                    f"expected {len(header)} values, got {len(row)}",
                    line=number,
                )
            try:
                parsed_rows.append([float(value) for value in row])
            except ValueError as error:
                raise errors.ParseError(str(error), line=number) from error
        return {"header": header, "rows": parsed_rows}

    def unparse(self, data):
        if "header" in data and "rows" in data:
            header, rows = data["header"], data["rows"]
        else:
            header, rows = list(data.keys()), [list(data.values())]
        stream = io.StringIO()
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(self._format(value) for value in row)
        return stream.getvalue().rstrip("\n")

    @staticmethod
    def _format(value):
        if isinstance(value, (bool, np.bool_, str)) or value is None:
            return value
        if isinstance(value, numbers.Integral):
            return str(int(value))
        return _format_float(value)


@enum.unique
class ParserOption(str, enum.Enum):
    JSON = JsonParser
    CSV = CsvParser

    def __new__(cls, parser_class):
        inst = str.__new__(cls)
        inst._value_ = parser_class.get_name()
        inst.parser_class = parser_class
        return inst
