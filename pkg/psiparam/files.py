import contextlib
import pathlib
import sys

import psiparam.errors as errors


STANDARD_STREAM = "-"


def is_inline(source):
    """Checks whether the input option holds a json object
    instead of a path.
    """
    return source.lstrip().startswith("{")


@contextlib.contextmanager
def open_input(source):
    """Opens the input of a routine.

    Args:
        source (str): path to the file or "-" for stdin
    """
    if source is None or source == STANDARD_STREAM:
        yield sys.stdin
        return

    with pathlib.Path(source).open("r", encoding="utf-8") as stream:
        yield stream


@contextlib.contextmanager
def open_output(target):
    """Opens the output of a routine.

    Args:
        target (str): path to the file or "-" for stdout
    """
    if target is None or target == STANDARD_STREAM:
        yield sys.stdout
        sys.stdout.flush()
        return

    with pathlib.Path(target).open("w", encoding="utf-8") as stream:
        yield stream


def read_document(source, parser):
    """Reads and parses the input of a routine.

    Args:
        source (str): inline json, a path or "-" for stdin
        parser (parser.Parser): the format of the document

    Returns:
        dict: the parsed document

    Raises:
        OSError: if the file can't be read
        ParseError: if the document is malformed or isn't valid utf-8
    """
    if source is not None and is_inline(source):
        return parser.parse(source)

    with open_input(source) as stream:
        try:
            text = stream.read()
        except UnicodeDecodeError as error:
            raise errors.ParseError(
                f"invalid {error.encoding} byte at offset {error.start}"
            ) from error
    return parser.parse(text)
