"""Runs the routines of the command line interface.

Every routine reads at most one document, computes a result
and writes it as a single document.
Failures are reported as an error record on stderr
and mapped to an exit code.
"""

import functools
import logging
import os
import sys

import psiparam.action as action
import psiparam.config as config
import psiparam.errors as errors
import psiparam.files as files
import psiparam.parser as parser


logger = logging.getLogger(__name__)

EXIT_SUCCESS = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_IO = 4

LOG_FORMAT = "%(levelname)s:%(name)s:%(message)s"


def exit_code(exception):
    """Maps an exception to the exit code of the process."""
    if isinstance(exception, errors.UsageError):
        return EXIT_USAGE
    if isinstance(exception, OSError):
        return EXIT_IO
    return EXIT_VALIDATION


def error_processor_factory(parser):
    def wrapper(exception):
        return process_error(parser, exception)

    return wrapper


def process_error(parser, exception):
    print(
        parser.unparse(
            {
                "type": "error",
                "name": type(exception).__name__,
                "message": str(exception),
            }
        ),
        file=sys.stderr,
    )


class Tools:
    """Data class which holds the settings the routines need."""

    def __init__(self, settings):
        self.settings = settings


def silence_stderr():
    """Redirects stderr to /dev/null."""
    try:
        outfile = os.open(os.devnull, os.O_WRONLY)
        os.close(sys.stderr.fileno())
        os.dup2(outfile, sys.stderr.fileno())
    finally:
        os.close(outfile)


def setup_logging(verbose):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )


def get_command(options):
    """Returns the command selected by the options."""
    for command in action.Command:
        if options.get(command.value):
            return command
    raise errors.UsageError("no routine selected")


def run(command, options, tools):
    """Builds the action of a command and executes it.

    Returns:
        dict: the document to emit
    """
    input_parser = parser.JsonParser()
    read_document = functools.partial(
        files.read_document, options.get("--input"), input_parser
    )
    routine = command.action_class.from_options(options, read_document)
    logger.debug("running %r", routine)
    return routine.apply(tools)


def main(options):
    if options.get("--silent"):
        silence_stderr()
    setup_logging(options.get("--verbose"))

    command = get_command(options)
    output_parser = command.action_class.get_output_parser().parser_class()
    error_handler = error_processor_factory(output_parser)

    try:
        settings = config.Settings.from_environment()
        tools = Tools(settings)
        document = run(command, options, tools)
        text = output_parser.unparse(document)
        with files.open_output(options.get("--output")) as stream:
            stream.write(text + "\n")
    except (errors.PsiParamError, OSError) as error:
        error_handler(error)
        return exit_code(error)

    return EXIT_SUCCESS
