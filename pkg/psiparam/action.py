import abc
import enum
import logging
import math

import attr
import numpy as np

import psiparam.conversion as conversion
import psiparam.density as density
import psiparam.errors as errors
import psiparam.functional as functional
import psiparam.parser as parser
import psiparam.paths as paths
import psiparam.simplex as simplex
import psiparam.sphere as sphere
import psiparam.transform as transform


logger = logging.getLogger(__name__)


def _option(options, name, converter):
    """Converts the value of a command line option.

    Raises:
        UsageError: if the value can't be converted
    """
    value = options.get(name)
    if value is None:
        return None
    try:
        return converter(value)
    except errors.ValidationError as error:
        raise errors.UsageError(f"{name}: {error}") from error


def _probabilities(text):
    return tuple(
        conversion.to_float(item.strip()) for item in text.split(",")
    )


@attr.s(kw_only=True)
class Action(metaclass=abc.ABCMeta):
    """Describes the structure used to define actions classes.

    Defines a general interface used to implement the building of routines
    from the command line options and their execution.
    """

    action = attr.ib(
        type=str,
        default=attr.Factory(
            lambda self: self.get_action_name(), takes_self=True
        ),
    )

    @staticmethod
    @abc.abstractmethod
    def get_action_name():
        """Returns the constant name which is associated to this action."""
        raise NotImplementedError()

    @staticmethod
    def get_output_parser():
        """Returns the format of the documents this action emits."""
        return parser.ParserOption.JSON

    @classmethod
    @abc.abstractmethod
    def from_options(cls, options, read_document):
        """Creates the action.

        Args:
            options (dict): the parsed command line options
            read_document (function): reads the input document
        """
        raise NotImplementedError()

    @abc.abstractmethod
    def apply(self, tools):
        """Executes the action.

        Returns:
            dict: the document to emit
        """
        raise NotImplementedError()


@attr.s(kw_only=True)
class EncodeAction(Action):
    """Writes a distribution as Euler angles and as a wave-function."""

    dist = attr.ib(validator=attr.validators.instance_of(simplex.ProbDist))

    @staticmethod
    def get_action_name():
        return "encode"

    @classmethod
    def from_options(cls, options, read_document):
        return cls(dist=simplex.ProbDist.from_dict(read_document()))

    def apply(self, tools):
        angles = sphere.encode(self.dist)
        decoded = sphere.born_decode(sphere.angles_to_wavefunction(angles))
        deviation = float(np.max(np.abs(decoded.p - self.dist.p)))
        logger.debug("encode round trip deviation %r", deviation)
        if deviation > tools.settings.display_tolerance:
            raise errors.ConsistencyError(
                f"the angles decode to a distribution "
                f"which deviates by {deviation!r}"
            )
        return {
            "angles": angles.to_dict(),
            "wavefunction": sphere.sqrt_encode(self.dist).to_dict(),
        }


def _wavefunction(document):
    if "theta" in document:
        return sphere.angles_to_wavefunction(
            sphere.EulerAngles.from_dict(document)
        )
    if "amplitudes" in document:
        return sphere.WaveFunction.from_dict(document)
    raise errors.ParseError(
        "expected a wave-function or angles", field="amplitudes"
    )


@attr.s(kw_only=True)
class DecodeAction(Action):
    """Applies the Born rule to a wave-function."""

    psi = attr.ib(validator=attr.validators.instance_of(sphere.WaveFunction))

    @staticmethod
    def get_action_name():
        return "decode"

    @classmethod
    def from_options(cls, options, read_document):
        return cls(psi=_wavefunction(read_document()))

    def apply(self, tools):
        return sphere.born_decode(self.psi).to_dict()


@attr.s(kw_only=True)
class ClockAction(Action):
    """Samples the probability clock (cos t, sin t)."""

    HEADER = ("t", "p1", "p2", "psi1", "psi2")

    t_start = attr.ib(converter=float)
    t_end = attr.ib(converter=float)
    samples = attr.ib(converter=int)

    def __attrs_post_init__(self):
        if self.samples < 2:
            raise errors.UsageError(
                f"the clock needs at least 2 samples, got {self.samples}"
            )
        if not self.t_end > self.t_start:
            raise errors.UsageError(
                f"--t-end ({self.t_end!r}) must exceed "
                f"--t-start ({self.t_start!r})"
            )

    @staticmethod
    def get_action_name():
        return "clock"

    @staticmethod
    def get_output_parser():
        return parser.ParserOption.CSV

    @classmethod
    def from_options(cls, options, read_document):
        return cls(
            t_start=_option(options, "--t-start", conversion.to_float),
            t_end=_option(options, "--t-end", conversion.to_float),
            samples=_option(options, "--samples", conversion.to_index),
        )

    def apply(self, tools):
        start = sphere.WaveFunction.basis(2, 1)
        rows = []
        for time in np.linspace(self.t_start, self.t_end, self.samples):
            psi = transform.apply_to_wavefunction(
                transform.clock_rotation(time), start
            )
            dist = sphere.born_decode(psi)
            expected = (math.cos(time) ** 2, math.sin(time) ** 2)
            deviation = float(np.max(np.abs(dist.p - expected)))
            if deviation > tools.settings.display_tolerance:
                raise errors.ConsistencyError(
                    f"the clock deviates by {deviation!r} at t={time!r}"
                )
            rows.append([time, *dist.p, *psi.values])
        return {"header": list(self.HEADER), "rows": rows}


@attr.s(kw_only=True)
class CollapseAction(Action):
    """Collapses a pure or mixed state."""

    rho = attr.ib(validator=attr.validators.instance_of(density.DensityMatrix))

    @staticmethod
    def get_action_name():
        return "collapse"

    @classmethod
    def from_options(cls, options, read_document):
        document = read_document()
        if "matrix" in document:
            return cls(rho=density.DensityMatrix.from_dict(document))
        return cls(rho=density.pure_density(_wavefunction(document)))

    def apply(self, tools):
        collapsed = density.collapse(self.rho)
        return {
            "matrix": collapsed.algebra.to_json(collapsed.matrix),
            "p": collapsed.diagonal().p.tolist(),
        }


@attr.s(kw_only=True)
class CheckDeterminismAction(Action):
    """Classifies a transformation as deterministic or not."""

    unitary = attr.ib(
        validator=attr.validators.instance_of(transform.OrthogonalTransform)
    )

    @staticmethod
    def get_action_name():
        return "check-det"

    @classmethod
    def from_options(cls, options, read_document):
        return cls(
            unitary=transform.OrthogonalTransform.from_dict(read_document())
        )

    def apply(self, tools):
        return transform.is_deterministic(self.unitary).to_dict()


@attr.s(kw_only=True)
class GleasonAction(Action):
    """Searches the pure state closest to two expectations."""

    target_a = attr.ib(converter=float)
    target_b = attr.ib(converter=float)
    grid = attr.ib(converter=int)

    @staticmethod
    def get_action_name():
        return "gleason"

    @classmethod
    def from_options(cls, options, read_document):
        return cls(
            target_a=_option(options, "--target-a", conversion.to_float),
            target_b=_option(options, "--target-b", conversion.to_float),
            grid=_option(options, "--grid", conversion.to_index),
        )

    def apply(self, tools):
        return functional.gleason_pure_search(
            self.target_a, self.target_b, self.grid
        ).to_dict()


@attr.s(kw_only=True)
class WalkAction(Action):
    """Encodes the complete paths of a random walk.
    If a step is passed the position distribution at that step
    is emitted instead.
    """

    spec = attr.ib(validator=attr.validators.instance_of(paths.WalkSpec))
    at = attr.ib(default=None)

    @staticmethod
    def get_action_name():
        return "walk"

    @classmethod
    def from_options(cls, options, read_document):
        steps = _option(options, "--steps", conversion.to_index)
        if steps is None:
            spec = paths.WalkSpec.from_dict(read_document())
        else:
            step_prob = _option(options, "--q", _probabilities)
            if step_prob is None:
                raise errors.UsageError("--steps needs --q")
            spec = paths.WalkSpec(steps, step_prob)
        return cls(spec=spec, at=_option(options, "--at", conversion.to_index))

    def apply(self, tools):
        if self.at is not None:
            return paths.marginal_at(self.spec, self.at).to_dict()
        return paths.enumerate_paths(self.spec).to_dict()


@enum.unique
class Command(str, enum.Enum):
    ENCODE = EncodeAction
    DECODE = DecodeAction
    CLOCK = ClockAction
    COLLAPSE = CollapseAction
    CHECK_DETERMINISM = CheckDeterminismAction
    GLEASON = GleasonAction
    WALK = WalkAction

    def __new__(cls, action_class):
        inst = str.__new__(cls)
        inst._value_ = action_class.get_action_name()
        inst.action_class = action_class
        return inst
