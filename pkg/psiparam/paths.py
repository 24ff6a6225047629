"""Wave-function parametrization of the complete paths of a random walk.

A walk of T steps moves up with probability q_k at step k
and down otherwise. A complete path is the string of its step outcomes
(down = 0, up = 1), paths are ordered lexicographically
with the first step most significant.
"""

import functools
import logging

import attr
import numpy as np

import psiparam.conversion as conversion
import psiparam.errors as errors
import psiparam.simplex as simplex
import psiparam.sphere as sphere


logger = logging.getLogger(__name__)

MAX_STEPS = 20
ORDERING = "lex-down0"
MARGINAL_TOLERANCE = 1e-12


@attr.s(frozen=True)
class WalkSpec:
    """The step law of a finite random walk.

    Attributes:
        steps (int): the number of steps T, 1..MAX_STEPS
        step_prob (tuple of float): the probability of moving up,
            either one value shared by every step or one value per step
    """

    steps = attr.ib(converter=conversion.to_index)
    step_prob = attr.ib(converter=conversion.to_float_tuple)

    @steps.validator
    def _check_steps(self, attribute, value):
        if not 1 <= value <= MAX_STEPS:
            raise errors.OutOfRangeError(
                f"a walk has 1..{MAX_STEPS} steps, got {value}"
            )

    @step_prob.validator
    def _check_step_prob(self, attribute, value):
        if len(value) not in (1, self.steps):
            raise errors.DimensionError(
                f"expected 1 or {self.steps} step probabilities, "
                f"got {len(value)}"
            )
        for prob in value:
            if not 0 <= prob <= 1:
                raise errors.OutOfRangeError(
                    f"step probabilities must lie in [0, 1], got {prob!r}"
                )

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise errors.ParseError("expected a walk object")
        for field in ("steps", "q"):
            if field not in data:
                raise errors.ParseError(f"missing {field}", field=field)
        return cls(data["steps"], data["q"])

    @property
    def step_probs(self):
        """tuple of float: the probability of moving up at every step"""
        if len(self.step_prob) == 1:
            return self.step_prob * self.steps
        return self.step_prob

    @property
    def path_count(self):
        return 2 ** self.steps

    def to_dict(self):
        return {"steps": self.steps, "q": list(self.step_probs)}


def path_probabilities(spec):
    """The probabilities of every path,
    the Kronecker product of the step laws (1 - q_k, q_k).
    """
    return functools.reduce(
        np.kron, [np.array([1.0 - q, q]) for q in spec.step_probs]
    )


@attr.s(frozen=True)
class PathDistribution:
    """The distribution of the complete paths of a walk.

    Attributes:
        dist (simplex.ProbDist): probabilities of the 2^T paths
        steps (int): T
        ordering (str): the path order, always ORDERING
    """

    dist = attr.ib(validator=attr.validators.instance_of(simplex.ProbDist))
    steps = attr.ib(converter=int)
    ordering = attr.ib(default=ORDERING)

    @dist.validator
    def _check_path_count(self, attribute, value):
        if value.dim != 2 ** self.steps:
            raise errors.DimensionError(
                f"a walk of {self.steps} steps has {2 ** self.steps} paths, "
                f"got {value.dim} probabilities"
            )

    @ordering.validator
    def _check_ordering(self, attribute, value):
        if value != ORDERING:
            raise errors.ValidationError(f"unsupported path order {value!r}")

    def path_labels(self):
        """The step outcomes of every path: "00", "01", "10", ..."""
        return [
            format(index, f"0{self.steps}b") for index in range(self.dist.dim)
        ]

    def to_dict(self):
        return {"p": self.dist.p.tolist(), "ordering": self.ordering}


def enumerate_paths(spec):
    """Enumerates the complete paths of a walk.

    Returns:
        PathDistribution: 2^T probabilities in lexicographic order
    """
    logger.debug("enumerating %d paths", spec.path_count)
    return PathDistribution(
        simplex.ProbDist(path_probabilities(spec)), spec.steps
    )


def path_wavefunction(spec):
    """The wave-function parametrizing the path distribution."""
    return sphere.sqrt_encode(enumerate_paths(spec).dist)


@attr.s(frozen=True)
class PositionMarginal:
    """The distribution of the walker's position after t steps.

    Attributes:
        positions (tuple of int): -t, -t + 2, ..., t
        dist (simplex.ProbDist): the probability of every position
    """

    positions = attr.ib(converter=tuple)
    dist = attr.ib(validator=attr.validators.instance_of(simplex.ProbDist))

    def to_dict(self):
        return {"positions": list(self.positions), "p": self.dist.p.tolist()}


def _check_time(spec, time):
    time = conversion.to_index(time)
    if not 0 <= time <= spec.steps:
        raise errors.OutOfRangeError(
            f"step {time} is out of the range 0..{spec.steps}"
        )
    return time


def _up_counts(steps, time):
    """The number of up steps among the first time steps of every path."""
    indices = np.arange(2 ** steps)
    counts = np.zeros(2 ** steps, dtype=np.int64)
    for shift in range(steps - time, steps):
        counts += (indices >> shift) & 1
    return counts


def born_marginal(spec, time):
    """The position distribution at a step,
    summing the Born probabilities of the paths by position.

    Returns:
        numpy.ndarray: probabilities of 0..time up steps
    """
    time = _check_time(spec, time)
    probabilities = sphere.born_decode(path_wavefunction(spec)).p
    return np.bincount(
        _up_counts(spec.steps, time), weights=probabilities, minlength=time + 1
    )


def markov_marginal(spec, time):
    """The position distribution at a step,
    by forward recursion of the walk's Markov chain.

    Returns:
        numpy.ndarray: probabilities of 0..time up steps
    """
    time = _check_time(spec, time)
    counts = np.array([1.0])
    for q in spec.step_probs[:time]:
        counts = np.convolve(counts, [1.0 - q, q])
    return counts


def marginal_at(spec, time):
    """The position distribution after a number of steps.

    It's computed from the path wave-function and cross-checked
    against the forward recursion of the walk.

    Args:
        spec (WalkSpec): the walk
        time (int): the number of steps taken, 0..T

    Returns:
        PositionMarginal

    Raises:
        OutOfRangeError: if time exceeds the walk
        ConsistencyError: if both routes disagree
    """
    time = _check_time(spec, time)
    born = born_marginal(spec, time)
    markov = markov_marginal(spec, time)
    deviation = float(np.max(np.abs(born - markov)))
    if deviation > MARGINAL_TOLERANCE:
        raise errors.ConsistencyError(
            f"path and Markov marginals at step {time} "
            f"differ by {deviation!r}"
        )
    positions = range(-time, time + 1, 2)
    return PositionMarginal(positions, simplex.ProbDist(born))
