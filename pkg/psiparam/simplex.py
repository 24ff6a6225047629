"""Probability distributions over a finite set of outcomes,
events as sets of outcomes and the projections representing them.

Outcomes are numbered 1..N.
"""

import logging
import math

import attr
import numpy as np

import psiparam.conversion as conversion
import psiparam.errors as errors


logger = logging.getLogger(__name__)

SUM_TOLERANCE = 1e-12
RENORMALIZE_WINDOW = 1e-9
PROJECTION_TOLERANCE = 1e-12


def _array_eq():
    return attr.cmp_using(eq=np.array_equal)


def _probabilities(values):
    """Validates a probability vector.

    The vector is rescaled if its sum deviates from 1
    by no more than RENORMALIZE_WINDOW, otherwise it's rejected.
    Negative entries within SUM_TOLERANCE of zero are clipped.
    """
    probabilities = np.array(conversion.to_readonly_array(values))
    if probabilities.ndim != 1:
        raise errors.DimensionError(
            f"expected a vector of probabilities, "
            f"got shape {probabilities.shape}"
        )
    if probabilities.size < 1:
        raise errors.DimensionError("a distribution needs at least 1 outcome")

    negative = np.flatnonzero(probabilities < 0)
    if negative.size:
        if np.min(probabilities) < -SUM_TOLERANCE:
            raise errors.ValidationError(
                f"probability of outcome {negative[0] + 1} is negative: "
                f"{probabilities[negative[0]]}"
            )
        probabilities[negative] = 0.0

    total = math.fsum(probabilities)
    deviation = abs(total - 1.0)
    if deviation > RENORMALIZE_WINDOW:
        raise errors.NormalizationError(
            f"probabilities sum to {total!r} instead of 1"
        )
    if deviation > SUM_TOLERANCE:
        logger.debug("renormalizing probabilities which sum to %r", total)
    if deviation:
        probabilities = probabilities / total

    probabilities.setflags(write=False)
    return probabilities


@attr.s(frozen=True)
class ProbDist:
    """A point of the probability simplex.

    Attributes:
        p (numpy.ndarray): read-only probabilities of the outcomes 1..N
    """

    p = attr.ib(converter=_probabilities, eq=_array_eq())

    @classmethod
    def uniform(cls, dim):
        return cls(np.full(dim, 1.0 / dim))

    @classmethod
    def delta(cls, dim, index):
        """The deterministic distribution concentrated on one outcome."""
        _check_range((index,), dim)
        probabilities = np.zeros(dim)
        probabilities[index - 1] = 1.0
        return cls(probabilities)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict) or "p" not in data:
            raise errors.ParseError("missing probabilities", field="p")
        return cls(data["p"])

    @property
    def dim(self):
        return self.p.size

    def __len__(self):
        return self.p.size

    def to_dict(self):
        return {"p": self.p.tolist()}


def _check_range(indices, dim):
    for index in indices:
        if not 1 <= index <= dim:
            raise errors.OutOfRangeError(
                f"outcome {index} is out of the range 1..{dim}"
            )


def _positive_indices(indices):
    for index in indices:
        if index < 1:
            raise errors.OutOfRangeError(
                f"outcomes are numbered from 1, got {index}"
            )


@attr.s(frozen=True)
class Event:
    """A set of outcomes.

    Attributes:
        indices (tuple of int): sorted 1-based outcome numbers,
            empty for the impossible event
    """

    indices = attr.ib(converter=conversion.to_index_tuple)

    @indices.validator
    def _check_indices(self, attribute, value):
        _positive_indices(value)

    @classmethod
    def empty(cls):
        return cls(())

    @classmethod
    def full(cls, dim):
        return cls(range(1, dim + 1))

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict) or "indices" not in data:
            raise errors.ParseError("missing outcome indices", field="indices")
        return cls(data["indices"])

    def __len__(self):
        return len(self.indices)

    def __contains__(self, index):
        return index in self.indices

    def is_empty(self):
        return not self.indices

    def check_range(self, dim):
        """Raises OutOfRangeError if an outcome exceeds dim."""
        _check_range(self.indices, dim)

    def union(self, other):
        return Event(set(self.indices) | set(other.indices))

    def intersection(self, other):
        return Event(set(self.indices) & set(other.indices))

    def complement(self, dim):
        self.check_range(dim)
        return Event(set(range(1, dim + 1)) - set(self.indices))

    def is_disjoint(self, other):
        return not set(self.indices) & set(other.indices)

    def to_dict(self):
        return {"indices": list(self.indices)}


def _projection_matrix(values):
    matrix = conversion.to_readonly_array(values)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise errors.DimensionError(
            f"a projection needs a square matrix, got shape {matrix.shape}"
        )
    return matrix


@attr.s(frozen=True)
class Projection:
    """A real self-adjoint projection operator.

    Attributes:
        matrix (numpy.ndarray): read-only symmetric idempotent N x N matrix
    """

    matrix = attr.ib(converter=_projection_matrix, eq=_array_eq())

    @matrix.validator
    def _check_projection(self, attribute, value):
        if np.max(np.abs(value - value.T), initial=0) > PROJECTION_TOLERANCE:
            raise errors.ValidationError("a projection must be symmetric")
        if (
            np.max(np.abs(value @ value - value), initial=0)
            > PROJECTION_TOLERANCE
        ):
            raise errors.ValidationError("a projection must be idempotent")

    @classmethod
    def of_vector(cls, vector):
        """The rank-1 projection v v^T onto a real unit vector."""
        vector = np.asarray(vector, dtype=float)
        return cls(np.outer(vector, vector))

    @property
    def dim(self):
        return self.matrix.shape[0]

    def commutes_with(self, other, tolerance=PROJECTION_TOLERANCE):
        commutator = self.matrix @ other.matrix - other.matrix @ self.matrix
        return bool(np.max(np.abs(commutator), initial=0) <= tolerance)

    def __matmul__(self, other):
        """Product of commuting projections (the intersection of events)."""
        return Projection(self.matrix @ other.matrix)

    def __add__(self, other):
        """Sum of orthogonal projections (the union of disjoint events)."""
        return Projection(self.matrix + other.matrix)


def event_projection(event, dim):
    """Represents an event as a diagonal projection.

    Args:
        event (Event): the event
        dim (int): the number of outcomes

    Returns:
        Projection: diagonal 0/1 matrix with ones at the event's outcomes

    Raises:
        OutOfRangeError: if an outcome of the event exceeds dim
    """
    event.check_range(dim)
    indicator = np.zeros(dim)
    indicator[[index - 1 for index in event.indices]] = 1.0
    return Projection(np.diag(indicator))


def prob_of_event(dist, event):
    """Sums the probabilities of the outcomes of an event."""
    event.check_range(dist.dim)
    return math.fsum(dist.p[index - 1] for index in event.indices)


def random_dist(rng, dim):
    """Draws a distribution uniformly from the simplex.

    Args:
        rng (numpy.random.Generator): source of randomness
        dim (int): number of outcomes

    Returns:
        ProbDist
    """
    return ProbDist(rng.dirichlet(np.ones(dim)))
