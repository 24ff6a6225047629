"""Wave-functions as points of the unit hypersphere
and their relation to probability distributions.

A real unit vector is written in hyperspherical (Euler) angles
through the recursion v_n = c_n l_n + s_n v_{n+1}
with c_n = cos(theta_n), s_n = sin(theta_n) and l_n the n-th basis vector.
Squaring the amplitudes (the Born rule) maps the hypersphere
onto the probability simplex.
The map is many-to-one, encode picks the branch with theta_n in [0, pi/2],
i.e. non-negative amplitudes.
"""

import logging
import math

import attr
import numpy as np

import psiparam.algebra as _algebra
import psiparam.conversion as conversion
import psiparam.errors as errors
import psiparam.simplex as simplex


logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-12
DECODE_TOLERANCE = 1e-9


def _array_eq():
    return attr.cmp_using(eq=np.array_equal)


def _angles(values):
    theta = conversion.to_readonly_array(values)
    if theta.ndim != 1:
        raise errors.DimensionError(
            f"expected a vector of angles, got shape {theta.shape}"
        )
    return theta


@attr.s(frozen=True)
class EulerAngles:
    """Hyperspherical coordinates of a real unit vector with N components.

    Attributes:
        theta (numpy.ndarray): read-only vector of the N - 1 angles (radians)
    """

    theta = attr.ib(converter=_angles, eq=_array_eq())

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict) or "theta" not in data:
            raise errors.ParseError("missing angles", field="theta")
        return cls(data["theta"])

    @property
    def dim(self):
        """int: number of components of the parametrized vector"""
        return self.theta.size + 1

    def is_canonical(self):
        return bool(np.all((0 <= self.theta) & (self.theta <= math.pi / 2)))

    def canonical(self):
        """Returns the canonical angles decoding to the same distribution."""
        return encode(born_decode(angles_to_wavefunction(self)))

    def to_dict(self):
        return {"theta": self.theta.tolist()}


def _amplitudes(values):
    """Validates amplitude coordinates, shape (N, block_dim).

    A 1-dimensional input is read as real amplitudes.
    Norms within DECODE_TOLERANCE of 1 are rescaled to 1.
    """
    amplitudes = np.array(conversion.to_readonly_array(values))
    if amplitudes.ndim == 1:
        amplitudes = amplitudes[:, np.newaxis]
    if amplitudes.ndim != 2 or amplitudes.shape[0] < 1:
        raise errors.DimensionError(
            f"expected a non-empty vector of amplitudes, "
            f"got shape {np.shape(values)}"
        )
    norm = math.sqrt(math.fsum(np.square(amplitudes).ravel()))
    if abs(norm - 1.0) > DECODE_TOLERANCE:
        raise errors.NormalizationError(
            f"a wave-function must have norm 1, got {norm!r}"
        )
    if norm != 1.0:
        amplitudes = amplitudes / norm
    amplitudes.setflags(write=False)
    return amplitudes


@attr.s(frozen=True)
class WaveFunction:
    """A unit vector whose amplitudes are scalars of an algebra.

    Attributes:
        amplitudes (numpy.ndarray): read-only coordinates of the amplitudes,
            shape (N, block_dim)
        algebra (algebra.ScalarAlgebra): the scalars of the amplitudes
    """

    amplitudes = attr.ib(converter=_amplitudes, eq=_array_eq())
    algebra = attr.ib(
        default=_algebra.ScalarAlgebra.REAL, converter=_algebra.ScalarAlgebra
    )

    @amplitudes.validator
    def _check_block_dim(self, attribute, value):
        if value.shape[1] != self.algebra.block_dim:
            raise errors.DimensionError(
                f"{self.algebra.value} amplitudes need "
                f"{self.algebra.block_dim} coordinates, "
                f"got {value.shape[1]}"
            )

    @classmethod
    def real(cls, values):
        return cls(values)

    @classmethod
    def from_values(cls, values, algebra=None):
        """Creates a wave-function from native values:
        floats, python complex numbers or coordinate lists.
        The algebra is inferred if it isn't passed.
        """
        if algebra is None:
            algebra = _algebra.ScalarAlgebra.infer(values, rank=1)
        algebra = _algebra.ScalarAlgebra(algebra)
        return cls(algebra.coordinates(values, rank=1), algebra)

    @classmethod
    def basis(cls, dim, index, algebra=_algebra.ScalarAlgebra.REAL):
        """The basis vector l_index (1-based)."""
        algebra = _algebra.ScalarAlgebra(algebra)
        if not 1 <= index <= dim:
            raise errors.OutOfRangeError(
                f"basis vector {index} is out of the range 1..{dim}"
            )
        amplitudes = np.zeros((dim, algebra.block_dim))
        amplitudes[index - 1, 0] = 1.0
        return cls(amplitudes, algebra)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict) or "amplitudes" not in data:
            raise errors.ParseError("missing amplitudes", field="amplitudes")
        try:
            algebra = _algebra.ScalarAlgebra(data.get("algebra", "real"))
        except ValueError as error:
            raise errors.ParseError(
                f"unknown algebra {data.get('algebra')!r}", field="algebra"
            ) from error
        return cls.from_values(data["amplitudes"], algebra)

    @property
    def dim(self):
        return self.amplitudes.shape[0]

    def __len__(self):
        return self.amplitudes.shape[0]

    @property
    def values(self):
        """numpy.ndarray: the amplitudes as floats, complex numbers
        or quaternion coordinate rows
        """
        return self.algebra.values(self.amplitudes)

    def norm(self):
        return math.sqrt(math.fsum(np.square(self.amplitudes).ravel()))

    def inner(self, other):
        """The scalar self^dagger other,
        in the coordinates of the wider of both algebras.
        """
        if len(self) != len(other):
            raise errors.DimensionError(
                f"can't pair wave-functions with {len(self)} "
                f"and {len(other)} states"
            )
        algebra = _algebra.ScalarAlgebra.widest(self.algebra, other.algebra)
        left = self.algebra.promote(self.amplitudes, algebra)
        right = other.algebra.promote(other.amplitudes, algebra)
        return algebra.product(algebra.conjugate(left), right).sum(axis=0)

    def to_dict(self):
        return {
            "amplitudes": self.algebra.to_json(self.amplitudes),
            "algebra": self.algebra.value,
        }


def encode(dist):
    """Computes the canonical Euler angles of a distribution.

    The angle theta_n verifies c_n^2 = P(n | n or above).
    It is computed as atan2 of the partial norms
    sqrt(P(n + 1 or above)) and sqrt(p_n),
    which stays accurate for long tails of tiny probabilities.
    If the tail of n is empty theta_n is 0.

    Args:
        dist (simplex.ProbDist): the distribution

    Returns:
        EulerAngles: angles in [0, pi/2]
    """
    amplitudes = np.sqrt(dist.p)
    tails = np.sqrt(np.cumsum(dist.p[::-1])[::-1])
    if np.any((amplitudes[:-1] == 0) & (tails[1:] == 0)):
        logger.debug("empty tail, setting the remaining angles to 0")
    return EulerAngles(np.arctan2(tails[1:], amplitudes[:-1]))


def angles_to_wavefunction(angles):
    """Evaluates the recursion v_n = c_n l_n + s_n v_{n+1}.

    Returns:
        WaveFunction: real amplitudes c_n * prod_{k<n} s_k,
            the last one prod_{k<N} s_k
    """
    sines = np.concatenate(([1.0], np.cumprod(np.sin(angles.theta))))
    cosines = np.concatenate((np.cos(angles.theta), [1.0]))
    return WaveFunction(cosines * sines)


def wavefunction_to_angles(psi):
    """Inverts angles_to_wavefunction for a real wave-function.

    The angles are canonical for non-negative amplitudes.
    Otherwise theta_n lies in [0, pi] and the last angle
    also carries the sign of the last amplitude.

    Raises:
        ValidationError: if psi isn't real
    """
    _require_real(psi)
    amplitudes = psi.values
    tails = np.sqrt(np.cumsum(np.square(amplitudes[::-1]))[::-1])
    numerators = tails[1:].copy()
    if numerators.size:
        numerators[-1] = amplitudes[-1]
    return EulerAngles(np.arctan2(numerators, amplitudes[:-1]))


def born_decode(psi):
    """Applies the Born rule P(n) = |psi^dagger l_n|^2.

    Raises:
        NormalizationError: if the norm of psi deviates from 1
    """
    norm = psi.norm()
    if abs(norm - 1.0) > DECODE_TOLERANCE:
        raise errors.NormalizationError(
            f"can't decode a wave-function with norm {norm!r}"
        )
    return simplex.ProbDist(psi.algebra.modulus_squared(psi.amplitudes))


def sqrt_encode(dist):
    """The wave-function with amplitudes sqrt(p_n)."""
    return WaveFunction(np.sqrt(dist.p))


@attr.s(frozen=True)
class ConditionalChain:
    """P(n) written as a product of conditional probabilities.

    Attributes:
        factors (tuple of float): P(k + 1 or above | k or above) for k < n,
            followed by P(n | n or above)
        stops (tuple of float): P(k | k or above) for k < n,
            the complements of the leading factors
    """

    factors = attr.ib(converter=tuple)
    stops = attr.ib(converter=tuple)

    def product(self):
        return math.prod(self.factors)


def conditional_chain(dist, index):
    """Decomposes the probability of an outcome into conditional factors.

    Args:
        dist (simplex.ProbDist): the distribution
        index (int): the outcome n (1-based)

    Returns:
        ConditionalChain: factors whose product is p_n

    Raises:
        OutOfRangeError: if index isn't an outcome
        DegenerateConditionalError: if P(n or above) is 0
    """
    if not 1 <= index <= dist.dim:
        raise errors.OutOfRangeError(
            f"outcome {index} is out of the range 1..{dist.dim}"
        )
    tails = np.cumsum(dist.p[::-1])[::-1]
    if tails[index - 1] <= 0:
        raise errors.DegenerateConditionalError(
            f"P({index} or above) is 0, "
            f"so P({index} | {index} or above) is undefined"
        )
    moves = [tails[k] / tails[k - 1] for k in range(1, index)]
    stops = [dist.p[k - 1] / tails[k - 1] for k in range(1, index)]
    final = dist.p[index - 1] / tails[index - 1]
    return ConditionalChain(
        factors=[float(f) for f in moves] + [float(final)],
        stops=[float(s) for s in stops],
    )


def _require_real(psi):
    if psi.algebra is not _algebra.ScalarAlgebra.REAL:
        raise errors.ValidationError(
            f"expected a real wave-function, got a {psi.algebra.value} one; "
            f"embed it with algebra.embed_real first"
        )
