"""Transformations of ensembles.

Wave-functions are transformed by rotations of the hypersphere
(orthogonal or unitary matrices), distributions by stochastic matrices.
A rotation is deterministic if it maps deterministic ensembles
to deterministic ensembles, which happens if and only if
P_A and U P_A U^dagger commute for every event A.
"""

import cmath
import itertools
import math

import attr
import numpy as np
import scipy.linalg

import psiparam.algebra as _algebra
import psiparam.conversion as conversion
import psiparam.errors as errors
import psiparam.simplex as simplex
import psiparam.sphere as sphere


UNITARY_TOLERANCE = 1e-10
COMMUTATOR_TOLERANCE = 1e-10
STOCHASTIC_TOLERANCE = 1e-12
GAUGE_TOLERANCE = 1e-10
SINGULAR_TOLERANCE = 1e-12

# generator of the probability clock, exp(CLOCK_GENERATOR t) (1, 0) = (cos t, sin t)
CLOCK_GENERATOR = np.array([[0.0, -1.0], [1.0, 0.0]])


def _array_eq():
    return attr.cmp_using(eq=np.array_equal)


def _square_matrix(values):
    matrix = np.array(conversion.to_readonly_array(values))
    if matrix.ndim == 2:
        matrix = matrix[..., np.newaxis]
    if (
        matrix.ndim != 3
        or matrix.shape[0] != matrix.shape[1]
        or matrix.shape[0] < 1
    ):
        raise errors.DimensionError(
            f"expected a non-empty square matrix, got shape {np.shape(values)}"
        )
    matrix.setflags(write=False)
    return matrix


@attr.s(frozen=True)
class OrthogonalTransform:
    """An orthogonal (real) or unitary (complex, quaternionic) matrix.

    Attributes:
        matrix (numpy.ndarray): read-only coordinates, shape (N, N, block_dim)
        algebra (algebra.ScalarAlgebra): the scalars of the entries
    """

    matrix = attr.ib(converter=_square_matrix, eq=_array_eq())
    algebra = attr.ib(
        default=_algebra.ScalarAlgebra.REAL, converter=_algebra.ScalarAlgebra
    )

    @matrix.validator
    def _check_unitary(self, attribute, value):
        algebra = self.algebra
        if value.shape[2] != algebra.block_dim:
            raise errors.DimensionError(
                f"{algebra.value} entries need {algebra.block_dim} "
                f"coordinates, got {value.shape[2]}"
            )
        gram = algebra.matmul(algebra.adjoint(value), value)
        deviation = np.max(np.abs(gram - algebra.identity(value.shape[0])))
        if deviation > UNITARY_TOLERANCE:
            raise errors.ValidationError(
                f"the matrix is not {self._kind()}: "
                f"U^dagger U deviates from the identity by {deviation!r}"
            )

    def _kind(self):
        if self.algebra is _algebra.ScalarAlgebra.REAL:
            return "orthogonal"
        return "unitary"

    @classmethod
    def from_values(cls, values, algebra=None):
        if algebra is None:
            algebra = _algebra.ScalarAlgebra.infer(values, rank=2)
        algebra = _algebra.ScalarAlgebra(algebra)
        return cls(algebra.coordinates(values, rank=2), algebra)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict) or "matrix" not in data:
            raise errors.ParseError("missing matrix", field="matrix")
        algebra = data.get("algebra")
        try:
            if algebra is not None:
                algebra = _algebra.ScalarAlgebra(algebra)
        except ValueError as error:
            raise errors.ParseError(
                f"unknown algebra {algebra!r}", field="algebra"
            ) from error
        return cls.from_values(data["matrix"], algebra)

    @classmethod
    def identity(cls, dim):
        return cls(np.eye(dim))

    @classmethod
    def permutation(cls, images):
        """The permutation matrix sending l_n to l_images[n - 1].

        Args:
            images (sequence of int): 1-based image of every outcome
        """
        images = [conversion.to_index(image) for image in images]
        dim = len(images)
        if sorted(images) != list(range(1, dim + 1)):
            raise errors.ValidationError(
                f"{images} is not a permutation of 1..{dim}"
            )
        matrix = np.zeros((dim, dim))
        matrix[np.array(images) - 1, np.arange(dim)] = 1.0
        return cls(matrix)

    @classmethod
    def hadamard(cls):
        return cls(np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2))

    @classmethod
    def fourier(cls, dim):
        """The unitary discrete Fourier transform on dim outcomes."""
        matrix = np.array(
            [
                [cmath.exp(-2j * math.pi * row * column / dim) for column in range(dim)]
                for row in range(dim)
            ]
        ) / math.sqrt(dim)
        return cls.from_values(matrix, _algebra.ScalarAlgebra.COMPLEX)

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def values(self):
        return self.algebra.values(self.matrix)

    def adjoint(self):
        return OrthogonalTransform(
            self.algebra.adjoint(self.matrix), self.algebra
        )

    def compose(self, other):
        """The transform self after other."""
        if self.dim != other.dim:
            raise errors.DimensionError(
                f"can't compose transforms on {self.dim} "
                f"and {other.dim} states"
            )
        algebra = _algebra.ScalarAlgebra.widest(self.algebra, other.algebra)
        return OrthogonalTransform(
            algebra.matmul(
                self.algebra.promote(self.matrix, algebra),
                other.algebra.promote(other.matrix, algebra),
            ),
            algebra,
        )

    def __matmul__(self, other):
        return self.compose(other)

    def conjugate_operator(self, operator, algebra=None):
        """Computes U M U^dagger.

        Args:
            operator (numpy.ndarray): coordinates of M, shape (N, N, d)
            algebra (algebra.ScalarAlgebra): the algebra of M,
                real if omitted

        Returns:
            numpy.ndarray: coordinates over the wider algebra
        """
        algebra = _algebra.ScalarAlgebra(algebra or "real")
        target = _algebra.ScalarAlgebra.widest(self.algebra, algebra)
        unitary = self.algebra.promote(self.matrix, target)
        operator = algebra.promote(operator, target)
        return target.matmul(
            target.matmul(unitary, operator), target.adjoint(unitary)
        )

    def to_dict(self):
        return {
            "matrix": self.algebra.to_json(self.matrix),
            "algebra": self.algebra.value,
        }


def apply_to_wavefunction(transform, psi):
    """Rotates a wave-function.

    Raises:
        DimensionError: if the dimensions don't match
    """
    if transform.dim != len(psi):
        raise errors.DimensionError(
            f"can't apply a transform on {transform.dim} states "
            f"to a wave-function with {len(psi)} states"
        )
    algebra = _algebra.ScalarAlgebra.widest(transform.algebra, psi.algebra)
    matrix = transform.algebra.promote(transform.matrix, algebra)
    amplitudes = psi.algebra.promote(psi.amplitudes, algebra)
    return sphere.WaveFunction(algebra.matvec(matrix, amplitudes), algebra)


def clock_rotation(angle):
    """The rotation exp(CLOCK_GENERATOR angle) of the probability clock.

    The angle is reduced to [-pi, pi] before exponentiating.
    """
    angle = math.remainder(conversion.to_float(angle), 2 * math.pi)
    return OrthogonalTransform(scipy.linalg.expm(CLOCK_GENERATOR * angle))


def _stochastic_matrix(values):
    matrix = conversion.to_readonly_array(values)
    if (
        matrix.ndim != 2
        or matrix.shape[0] != matrix.shape[1]
        or matrix.shape[0] < 1
    ):
        raise errors.DimensionError(
            f"expected a non-empty square matrix, got shape {matrix.shape}"
        )
    return matrix


@attr.s(frozen=True)
class StochasticMatrix:
    """A real matrix with non-negative entries whose columns sum to 1.

    Attributes:
        matrix (numpy.ndarray): read-only N x N matrix
    """

    matrix = attr.ib(converter=_stochastic_matrix, eq=_array_eq())

    @matrix.validator
    def _check_stochastic(self, attribute, value):
        if np.min(value) < 0:
            raise errors.ValidationError(
                "a stochastic matrix can't have negative entries"
            )
        sums = value.sum(axis=0)
        deviation = np.max(np.abs(sums - 1.0))
        if deviation > STOCHASTIC_TOLERANCE:
            raise errors.NormalizationError(
                f"the columns of a stochastic matrix must sum to 1, "
                f"deviation {deviation!r}"
            )

    @classmethod
    def onto(cls, source, index):
        """The stochastic matrix moving a distribution
        onto the deterministic distribution at index.

        For a source with full support the matrix is unique:
        every column is l_index.

        Raises:
            OutOfRangeError: if index isn't an outcome of source
        """
        if not 1 <= index <= source.dim:
            raise errors.OutOfRangeError(
                f"outcome {index} is out of the range 1..{source.dim}"
            )
        matrix = np.zeros((source.dim, source.dim))
        matrix[index - 1, :] = 1.0
        return cls(matrix)

    @property
    def dim(self):
        return self.matrix.shape[0]

    def apply(self, dist):
        if dist.dim != self.dim:
            raise errors.DimensionError(
                f"can't apply a {self.dim} x {self.dim} matrix "
                f"to a distribution over {dist.dim} outcomes"
            )
        return simplex.ProbDist(self.matrix @ dist.p)

    def determinant(self):
        return float(np.linalg.det(self.matrix))

    def is_singular(self, tolerance=SINGULAR_TOLERANCE):
        return abs(self.determinant()) < tolerance


def classical_map(first, second):
    """M(a, b) = [[cos^2 a, cos^2 b], [sin^2 a, sin^2 b]],
    the general stochastic map of a 2-state distribution.
    """
    return StochasticMatrix(
        [
            [math.cos(first) ** 2, math.cos(second) ** 2],
            [math.sin(first) ** 2, math.sin(second) ** 2],
        ]
    )


def transition_matrix(transform):
    """The probabilities |U_mn|^2 of moving from l_n to l_m.

    For a deterministic transform this is a permutation matrix.
    """
    return StochasticMatrix(transform.algebra.modulus_squared(transform.matrix))


@attr.s(frozen=True)
class DeterminismVerdict:
    """Result of is_deterministic.

    Attributes:
        deterministic (bool): True if every elementary projection commutes
            with its transformed projection
        witness (int or None): 1-based outcome of a failing projection
    """

    deterministic = attr.ib(converter=bool)
    witness = attr.ib(default=None)

    def __bool__(self):
        return self.deterministic

    def to_dict(self):
        return {"deterministic": self.deterministic, "witness": self.witness}


def _elementary_commutator(matrix, index):
    """[P_index, M] for the elementary projection P_index:
    P M keeps the row index of M, M P keeps its column index.
    """
    commutator = np.zeros_like(matrix)
    commutator[index, :] += matrix[index, :]
    commutator[:, index] -= matrix[:, index]
    return commutator


def is_deterministic(transform, tolerance=COMMUTATOR_TOLERANCE):
    """Checks whether P_A and U P_A U^dagger commute for all events A.

    Every event projection is a sum of elementary ones,
    so it's enough to check that U P_n U^dagger commutes
    with every elementary projection P_m, starting with P_n itself.
    U P_n U^dagger is the projection onto the n-th column of U.

    Returns:
        DeterminismVerdict: the witness is the first outcome n
            whose transformed projection fails to commute
    """
    algebra = transform.algebra
    dim = transform.dim
    for index in range(dim):
        column = transform.matrix[:, index]
        transformed = algebra.outer(column, column)
        for other in itertools.chain([index], range(dim)):
            commutator = _elementary_commutator(transformed, other)
            if np.max(np.abs(commutator)) >= tolerance:
                return DeterminismVerdict(False, index + 1)
    return DeterminismVerdict(True)


def gauge_equivalent(psi, phi, tolerance=GAUGE_TOLERANCE):
    """Checks whether two wave-functions parametrize the same ensemble,
    i.e. whether |psi^dagger l_n|^2 = |phi^dagger l_n|^2 for every n.

    Raises:
        DimensionError: if the dimensions don't match
    """
    if len(psi) != len(phi):
        raise errors.DimensionError(
            f"can't compare wave-functions with {len(psi)} "
            f"and {len(phi)} states"
        )
    first = sphere.born_decode(psi).p
    second = sphere.born_decode(phi).p
    if np.max(np.abs(first - second)) > tolerance:
        return False
    algebra = _algebra.ScalarAlgebra.widest(psi.algebra, phi.algebra)
    for index in range(1, len(psi) + 1):
        basis = sphere.WaveFunction.basis(len(psi), index, algebra)
        overlap = psi.algebra.modulus_squared(psi.inner(basis))
        other = phi.algebra.modulus_squared(phi.inner(basis))
        if abs(overlap - other) > tolerance:
            return False
    return True


def permutations(dim):
    """Yields every permutation transform on dim outcomes."""
    for images in itertools.permutations(range(1, dim + 1)):
        yield OrthogonalTransform.permutation(images)
