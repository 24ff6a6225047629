"""Density matrices, their Euler decomposition and the collapse.

The density matrix of a 2-state real wave-function (cos t, sin t) is

    psi psi^T = 1/2 + diag(1/2, -1/2) (cos 2t + J sin 2t)

where J = [[0, 1], [-1, 0]] squares to -1 and plays the part
of the imaginary unit. Collapsing zeroes the part proportional to J,
i.e. it takes the "real part" and leaves diag(cos^2 t, sin^2 t).

For N states the same happens at every depth n of the recursion
v_n = c_n l_n + s_n v_{n+1}: with J_n = l_n v_{n+1}^T - v_{n+1} l_n^T

    v_n v_n^T = 1/2 (l_n l_n^T + v_{n+1} v_{n+1}^T)
              + 1/2 (l_n l_n^T - v_{n+1} v_{n+1}^T)
                    (cos 2 theta_n + J_n sin 2 theta_n)

The only cross term of depth n is c_n s_n (l_n v_{n+1}^T + v_{n+1} l_n^T),
it's what keeps v_n v_n^T a projection before the collapse.
"""

import logging

import attr
import numpy as np

import psiparam.algebra as _algebra
import psiparam.conversion as conversion
import psiparam.errors as errors
import psiparam.simplex as simplex
import psiparam.sphere as sphere


logger = logging.getLogger(__name__)

SELF_ADJOINT_TOLERANCE = 1e-12
TRACE_TOLERANCE = 1e-12
PURITY_TOLERANCE = 1e-12
PSD_TOLERANCE = 1e-10
PSD_CHECK_MAX_DIM = 32


def _array_eq():
    return attr.cmp_using(eq=np.array_equal)


def _square_matrix(values):
    """Converts matrix coordinates to shape (N, N, block_dim).
    A 2-dimensional input is read as a real matrix.
    """
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
class DensityMatrix:
    """A self-adjoint positive semi-definite matrix of trace 1.

    Positivity is only verified up to PSD_CHECK_MAX_DIM states.

    Attributes:
        matrix (numpy.ndarray): read-only coordinates, shape (N, N, block_dim)
        algebra (algebra.ScalarAlgebra): the scalars of the entries
    """

    matrix = attr.ib(converter=_square_matrix, eq=_array_eq())
    algebra = attr.ib(
        default=_algebra.ScalarAlgebra.REAL, converter=_algebra.ScalarAlgebra
    )

    @matrix.validator
    def _check_density(self, attribute, value):
        algebra = self.algebra
        if value.shape[2] != algebra.block_dim:
            raise errors.DimensionError(
                f"{algebra.value} entries need {algebra.block_dim} "
                f"coordinates, got {value.shape[2]}"
            )
        deviation = np.max(np.abs(value - algebra.adjoint(value)))
        if deviation > SELF_ADJOINT_TOLERANCE:
            raise errors.ValidationError(
                f"a density matrix must be self-adjoint, "
                f"deviation {deviation!r}"
            )
        trace = algebra.trace(value)
        if abs(trace - 1.0) > TRACE_TOLERANCE:
            raise errors.NormalizationError(
                f"a density matrix must have trace 1, got {trace!r}"
            )
        if value.shape[0] <= PSD_CHECK_MAX_DIM:
            real = algebra.embed_matrix(value)
            smallest = np.min(np.linalg.eigvalsh((real + real.T) / 2))
            if smallest < -PSD_TOLERANCE:
                raise errors.ValidationError(
                    f"a density matrix must be positive semi-definite, "
                    f"found the eigenvalue {smallest!r}"
                )

    @classmethod
    def from_values(cls, values, algebra=None):
        if algebra is None:
            algebra = _algebra.ScalarAlgebra.infer(values, rank=2)
        algebra = _algebra.ScalarAlgebra(algebra)
        return cls(algebra.coordinates(values, rank=2), algebra)

    @classmethod
    def from_dist(cls, dist):
        """The collapsed (diagonal) density matrix diag(p)."""
        return cls(np.diag(dist.p))

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

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def values(self):
        """numpy.ndarray: the entries as floats, complex numbers
        or quaternion coordinate rows
        """
        return self.algebra.values(self.matrix)

    def trace(self):
        return self.algebra.trace(self.matrix)

    def diagonal(self):
        """The probabilities on the diagonal."""
        indices = np.arange(self.dim)
        return simplex.ProbDist(self.matrix[indices, indices, 0])

    def is_diagonal(self, tolerance=0.0):
        off_diagonal = self.matrix.copy()
        indices = np.arange(self.dim)
        off_diagonal[indices, indices] = 0.0
        return bool(np.max(np.abs(off_diagonal)) <= tolerance)

    def is_pure(self, tolerance=PURITY_TOLERANCE):
        """Pure states are the idempotent density matrices psi psi^dagger."""
        square = self.algebra.matmul(self.matrix, self.matrix)
        return bool(np.max(np.abs(square - self.matrix)) <= tolerance)

    def expectation(self, operator):
        """Re tr(rho O) for an operator over the same algebra."""
        operator = operator_coordinates(operator, self.algebra, self.dim)
        return self.algebra.trace(self.algebra.matmul(self.matrix, operator))

    def to_dict(self):
        return {
            "matrix": self.algebra.to_json(self.matrix),
            "algebra": self.algebra.value,
        }


def operator_coordinates(operator, algebra, dim):
    """Converts an operator (projection, density matrix or array)
    to coordinates over the passed algebra.
    """
    if isinstance(operator, simplex.Projection):
        operator = operator.matrix
    if isinstance(operator, DensityMatrix):
        coords = operator.algebra.promote(operator.matrix, algebra)
    else:
        coords = algebra.coordinates(operator, rank=2)
    if coords.shape[:2] != (dim, dim):
        raise errors.DimensionError(
            f"expected a {dim} x {dim} operator, got {coords.shape[:2]}"
        )
    return coords


def pure_density(psi):
    """The rank-1 projection psi psi^dagger.

    Raises:
        NormalizationError: if the norm of psi deviates from 1
    """
    norm = psi.norm()
    if abs(norm - 1.0) > sphere.NORM_TOLERANCE:
        raise errors.NormalizationError(
            f"a pure state needs a unit wave-function, got norm {norm!r}"
        )
    algebra = psi.algebra
    return DensityMatrix(algebra.outer(psi.amplitudes, psi.amplitudes), algebra)


def collapse(rho):
    """Zeroes the off-diagonal entries of rho in the measurement basis.

    The diagonal is kept unchanged.
    Collapsing in another basis is done by conjugating rho first.
    """
    indices = np.arange(rho.dim)
    collapsed = np.zeros_like(rho.matrix)
    collapsed[indices, indices] = rho.matrix[indices, indices]
    return DensityMatrix(collapsed, rho.algebra)


def _antisymmetric(values):
    matrix = conversion.to_readonly_array(values)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise errors.DimensionError(
            f"expected a square matrix, got shape {matrix.shape}"
        )
    return matrix


@attr.s(frozen=True)
class ImaginaryUnitOperator:
    """J = l v^T - v l^T for orthonormal l and v.

    J acts in the plane spanned by l and v like the imaginary unit:
    J^2 is minus the projection onto that plane.

    Attributes:
        matrix (numpy.ndarray): read-only antisymmetric real matrix
    """

    matrix = attr.ib(converter=_antisymmetric, eq=_array_eq())

    @matrix.validator
    def _check_unit(self, attribute, value):
        if np.max(np.abs(value + value.T)) > SELF_ADJOINT_TOLERANCE:
            raise errors.ValidationError("J must be antisymmetric")
        plane = -value @ value
        if np.max(np.abs(plane @ plane - plane)) > PURITY_TOLERANCE:
            raise errors.ValidationError("-J^2 must be a projection")
        if abs(np.trace(plane) - 2.0) > TRACE_TOLERANCE:
            raise errors.ValidationError("J must act in a 2-dimensional plane")

    @classmethod
    def of_plane(cls, first, second):
        """J = first second^T - second first^T."""
        first = np.asarray(first, dtype=float)
        second = np.asarray(second, dtype=float)
        return cls(np.outer(first, second) - np.outer(second, first))

    @property
    def dim(self):
        return self.matrix.shape[0]

    def plane_projector(self):
        """The projection onto the plane J acts in, -J^2."""
        return -self.matrix @ self.matrix


@attr.s(frozen=True)
class EulerDecomposition:
    """psi psi^T = mean + axis (phase_cos + J phase_sin)
    for a 2-state real wave-function (cos t, sin t).
    """

    mean = attr.ib()
    axis = attr.ib()
    phase_cos = attr.ib(converter=float)
    phase_sin = attr.ib(converter=float)
    unit = attr.ib(validator=attr.validators.instance_of(ImaginaryUnitOperator))

    def reassemble(self):
        """Evaluates mean + axis (phase_cos + J phase_sin)."""
        phase = self.phase_cos * np.eye(2) + self.phase_sin * self.unit.matrix
        return self.mean + self.axis @ phase

    def collapsed(self):
        """The "real part" mean + axis phase_cos, i.e. diag(psi psi^T)."""
        return self.mean + self.axis * self.phase_cos


def euler_decompose_2d(psi):
    """Splits the density matrix of a real 2-state wave-function
    into its Euler's formula parts.

    Raises:
        DimensionError: if psi doesn't have 2 states
        ValidationError: if psi isn't real
    """
    if len(psi) != 2:
        raise errors.DimensionError(
            f"the Euler decomposition needs 2 states, got {len(psi)}"
        )
    sphere._require_real(psi)
    first, second = psi.values
    return EulerDecomposition(
        mean=0.5 * np.eye(2),
        axis=np.diag([0.5, -0.5]),
        phase_cos=first * first - second * second,
        phase_sin=2.0 * first * second,
        unit=ImaginaryUnitOperator.of_plane([1.0, 0.0], [0.0, 1.0]),
    )


@attr.s(frozen=True)
class RecursionBlock:
    """The 2-state wave-function at depth n of the recursion
    v_n = c_n l_n + s_n v_{n+1}.

    Attributes:
        depth (int): n (1-based)
        basis (numpy.ndarray): l_n
        tail (numpy.ndarray): the unit vector v_{n+1}
        cosine (float): c_n
        sine (float): s_n
    """

    depth = attr.ib()
    basis = attr.ib(eq=_array_eq())
    tail = attr.ib(eq=_array_eq())
    cosine = attr.ib(converter=float)
    sine = attr.ib(converter=float)

    @property
    def phase_cos(self):
        """cos 2 theta_n"""
        return self.cosine * self.cosine - self.sine * self.sine

    @property
    def phase_sin(self):
        """sin 2 theta_n"""
        return 2.0 * self.cosine * self.sine

    @property
    def unit(self):
        """J_n = l_n v_{n+1}^T - v_{n+1} l_n^T"""
        return ImaginaryUnitOperator.of_plane(self.basis, self.tail)

    def projector(self):
        """Reassembles v_n v_n^T from its Euler's formula parts."""
        basis = np.outer(self.basis, self.basis)
        tail = np.outer(self.tail, self.tail)
        phase = (
            self.phase_cos * np.eye(len(self.basis))
            + self.phase_sin * self.unit.matrix
        )
        return 0.5 * (basis + tail) + 0.5 * (basis - tail) @ phase

    def collapse(self):
        """Takes the "real part" of cos 2 theta_n + J_n sin 2 theta_n.

        Returns:
            tuple of float: P(n | n or above), P(n + 1 or above | n or above)
        """
        return 0.5 * (1.0 + self.phase_cos), 0.5 * (1.0 - self.phase_cos)


def recursion_blocks(psi):
    """Walks the recursion v_n = c_n l_n + s_n v_{n+1} of a real psi.

    v_n is the normalized part of psi on the outcomes n..N.
    If that part is zero the recursion continues with
    v_n = l_n, c_n = 1 and s_n = 0.

    Returns:
        list of RecursionBlock: the blocks of depth 1..N-1
    """
    sphere._require_real(psi)
    amplitudes = psi.values
    dim = len(amplitudes)
    identity = np.eye(dim)
    tail_norms = np.sqrt(np.cumsum(np.square(amplitudes[::-1]))[::-1])
    blocks = []
    for index in range(dim - 1):
        if tail_norms[index] > 0:
            cosine = amplitudes[index] / tail_norms[index]
            sine = tail_norms[index + 1] / tail_norms[index]
        else:
            cosine, sine = 1.0, 0.0
        if tail_norms[index + 1] > 0:
            tail = np.zeros(dim)
            tail[index + 1 :] = amplitudes[index + 1 :] / tail_norms[index + 1]
        else:
            logger.debug("empty tail after outcome %d", index + 1)
            tail = identity[index + 1]
        blocks.append(
            RecursionBlock(index + 1, identity[index], tail, cosine, sine)
        )
    return blocks


def imaginary_unit(psi, depth):
    """J_n of the recursion of a real wave-function at depth n (1-based)."""
    if not 1 <= depth < len(psi):
        raise errors.OutOfRangeError(
            f"depth {depth} is out of the range 1..{len(psi) - 1}"
        )
    return recursion_blocks(psi)[depth - 1].unit


def recursive_collapse(psi):
    """Collapses a real wave-function one 2-state block at a time.

    The block of depth n splits the remaining probability
    P(n or above) into P(n) and P(n + 1 or above).

    Returns:
        simplex.ProbDist: equal to sphere.born_decode(psi)
    """
    probabilities = []
    remaining = 1.0
    for block in recursion_blocks(psi):
        stay, move = block.collapse()
        probabilities.append(remaining * stay)
        remaining *= move
    probabilities.append(remaining)
    return simplex.ProbDist(probabilities)
