"""Expectation functionals on the algebra of projections.

An ensemble assigns to every projection P its expectation E(P) = tr(rho P).
After a transformation U the ensemble is E_U(D) = E(U D U^dagger)
for diagonal operators D, and E_U(O) = 0 for operators O
with a null diagonal: the wave-function collapses,
so only the diagonal part of an operator is ever observed.
"""

import logging
import math

import attr
import numpy as np

import psiparam.algebra as _algebra
import psiparam.conversion as conversion
import psiparam.density as density
import psiparam.errors as errors
import psiparam.simplex as simplex


logger = logging.getLogger(__name__)

MIN_GRID = 1000
DEFAULT_GRID = 100000

# projections onto l_1 and onto (l_1 + l_2) / sqrt(2)
FIRST_PROJECTION = simplex.Projection([[1.0, 0.0], [0.0, 0.0]])
PLUS_PROJECTION = simplex.Projection([[0.5, 0.5], [0.5, 0.5]])


def _operator_algebra(operator):
    if isinstance(operator, density.DensityMatrix):
        return operator.algebra
    if isinstance(operator, simplex.Projection):
        return _algebra.ScalarAlgebra.REAL
    return _algebra.ScalarAlgebra.infer(operator, rank=2)


def _diagonal_part(coords):
    diagonal = np.zeros_like(coords)
    indices = np.arange(coords.shape[0])
    diagonal[indices, indices] = coords[indices, indices]
    return diagonal


@attr.s(frozen=True)
class ExpectationFunctional:
    """The expectation functional of an ensemble,
    optionally seen after a transformation.

    Attributes:
        rho (density.DensityMatrix): the state of the ensemble
        transform (transform.OrthogonalTransform): U of E_U, or None
    """

    rho = attr.ib(validator=attr.validators.instance_of(density.DensityMatrix))
    transform = attr.ib(default=None)

    @transform.validator
    def _check_transform(self, attribute, value):
        if value is not None and value.dim != self.rho.dim:
            raise errors.DimensionError(
                f"can't transform an ensemble of {self.rho.dim} outcomes "
                f"with a transform on {value.dim} states"
            )

    @classmethod
    def from_dist(cls, dist):
        return cls(density.DensityMatrix.from_dist(dist))

    @classmethod
    def from_wavefunction(cls, psi):
        """The ensemble parametrized by psi, i.e. its collapsed density."""
        return cls(density.collapse(density.pure_density(psi)))

    @property
    def dim(self):
        return self.rho.dim

    def transformed(self, transform):
        """E_U. Applying it to an already transformed functional E_V
        composes the transforms: (E_V)_U = E_{VU}.
        """
        if self.transform is not None:
            transform = self.transform.compose(transform)
        return ExpectationFunctional(self.rho, transform)

    def evaluate(self, operator):
        """Computes Re tr(rho U D U^dagger) with D the diagonal part
        of the operator.

        Args:
            operator: a simplex.Projection, a density.DensityMatrix
                or a square array over any algebra

        Returns:
            float: the expectation, exactly 0 for a null diagonal

        Raises:
            DimensionError: if the operator's dimension doesn't match
        """
        algebras = [self.rho.algebra, _operator_algebra(operator)]
        if self.transform is not None:
            algebras.append(self.transform.algebra)
        algebra = _algebra.ScalarAlgebra.widest(*algebras)

        coords = density.operator_coordinates(operator, algebra, self.dim)
        diagonal = _diagonal_part(coords)
        if not np.any(diagonal):
            return 0.0
        if self.transform is not None:
            diagonal = self.transform.conjugate_operator(diagonal, algebra)
        rho = self.rho.algebra.promote(self.rho.matrix, algebra)
        return algebra.trace(algebra.matmul(rho, diagonal))

    def __call__(self, operator):
        return self.evaluate(operator)


def vector_expectation(psi, projection):
    """<psi, P psi>, the expectation of a projection in the state psi.

    It equals the probability of the projection's event
    under born_decode(psi) when P is an event projection.
    """
    if isinstance(projection, simplex.Projection):
        projection = projection.matrix
    algebra = psi.algebra
    coords = algebra.coordinates(projection, rank=2)
    if coords.shape[:2] != (len(psi), len(psi)):
        raise errors.DimensionError(
            f"can't apply a {coords.shape[0]} x {coords.shape[1]} operator "
            f"to a wave-function with {len(psi)} states"
        )
    image = algebra.matvec(coords, psi.amplitudes)
    scalar = algebra.product(algebra.conjugate(psi.amplitudes), image)
    return float(scalar.sum(axis=0)[0])


def pure_residuals(target_a, target_b, thetas):
    """Residuals of the real pure states (cos theta, sin theta).

    The residual is the larger of |tr(rho P_1) - target_a|
    and |tr(rho P_+) - target_b| with rho the pure density
    of the state, P_1 = FIRST_PROJECTION and P_+ = PLUS_PROJECTION.

    Args:
        target_a (float): the target of tr(rho P_1)
        target_b (float): the target of tr(rho P_+)
        thetas (numpy.ndarray): angles of the states

    Returns:
        numpy.ndarray: one residual per angle
    """
    thetas = np.asarray(thetas, dtype=float)
    states = np.stack([np.cos(thetas), np.sin(thetas)], axis=-1)
    first = np.einsum("ti,ij,tj->t", states, FIRST_PROJECTION.matrix, states)
    plus = np.einsum("ti,ij,tj->t", states, PLUS_PROJECTION.matrix, states)
    return np.maximum(np.abs(first - target_a), np.abs(plus - target_b))


@attr.s(frozen=True)
class GleasonSearch:
    """Best real pure state found by gleason_pure_search.

    Attributes:
        theta_best (float): angle of the best state (cos theta, sin theta)
        residual (float): its residual
        grid (int): the number of scanned angles
    """

    theta_best = attr.ib(converter=float)
    residual = attr.ib(converter=float)
    grid = attr.ib(default=DEFAULT_GRID, converter=int)

    def to_dict(self):
        return {"theta_best": self.theta_best, "residual": self.residual}


def _target(value, name):
    value = conversion.to_float(value)
    if not 0 <= value <= 1:
        raise errors.OutOfRangeError(
            f"{name} must be a probability, got {value!r}"
        )
    return value


def gleason_pure_search(target_a, target_b, grid=DEFAULT_GRID):
    """Searches the real pure state whose expectations of P_1 and P_+
    come closest to the targets.

    The angles 2 pi k / grid for k = 0..grid-1 are scanned,
    ties go to the smallest angle.
    For the targets (1/2, 1/2) no pure state comes close:
    tr(rho P_1) = 1/2 forces tr(rho P_+) to be 0 or 1.

    Raises:
        OutOfRangeError: if a target isn't a probability
            or grid is smaller than MIN_GRID
    """
    target_a = _target(target_a, "target_a")
    target_b = _target(target_b, "target_b")
    grid = conversion.to_index(grid)
    if grid < MIN_GRID:
        raise errors.OutOfRangeError(
            f"the grid needs at least {MIN_GRID} points, got {grid}"
        )
    thetas = 2 * math.pi * np.arange(grid) / grid
    residuals = pure_residuals(target_a, target_b, thetas)
    best = int(np.argmin(residuals))
    logger.debug(
        "best of %d pure states: theta=%r residual=%r",
        grid,
        thetas[best],
        residuals[best],
    )
    return GleasonSearch(thetas[best], residuals[best], grid)


def gleason_mixed_witness():
    """The mixed state rho = I / 2, which meets both targets 1/2."""
    return density.DensityMatrix(np.eye(2) / 2)
