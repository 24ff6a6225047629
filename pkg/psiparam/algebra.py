"""Real, complex and quaternionic scalars and their real block forms.

A scalar of an algebra with block dimension d is stored as its
d real coordinates in the basis (1, i, j, k)[:d].
Vectors and matrices over an algebra are numpy arrays
with a trailing coordinate axis of length d,
so the same code handles every algebra.
Multiplication uses the left-multiplication representation:
the scalar q acts on the coordinates of x as the d x d real matrix L(q).
"""

import enum

import attr
import numpy as np

import psiparam.errors as errors


def _left_units():
    """Left-multiplication matrices of the quaternion units 1, i, j, k
    in the basis (1, i, j, k).
    """
    one = np.eye(4)
    i = np.array(
        [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
        dtype=float,
    )
    j = np.array(
        [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]],
        dtype=float,
    )
    k = np.array(
        [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
        dtype=float,
    )
    return np.stack([one, i, j, k])


_QUATERNION_UNITS = _left_units()
_CONJUGATION_SIGNS = np.array([1.0, -1.0, -1.0, -1.0])


@enum.unique
class ScalarAlgebra(str, enum.Enum):
    """The associative real division algebras a wave-function can use."""

    REAL = ("real", 1)
    COMPLEX = ("complex", 2)
    QUATERNION = ("quaternion", 4)

    def __new__(cls, tag, block_dim):
        inst = str.__new__(cls, tag)
        inst._value_ = tag
        inst.block_dim = block_dim
        # the complex units are the upper left blocks of the quaternion ones
        inst.units = _QUATERNION_UNITS[:block_dim, :block_dim, :block_dim]
        inst.units.setflags(write=False)
        inst.signs = _CONJUGATION_SIGNS[:block_dim]
        return inst

    @classmethod
    def widest(cls, *algebras):
        """Returns the smallest algebra containing all passed ones."""
        return max(algebras, key=lambda algebra: algebra.block_dim)

    @classmethod
    def infer(cls, values, rank):
        """Guesses the algebra of nested scalar values.

        Args:
            values (array-like): a vector (rank 1) or matrix (rank 2)
                of numbers, python complex numbers
                or coordinate lists of length 2 or 4
            rank (int): the number of structural axes

        Returns:
            ScalarAlgebra: the algebra the values are written in

        Raises:
            ValidationError: if the values aren't a regular array
            DimensionError: if no algebra has the trailing coordinates
        """
        try:
            array = np.asarray(values)
        except (TypeError, ValueError) as error:
            raise errors.ValidationError(
                f"expected a regular array of scalars: {error}"
            ) from error
        if array.dtype == object:
            raise errors.ValidationError("expected a regular array of scalars")
        if np.iscomplexobj(array):
            return cls.COMPLEX
        if array.ndim == rank:
            return cls.REAL
        if array.ndim == rank + 1:
            for algebra in cls:
                if algebra.block_dim == array.shape[-1]:
                    return algebra
        raise errors.DimensionError(
            f"can't infer the scalar algebra of an array "
            f"with shape {array.shape} and rank {rank}"
        )

    def coordinates(self, values, rank):
        """Converts nested scalar values to a coordinate array.

        Real numbers and python complex numbers are promoted
        to this algebra.

        Args:
            values (array-like): the scalars
            rank (int): the number of structural axes

        Returns:
            numpy.ndarray: float array with shape (..., block_dim)

        Raises:
            DimensionError: if the values don't fit this algebra
        """
        try:
            array = np.asarray(values)
            if np.iscomplexobj(array):
                array = np.stack([array.real, array.imag], axis=-1)
            array = array.astype(float)
        except (TypeError, ValueError) as error:
            raise errors.ValidationError(
                f"expected numeric scalars: {error}"
            ) from error
        if array.ndim == rank:
            array = array[..., np.newaxis]
        if array.ndim != rank + 1:
            raise errors.DimensionError(
                f"expected an array of rank {rank} over the {self.value} "
                f"numbers, got shape {array.shape}"
            )
        source_dim = array.shape[-1]
        if source_dim not in (1, 2, 4) or source_dim > self.block_dim:
            raise errors.DimensionError(
                f"scalars with {source_dim} coordinates "
                f"are not {self.value} numbers"
            )
        return self._pad(array)

    def _pad(self, array):
        missing = self.block_dim - array.shape[-1]
        if not missing:
            return array
        padding = [(0, 0)] * (array.ndim - 1) + [(0, missing)]
        return np.pad(array, padding)

    def promote(self, coords, target):
        """Embeds coordinates of this algebra into a wider algebra
        (real in complex in quaternion).
        """
        if target.block_dim < self.block_dim:
            raise errors.DimensionError(
                f"can't demote {self.value} scalars to {target.value} ones"
            )
        return target._pad(np.asarray(coords, dtype=float))

    def values(self, coords):
        """Converts coordinates back to native numpy values:
        floats, complex numbers or quaternion coordinate rows.
        """
        coords = np.asarray(coords)
        if self is ScalarAlgebra.REAL:
            return coords[..., 0]
        if self is ScalarAlgebra.COMPLEX:
            return coords[..., 0] + 1j * coords[..., 1]
        return coords

    def to_json(self, coords):
        """Converts coordinates to nested lists:
        numbers for real scalars, [re, im] pairs for complex ones
        and [a, b, c, d] for quaternions.
        """
        coords = np.asarray(coords)
        if self is ScalarAlgebra.REAL:
            return coords[..., 0].tolist()
        return coords.tolist()

    def left_matrices(self, coords):
        """Returns L(q) for every scalar q, shape (..., d, d)."""
        return np.einsum("...u,uab->...ab", coords, self.units)

    def conjugate(self, coords):
        return np.asarray(coords) * self.signs

    def product(self, left, right):
        """Multiplies scalars elementwise (left * right)."""
        return np.einsum("...ab,...b->...a", self.left_matrices(left), right)

    def modulus_squared(self, coords):
        return np.sum(np.square(coords), axis=-1)

    def matmul(self, left, right):
        """Multiplies two matrices over the algebra,
        shapes (n, m, d) and (m, k, d).
        """
        return np.einsum("nmab,mkb->nka", self.left_matrices(left), right)

    def matvec(self, matrix, vector):
        """Applies a matrix (n, m, d) to a vector (m, d)."""
        return np.einsum("nmab,mb->na", self.left_matrices(matrix), vector)

    def adjoint(self, matrix):
        """Conjugate transpose of a matrix over the algebra."""
        return self.conjugate(np.swapaxes(matrix, 0, 1))

    def outer(self, left, right):
        """The matrix left right^dagger of two vectors."""
        return np.einsum(
            "iab,jb->ija", self.left_matrices(left), self.conjugate(right)
        )

    def identity(self, dim):
        matrix = np.zeros((dim, dim, self.block_dim))
        matrix[np.arange(dim), np.arange(dim), 0] = 1.0
        return matrix

    def trace(self, matrix):
        """Real part of the trace."""
        return float(np.trace(matrix[..., 0]))

    def embed_vector(self, vector):
        """Real coordinates of a vector, shape (n * d,)."""
        return np.asarray(vector, dtype=float).reshape(-1)

    def embed_matrix(self, matrix):
        """Real block matrix of a matrix over the algebra,
        shape (n * d, m * d). Block (n, m) is L(matrix[n, m]).
        """
        rows, columns = matrix.shape[:2]
        blocks = self.left_matrices(matrix)
        return blocks.transpose(0, 2, 1, 3).reshape(
            rows * self.block_dim, columns * self.block_dim
        )


@attr.s(frozen=True)
class BlockEmbedding:
    """Identifies N scalars of an algebra with N * block_dim real numbers.

    The real outcome (n, m) is the m-th coordinate of the n-th amplitude,
    so an algebra wave-function is a real wave-function
    over a phase-space which has block_dim copies of each outcome.
    """

    algebra = attr.ib(converter=ScalarAlgebra)
    source_dim = attr.ib(converter=int)

    @source_dim.validator
    def _check_source_dim(self, attribute, value):
        if value < 1:
            raise errors.DimensionError("an embedding needs at least 1 state")

    @property
    def target_dim(self):
        return self.source_dim * self.algebra.block_dim

    def embed(self, psi):
        """Returns the real wave-function with the coordinates of psi."""
        import psiparam.sphere as sphere

        if len(psi) != self.source_dim:
            raise errors.DimensionError(
                f"expected a wave-function with {self.source_dim} states, "
                f"got {len(psi)}"
            )
        coords = psi.algebra.promote(psi.amplitudes, self.algebra)
        return sphere.WaveFunction(self.algebra.embed_vector(coords))

    def scalar_action(self, scalar):
        """Real matrix of the left multiplication
        of every amplitude by the same scalar.
        """
        coords = self.algebra.coordinates(scalar, rank=0)
        return np.kron(
            np.eye(self.source_dim), self.algebra.left_matrices(coords)
        )

    def matrix(self, operator):
        """Real block form of an N x N operator over the algebra.

        Args:
            operator (numpy.ndarray): coordinates, shape (N, N, d')
                with d' not exceeding the block dimension

        Returns:
            numpy.ndarray: target_dim x target_dim real matrix
        """
        operator = np.asarray(operator, dtype=float)
        if operator.shape[:2] != (self.source_dim, self.source_dim):
            raise errors.DimensionError(
                f"expected a {self.source_dim} x {self.source_dim} operator, "
                f"got shape {operator.shape}"
            )
        return self.algebra.embed_matrix(self.algebra._pad(operator))

    def marginalize(self, real_dist):
        """Sums the probabilities of each block: P(n) = sum_m P(n, m)."""
        import psiparam.simplex as simplex

        if real_dist.dim != self.target_dim:
            raise errors.DimensionError(
                f"expected a distribution over {self.target_dim} outcomes, "
                f"got {real_dist.dim}"
            )
        blocks = real_dist.p.reshape(self.source_dim, self.algebra.block_dim)
        return simplex.ProbDist(blocks.sum(axis=1))


def embed_real(psi):
    """Rewrites a complex or quaternionic wave-function as a real one.

    Args:
        psi (sphere.WaveFunction): a wave-function over any algebra

    Returns:
        sphere.WaveFunction: the real wave-function
            of dimension len(psi) * block_dim
    """
    return BlockEmbedding(psi.algebra, len(psi)).embed(psi)


def marginal_born(psi):
    """The Born rule with the modulus of the algebra,
    i.e. the distribution of n regardless of the block coordinate m.
    """
    import psiparam.sphere as sphere

    return sphere.born_decode(psi)


def collapse_diagonalizes(psi, tolerance=1e-12):
    """Checks that collapsing psi psi^dagger
    leaves a real diagonal matrix in the embedded real basis.

    The embedded real density matrix is collapsed block-diagonally,
    i.e. every block coupling two different outcomes n is dropped.
    The remaining blocks are real diagonal because each diagonal entry
    of psi psi^dagger is the real number |psi_n|^2.

    Args:
        psi (sphere.WaveFunction): wave-function over any algebra
        tolerance (float): allowed deviation

    Returns:
        bool: True if the collapsed matrix is real diagonal
            and its block traces equal the marginal Born distribution
    """
    import psiparam.density as density

    embedding = BlockEmbedding(psi.algebra, len(psi))
    block_dim = psi.algebra.block_dim
    rho = density.pure_density(psi)
    real = embedding.matrix(rho.matrix) / block_dim
    mask = np.kron(np.eye(len(psi)), np.ones((block_dim, block_dim)))
    collapsed = real * mask

    embedded_collapse = (
        embedding.matrix(density.collapse(rho).matrix) / block_dim
    )
    if not np.allclose(collapsed, embedded_collapse, rtol=0, atol=tolerance):
        return False

    off_diagonal = collapsed - np.diag(np.diag(collapsed))
    if np.max(np.abs(off_diagonal)) > tolerance:
        return False

    block_traces = np.diag(collapsed).reshape(len(psi), block_dim).sum(axis=1)
    return bool(
        np.allclose(
            block_traces, marginal_born(psi).p, rtol=0, atol=tolerance
        )
    )


def unit_scalar(rng, algebra):
    """Draws a uniformly distributed scalar of modulus 1."""
    algebra = ScalarAlgebra(algebra)
    coords = rng.normal(size=algebra.block_dim)
    return coords / np.linalg.norm(coords)


def random_wavefunction(rng, dim, algebra=ScalarAlgebra.REAL):
    """Draws a wave-function uniformly from the unit hypersphere.

    Args:
        rng (numpy.random.Generator): source of randomness
        dim (int): number of states
        algebra (ScalarAlgebra): algebra of the amplitudes

    Returns:
        sphere.WaveFunction
    """
    import psiparam.sphere as sphere

    algebra = ScalarAlgebra(algebra)
    coords = rng.normal(size=(dim, algebra.block_dim))
    return sphere.WaveFunction(coords / np.linalg.norm(coords), algebra)
