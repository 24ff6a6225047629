import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import psiparam.algebra as algebra
import psiparam.density as density
import psiparam.errors as errors
import psiparam.simplex as simplex
import psiparam.sphere as sphere


def clock(time):
    return sphere.WaveFunction([math.cos(time), math.sin(time)])


@pytest.mark.parametrize(
    "amplitudes, expected",
    [
        ([1.0, 0.0], [[1.0, 0.0], [0.0, 0.0]]),
        (clock(math.pi / 4).values, [[0.5, 0.5], [0.5, 0.5]]),
        ([0.6, 0.8], [[0.36, 0.48], [0.48, 0.64]]),
    ],
)
def test_pure_density(amplitudes, expected):
    rho = density.pure_density(sphere.WaveFunction(amplitudes))
    np.testing.assert_allclose(rho.values, expected, rtol=0, atol=1e-12)
    assert rho.is_pure()


@pytest.mark.parametrize(
    "matrix, expected",
    [
        ([[0.5, 0.5], [0.5, 0.5]], [[0.5, 0.0], [0.0, 0.5]]),
        (np.diag([0.2, 0.3, 0.5]), np.diag([0.2, 0.3, 0.5])),
    ],
)
def test_collapse(matrix, expected):
    collapsed = density.collapse(density.DensityMatrix(matrix))
    np.testing.assert_array_equal(collapsed.values, expected)
    assert collapsed.is_diagonal()


def test_collapse_of_a_pure_density():
    rho = density.pure_density(sphere.WaveFunction([0.6, 0.8]))
    np.testing.assert_allclose(
        density.collapse(rho).values,
        [[0.36, 0.0], [0.0, 0.64]],
        rtol=0,
        atol=1e-12,
    )


@pytest.mark.parametrize(
    "matrix, error",
    [
        ([[0.5, 0.1], [0.0, 0.5]], errors.ValidationError),
        ([[0.5, 0.0], [0.0, 0.6]], errors.NormalizationError),
        ([[1.5, 0.0], [0.0, -0.5]], errors.ValidationError),
        ([[1.0, 0.0]], errors.DimensionError),
    ],
)
def test_density_matrix_rejects(matrix, error):
    with pytest.raises(error):
        density.DensityMatrix(matrix)


def test_density_matrix_dict():
    rho = density.DensityMatrix.from_dict(
        {"matrix": [[[0.5, 0.0], [0.0, -0.5]], [[0.0, 0.5], [0.5, 0.0]]]}
    )
    assert rho.algebra is algebra.ScalarAlgebra.COMPLEX
    assert rho.is_pure()
    assert rho.to_dict()["algebra"] == "complex"
    with pytest.raises(errors.ParseError):
        density.DensityMatrix.from_dict({"rows": []})


def test_from_dist_and_expectation():
    rho = density.DensityMatrix.from_dist(simplex.ProbDist([0.3, 0.7]))
    assert rho.diagonal() == simplex.ProbDist([0.3, 0.7])
    projection = simplex.event_projection(simplex.Event([2]), 2)
    assert rho.expectation(projection) == pytest.approx(0.7, abs=1e-12)
    assert rho.trace() == pytest.approx(1.0, abs=1e-12)
    assert not rho.is_pure()


@given(
    seed=st.integers(0, 2**32 - 1),
    dim=st.integers(1, 32),
    kind=st.sampled_from(list(algebra.ScalarAlgebra)),
)
def test_collapse_is_an_idempotent_trace_preserving_projection(seed, dim, kind):
    rng = np.random.default_rng(seed)
    psi = algebra.random_wavefunction(rng, dim, kind)
    rho = density.pure_density(psi)
    collapsed = density.collapse(rho)
    assert density.collapse(collapsed) == collapsed
    assert abs(collapsed.trace() - rho.trace()) < 1e-12
    np.testing.assert_allclose(
        collapsed.diagonal().p, sphere.born_decode(psi).p, rtol=0, atol=1e-12
    )


@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(2, 8))
def test_null_diagonal_operators_have_no_expectation(seed, dim):
    rng = np.random.default_rng(seed)
    psi = algebra.random_wavefunction(rng, dim)
    collapsed = density.collapse(density.pure_density(psi))
    operator = rng.normal(size=(dim, dim))
    np.fill_diagonal(operator, 0.0)
    assert collapsed.expectation(operator) == 0.0


@pytest.mark.parametrize(
    "time, phase_cos, phase_sin",
    [
        (0.0, 1.0, 0.0),
        (math.pi / 4, 0.0, 1.0),
        (1.2, math.cos(2.4), math.sin(2.4)),
    ],
)
def test_euler_decompose_2d(time, phase_cos, phase_sin):
    decomposition = density.euler_decompose_2d(clock(time))
    assert decomposition.phase_cos == pytest.approx(phase_cos, abs=1e-12)
    assert decomposition.phase_sin == pytest.approx(phase_sin, abs=1e-12)
    np.testing.assert_array_equal(
        decomposition.unit.matrix, [[0.0, 1.0], [-1.0, 0.0]]
    )


def test_euler_decomposition_reassembles_the_clock(rng):
    for time in rng.uniform(-10.0, 10.0, size=10**4):
        psi = clock(time)
        decomposition = density.euler_decompose_2d(psi)
        expected = [
            [math.cos(time) ** 2, math.cos(time) * math.sin(time)],
            [math.cos(time) * math.sin(time), math.sin(time) ** 2],
        ]
        rho = density.pure_density(psi)
        assert np.max(np.abs(rho.values - expected)) < 1e-12
        assert np.max(np.abs(decomposition.reassemble() - expected)) < 1e-12
        assert np.max(
            np.abs(decomposition.collapsed() - density.collapse(rho).values)
        ) < 1e-12


def test_euler_decompose_2d_needs_two_states():
    with pytest.raises(errors.DimensionError):
        density.euler_decompose_2d(sphere.WaveFunction([1.0, 0.0, 0.0]))


def test_imaginary_unit_squares_to_minus_the_plane():
    unit = density.ImaginaryUnitOperator.of_plane([1.0, 0.0], [0.0, 1.0])
    np.testing.assert_array_equal(unit.matrix @ unit.matrix, -np.eye(2))
    np.testing.assert_array_equal(unit.plane_projector(), np.eye(2))
    with pytest.raises(errors.ValidationError):
        density.ImaginaryUnitOperator([[0.0, 2.0], [-2.0, 0.0]])
    with pytest.raises(errors.ValidationError):
        density.ImaginaryUnitOperator([[0.0, 1.0], [1.0, 0.0]])


@pytest.mark.parametrize(
    "amplitudes, expected",
    [
        ([1.0, 0.0, 0.0], [1.0, 0.0, 0.0]),
        (
            sphere.angles_to_wavefunction(
                sphere.EulerAngles([math.pi / 3, math.pi / 4])
            ).values,
            [0.25, 0.375, 0.375],
        ),
        ([math.sqrt(2) / 2, math.sqrt(2) / 2], [0.5, 0.5]),
    ],
)
def test_recursive_collapse(amplitudes, expected):
    dist = density.recursive_collapse(sphere.WaveFunction(amplitudes))
    np.testing.assert_allclose(dist.p, expected, rtol=0, atol=1e-12)


@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 64))
def test_recursive_collapse_is_the_born_rule(seed, dim):
    rng = np.random.default_rng(seed)
    psi = algebra.random_wavefunction(rng, dim)
    expected = sphere.born_decode(psi).p
    assert np.max(np.abs(density.recursive_collapse(psi).p - expected)) < 1e-12


@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(2, 12))
def test_recursion_blocks_reassemble_the_tails(seed, dim):
    rng = np.random.default_rng(seed)
    psi = algebra.random_wavefunction(rng, dim)
    amplitudes = psi.values
    for block in density.recursion_blocks(psi):
        tail = np.zeros(dim)
        start = block.depth - 1
        tail[start:] = amplitudes[start:] / np.linalg.norm(amplitudes[start:])
        assert np.max(np.abs(block.projector() - np.outer(tail, tail))) < 1e-12
        plane = np.outer(block.basis, block.basis) + np.outer(
            block.tail, block.tail
        )
        assert np.max(np.abs(block.unit.plane_projector() - plane)) < 1e-12


def test_recursion_blocks_with_an_empty_tail():
    psi = sphere.WaveFunction([0.0, 1.0, 0.0, 0.0])
    blocks = density.recursion_blocks(psi)
    assert [block.cosine for block in blocks] == [0.0, 1.0, 1.0]
    np.testing.assert_array_equal(blocks[2].tail, [0.0, 0.0, 0.0, 1.0])
    assert density.recursive_collapse(psi).p.tolist() == [0.0, 1.0, 0.0, 0.0]


def test_imaginary_unit_at_a_depth():
    psi = sphere.WaveFunction([0.5, 0.5, 0.5, 0.5])
    unit = density.imaginary_unit(psi, 2)
    tail = np.array([0.0, 0.0, 1.0, 1.0]) / math.sqrt(2)
    expected = np.outer([0.0, 1.0, 0.0, 0.0], tail) - np.outer(
        tail, [0.0, 1.0, 0.0, 0.0]
    )
    np.testing.assert_allclose(unit.matrix, expected, rtol=0, atol=1e-15)
    with pytest.raises(errors.OutOfRangeError):
        density.imaginary_unit(psi, 4)
