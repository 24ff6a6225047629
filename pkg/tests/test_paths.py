import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import psiparam.errors as errors
import psiparam.paths as paths
import psiparam.sphere as sphere


@pytest.mark.parametrize(
    "steps, q, expected",
    [
        (1, [0.5], [0.5, 0.5]),
        (2, [0.5], [0.25, 0.25, 0.25, 0.25]),
        (2, [0.1, 0.5], [0.45, 0.45, 0.05, 0.05]),
        (3, [1.0], [0.0] * 7 + [1.0]),
    ],
)
def test_enumerate_paths(steps, q, expected):
    distribution = paths.enumerate_paths(paths.WalkSpec(steps, q))
    np.testing.assert_allclose(distribution.dist.p, expected, rtol=0, atol=1e-12)
    assert distribution.ordering == paths.ORDERING


@pytest.mark.parametrize(
    "steps, q, expected",
    [
        (1, [0.5], [math.sqrt(0.5), math.sqrt(0.5)]),
        (2, [0.5], [0.5, 0.5, 0.5, 0.5]),
        (2, [0.1, 0.5], np.sqrt([0.45, 0.45, 0.05, 0.05])),
    ],
)
def test_path_wavefunction(steps, q, expected):
    psi = paths.path_wavefunction(paths.WalkSpec(steps, q))
    np.testing.assert_allclose(psi.values, expected, rtol=0, atol=1e-12)
    assert abs(psi.norm() - 1.0) < 1e-12


def test_path_labels():
    distribution = paths.enumerate_paths(paths.WalkSpec(2, [0.1, 0.5]))
    assert distribution.path_labels() == ["00", "01", "10", "11"]
    assert distribution.to_dict()["ordering"] == "lex-down0"


@pytest.mark.parametrize(
    "steps, time, positions, expected",
    [
        (2, 2, [-2, 0, 2], [0.25, 0.5, 0.25]),
        (2, 1, [-1, 1], [0.5, 0.5]),
        (2, 0, [0], [1.0]),
        (3, 3, [-3, -1, 1, 3], [0.125, 0.375, 0.375, 0.125]),
    ],
)
def test_marginal_at(steps, time, positions, expected):
    marginal = paths.marginal_at(paths.WalkSpec(steps, [0.5]), time)
    assert list(marginal.positions) == positions
    np.testing.assert_allclose(marginal.dist.p, expected, rtol=0, atol=1e-12)


@pytest.mark.parametrize("time", range(5))
def test_up_counts_match_the_path_labels(time):
    labels = paths.enumerate_paths(paths.WalkSpec(4, [0.5])).path_labels()
    counts = paths._up_counts(4, time)
    assert counts.tolist() == [label[:time].count("1") for label in labels]


def test_marginal_at_follows_each_step_law():
    spec = paths.WalkSpec(2, [0.1, 0.5])
    marginal = paths.marginal_at(spec, 1)
    np.testing.assert_allclose(marginal.dist.p, [0.9, 0.1], rtol=0, atol=1e-12)
    marginal = paths.marginal_at(spec, 2)
    np.testing.assert_allclose(
        marginal.dist.p, [0.45, 0.5, 0.05], rtol=0, atol=1e-12
    )
    assert marginal.to_dict()["positions"] == [-2, 0, 2]


@pytest.mark.parametrize(
    "steps, q, error",
    [
        (0, [0.5], errors.OutOfRangeError),
        (paths.MAX_STEPS + 1, [0.5], errors.OutOfRangeError),
        (2, [1.5], errors.OutOfRangeError),
        (2, [0.5, 0.5, 0.5], errors.DimensionError),
        (2.5, [0.5], errors.ValidationError),
    ],
)
def test_walk_spec_rejects(steps, q, error):
    with pytest.raises(error):
        paths.WalkSpec(steps, q)


def test_marginal_at_rejects_times_beyond_the_walk():
    spec = paths.WalkSpec(2, [0.5])
    with pytest.raises(errors.OutOfRangeError):
        paths.marginal_at(spec, 3)
    with pytest.raises(errors.OutOfRangeError):
        paths.marginal_at(spec, -1)


def test_walk_spec_dict():
    spec = paths.WalkSpec.from_dict({"steps": 3, "q": [0.25]})
    assert spec.step_probs == (0.25, 0.25, 0.25)
    assert spec.path_count == 8
    assert spec.to_dict() == {"steps": 3, "q": [0.25, 0.25, 0.25]}
    with pytest.raises(errors.ParseError):
        paths.WalkSpec.from_dict({"steps": 3})


@given(
    seed=st.integers(0, 2**32 - 1),
    steps=st.integers(1, 12),
    shared=st.booleans(),
)
def test_random_walks(seed, steps, shared):
    rng = np.random.default_rng(seed)
    q = rng.random(1 if shared else steps)
    spec = paths.WalkSpec(steps, q)
    expected = paths.path_probabilities(spec)
    decoded = sphere.born_decode(paths.path_wavefunction(spec))
    assert np.max(np.abs(decoded.p - expected)) < 1e-12
    for time in range(steps + 1):
        born = paths.born_marginal(spec, time)
        markov = paths.markov_marginal(spec, time)
        assert np.max(np.abs(born - markov)) < 1e-12
        assert abs(born.sum() - 1.0) < 1e-12
