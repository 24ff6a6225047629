import pytest

import psiparam.config as config
import psiparam.errors as errors


@pytest.mark.parametrize(
    "environ, expected",
    [
        ({}, 1e-12),
        ({config.TOLERANCE_VARIABLE: ""}, 1e-12),
        ({config.TOLERANCE_VARIABLE: "1e-9"}, 1e-9),
        ({config.TOLERANCE_VARIABLE: " 0 "}, 0.0),
    ],
)
def test_settings_from_environment(environ, expected):
    settings = config.Settings.from_environment(environ)
    assert settings.display_tolerance == expected


@pytest.mark.parametrize("value", ["tiny", "-1e-9", "inf", "nan"])
def test_settings_reject_invalid_tolerances(value):
    with pytest.raises(errors.UsageError):
        config.Settings.from_environment({config.TOLERANCE_VARIABLE: value})


def test_settings_read_the_process_environment(monkeypatch):
    monkeypatch.setenv(config.TOLERANCE_VARIABLE, "1e-6")
    assert config.Settings.from_environment().display_tolerance == 1e-6
