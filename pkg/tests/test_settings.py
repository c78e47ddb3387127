import logging

import pytest

from renyi_convex import constants, errors
from renyi_convex.log import TagFormatter, configure, get_logger
from renyi_convex.settings import Settings, load_settings

# =============================================================================
# SETTINGS
# =============================================================================


def test_missing_file_gives_the_defaults(tmp_path):
    assert load_settings(tmp_path / "pyproject.toml") == Settings()
    assert Settings().seed == constants.DEFAULT_SEED


def test_missing_table_gives_the_defaults(tmp_path):
    path = tmp_path / "pyproject.toml"
    path.write_text('[project]\nname = "x"\n')
    assert load_settings(path) == Settings()


def test_table_overrides_and_unknown_keys(tmp_path):
    path = tmp_path / "pyproject.toml"
    path.write_text('[tool.renyi-convex]\nseed = 7\nmax-doublings = 9\ncolor = "red"\n')
    settings = load_settings(path)
    assert settings.seed == 7
    assert settings.max_doublings == 9
    assert settings.tol == constants.DEFAULT_TOL
    assert not hasattr(settings, "color")


def test_broken_toml_gives_the_defaults(tmp_path):
    path = tmp_path / "pyproject.toml"
    path.write_text("[tool.renyi-convex\nseed = ")
    assert load_settings(path) == Settings()


def test_repository_settings(body_dir):
    settings = load_settings(body_dir.parent / "pyproject.toml")
    assert settings.seed == 20240917
    assert settings.tol == 1e-12


# =============================================================================
# LOGGING
# =============================================================================


def _record(name, level, message):
    return logging.LogRecord(name, level, __file__, 1, message, None, None)


def test_tag_formatter():
    formatter = TagFormatter()
    assert formatter.format(_record("renyi_convex.quad", logging.INFO, "64 nodes")) == "[quad] 64 nodes"
    assert formatter.format(_record("renyi_convex.verify", logging.WARNING, "bad")) == "[verify] warning: bad"
    assert formatter.format(_record("renyi_convex.cli", logging.ERROR, "boom")) == "[cli] error: boom"


def test_configure_installs_one_handler():
    configure(1)
    configure(-1)
    root = logging.getLogger("renyi_convex")
    tagged = [h for h in root.handlers if isinstance(h.formatter, TagFormatter)]
    assert len(tagged) == 1
    assert root.level == logging.WARNING
    assert get_logger("quad").name == "renyi_convex.quad"
    configure(0)


# =============================================================================
# ERRORS
# =============================================================================


@pytest.mark.parametrize(
    "error, code",
    [
        (errors.InvalidBody, 2),
        (errors.InvalidArgument, 2),
        (errors.UnsupportedSmoothness, 2),
        (errors.InvalidWeight, 2),
        (errors.DegenerateBody, 2),
        (errors.NonConvergence, 3),
        (errors.VerificationFailure, 1),
    ],
)
def test_exit_codes(error, code):
    assert issubclass(error, errors.RenyiConvexError)
    assert error("x").exit_code == code
