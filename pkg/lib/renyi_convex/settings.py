"""
Run settings: constants overlaid with [tool.renyi-convex] from pyproject.toml.
"""

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, replace
from pathlib import Path

from . import constants
from .log import get_logger

log = get_logger("settings")

_KEYS = {
    "seed": int,
    "tol": float,
    "max-doublings": int,
    "mc-samples": int,
}


@dataclass(frozen=True)
class Settings:
    seed: int = constants.DEFAULT_SEED
    tol: float = constants.DEFAULT_TOL
    max_doublings: int = constants.MAX_DOUBLINGS
    mc_samples: int = constants.MC_SAMPLES


def load_settings(path: str | Path | None = None) -> Settings:
    """
    Read the [tool.renyi-convex] table, if any.

    A missing file or table gives the defaults. Unknown keys are logged and skipped.
    """
    settings = Settings()
    if path is None:
        path = Path("pyproject.toml")
    path = Path(path)
    if not path.exists():
        return settings
    try:
        with path.open("rb") as f:
            table = tomllib.load(f).get("tool", {}).get("renyi-convex", {})
    except tomllib.TOMLDecodeError as e:
        log.warning(f"cannot parse {path}: {e}")
        return settings

    overrides = {}
    for key, value in table.items():
        if key not in _KEYS:
            log.info(f"ignoring unknown setting {key!r}")
            continue
        overrides[key.replace("-", "_")] = _KEYS[key](value)
    return replace(settings, **overrides)
