"""
Logging setup.

Modules log through get_logger("quad") and friends; messages come out on
stderr as "[quad] message", the same tag style the command output uses.
stdout is reserved for the record stream.
"""

import logging
import sys

_ROOT = "renyi_convex"
_configured = False


class TagFormatter(logging.Formatter):
    """Render "renyi_convex.quad" as "[quad] message"."""

    def format(self, record: logging.LogRecord) -> str:
        tag = record.name.rsplit(".", 1)[-1]
        message = record.getMessage()
        if record.levelno >= logging.WARNING:
            message = f"{record.levelname.lower()}: {message}"
        return f"[{tag}] {message}"


def get_logger(tag: str) -> logging.Logger:
    return logging.getLogger(f"{_ROOT}.{tag}")


def configure(verbosity: int = 0) -> None:
    """
    Install the stderr handler once.

    Parameters:
    -----------
    verbosity : int
        -1 = warnings only, 0 = info, 1 or more = debug
    """
    global _configured
    root = logging.getLogger(_ROOT)
    if verbosity < 0:
        root.setLevel(logging.WARNING)
    elif verbosity == 0:
        root.setLevel(logging.INFO)
    else:
        root.setLevel(logging.DEBUG)
    if _configured:
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(TagFormatter())
    root.addHandler(handler)
    root.propagate = False
    _configured = True
