"""
renyi-convex entry point
========================

    uv run python main.py asp --body bodies/disk.json --p 1
    uv run python main.py verify --suite all

lib/ is put on sys.path so the package runs from a checkout without
installation, the way the tests see it.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent / "lib"))

from renyi_convex.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
