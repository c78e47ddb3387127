"""
Command Base Classes
====================

This module provides the pieces every subcommand is built from:
- CommandBase: base class with lifecycle methods for all subcommands
- CommandRegistry: scans commands/manifest.json and imports commands lazily

COMMAND LIFECYCLE:
------------------
    build_parser()      add_arguments()   flags of this subcommand
        │
        ▼
    start(argv)  ─────► on_launch()       read bodies and parameters
        │               on_run()          yield ComputationRecords
        │                   │
        ▼                   │
    exit code ◄─────────────┘
                        on_exit()         plot data, summary lines

CREATING A COMMAND:
-------------------
    class AspCommand(CommandBase):
        name = "asp"
        help = "L_p affine surface areas"

        def add_arguments(self, parser):
            add_body_argument(parser)

        def on_run(self):
            yield self.record(value, parameters={"p": p})

Then list the module in commands/manifest.json:

    {"asp": "asp"}

The registry reads the manifest without importing anything; the module of
the selected subcommand is imported when it is run.
"""

import argparse
import importlib
import json
import time
from collections.abc import Iterator
from importlib import resources

from . import constants
from .errors import InvalidArgument
from .log import configure, get_logger
from .quadrature import RuleFamily, family_for_bodies
from .records import ComputationRecord, RecordWriter, body_digest, classify, load_body
from .settings import Settings, load_settings

log = get_logger("cli")

# =============================================================================
# SHARED ARGUMENT HELPERS
# =============================================================================


def parse_number_list(text: str) -> list[float]:
    """Comma separated reals; "inf", "-inf" allowed."""
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}") from e


def parse_order_list(text: str) -> list[str]:
    """Like parse_number_list but keeps "kl" and the p tags (-n+, -n-)."""
    values = [v.strip() for v in text.split(",") if v.strip()]
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def parse_s_grid(text: str) -> list[float]:
    """start:stop:ratio, e.g. 0.1:1e-3:0.5."""
    from .surface_bodies import default_s_grid

    try:
        start, stop, ratio = (float(v) for v in text.split(":"))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"s grid must be start:stop:ratio, got {text!r}") from e
    try:
        return [float(s) for s in default_s_grid(start, stop, ratio)]
    except InvalidArgument as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def add_body_argument(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--body", required=required, help="body descriptor JSON file")


def add_direction_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dir", default="PQ", choices=["PQ", "QP"], help="divergence direction")


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("common")
    group.add_argument("--seed", type=int, default=None, help=f"random seed (default {constants.DEFAULT_SEED})")
    group.add_argument("--tol", type=float, default=None, help=f"relative tolerance (default {constants.DEFAULT_TOL:g})")
    group.add_argument("--timings", action="store_true", help="record wall time")
    group.add_argument("--config", default=None, help="pyproject.toml with a [tool.renyi-convex] table")
    verbosity = group.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    return common


# =============================================================================
# COMMAND BASE CLASS
# =============================================================================


class CommandBase:
    """
    Base class for all subcommands.

    Subclass this, set name and help, and override add_arguments() and
    on_run(). Don't call lifecycle methods directly; use start().

    Attributes:
    -----------
    name : str
        Subcommand name, as listed in the manifest
    args : argparse.Namespace
        Parsed arguments. Set by start().
    settings : Settings
        Defaults overlaid with the config file and --seed / --tol

    Library calls take their rule family from family(), so the seed,
    mc-samples and max-doublings settings reach every integral.
    """

    name = "unnamed"
    help = ""

    def __init__(self) -> None:
        self.args = None
        self.settings = Settings()
        self.body = None
        self.document = None
        self.digest = ""
        self.stream = None
        self._started = 0.0

    # =========================================================================
    # LIFECYCLE METHODS - Override these in your command
    # =========================================================================

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Add the flags of this subcommand. Default: none."""

    def on_launch(self) -> None:
        """
        Called after parsing, before on_run().

        Default: loads --body when the command has one.
        """
        path = getattr(self.args, "body", None)
        if path:
            self.body, self.document = load_body(path)
            self.digest = body_digest(self.document)

    def on_run(self) -> Iterator[ComputationRecord]:
        """Yield one record per computed quantity. Default: nothing."""
        return iter(())

    def on_exit(self) -> int:
        """Called after every record was written. Returns the exit code."""
        return 0

    # =========================================================================
    # CONTROL
    # =========================================================================

    def build_parser(self, prog: str) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(prog=f"{prog} {self.name}", description=self.help, parents=[_common_parser()])
        self.add_arguments(parser)
        return parser

    def start(self, argv: list[str], writer_stream, prog: str = "renyi-convex") -> int:
        self.args = self.build_parser(prog).parse_args(argv)
        configure(1 if self.args.verbose else -1 if self.args.quiet else 0)
        settings = load_settings(self.args.config)
        overrides = {}
        if self.args.seed is not None:
            overrides["seed"] = self.args.seed
        if self.args.tol is not None:
            if not self.args.tol > 0.0:
                raise InvalidArgument(f"--tol must be positive, got {self.args.tol}")
            overrides["tol"] = self.args.tol
        self.settings = Settings(**{**settings.__dict__, **overrides})

        self.stream = writer_stream
        writer = RecordWriter(writer_stream, timings=self.args.timings)
        self.on_launch()
        self._started = time.perf_counter()
        for record in self.on_run():
            writer.write(record)
        log.debug(f"{self.name}: {writer.count} records")
        return self.on_exit()

    def record(
        self, value, parameters: dict | None = None, err_estimate: float = 0.0, classification: str | None = None
    ) -> ComputationRecord:
        """A record for the current body, timed from the previous record."""
        now = time.perf_counter()
        elapsed, self._started = now - self._started, now
        value = float(value)
        return ComputationRecord(
            command=self.name,
            body_digest=self.digest,
            parameters=dict(parameters or {}),
            value=value,
            err_estimate=float(err_estimate),
            classification=classification or classify(value),
            wall_time=elapsed if self.args is not None and self.args.timings else 0.0,
        )

    def family(self, bodies=None) -> RuleFamily:
        """The default rule family for these bodies (default: the --body), built from the settings."""
        return family_for_bodies(
            bodies or [self.body],
            seed=self.settings.seed,
            mc_samples=self.settings.mc_samples,
            max_doublings=self.settings.max_doublings,
        )


# =============================================================================
# REGISTRY
# =============================================================================


class CommandRegistry:
    """
    Subcommands listed in a manifest, imported on first use.

    Parameters:
    -----------
    package : str
        Package holding the command modules and manifest.json
    """

    def __init__(self, package: str = "renyi_convex.commands") -> None:
        self._package = package
        self._manifest = None  # module name -> subcommand name
        self._instances = {}

    def scan(self) -> dict[str, str]:
        """Read manifest.json (no imports). Returns subcommand -> module name."""
        if self._manifest is None:
            try:
                text = resources.files(self._package).joinpath("manifest.json").read_text()
                self._manifest = json.loads(text)
            except (OSError, ValueError) as e:
                log.warning(f"cannot read command manifest: {e}")
                self._manifest = {}
            log.debug(f"found {len(self._manifest)} commands")
        return {command: module for module, command in self._manifest.items()}

    def names(self) -> list[str]:
        return sorted(self.scan())

    def _find_command_class(self, module):
        for attr_name in dir(module):
            if attr_name.startswith("_"):
                continue
            attr = getattr(module, attr_name)
            if isinstance(attr, type) and issubclass(attr, CommandBase) and attr.__module__ == module.__name__:
                return attr
        return None

    def get_or_load(self, command: str) -> CommandBase:
        if command in self._instances:
            return self._instances[command]
        modules = self.scan()
        if command not in modules:
            raise InvalidArgument(f"unknown command {command!r} (choose from {', '.join(self.names())})")
        module = importlib.import_module(f"{self._package}.{modules[command]}")
        command_class = self._find_command_class(module)
        if command_class is None:
            raise InvalidArgument(f"no CommandBase subclass in {modules[command]}")
        log.debug(f"loaded {command_class.__name__}")
        instance = command_class()
        self._instances[command] = instance
        return instance
