"""
renyi-convex command line
=========================

    renyi-convex <command> [flags]

COMMANDS:
---------
    asp            L_p affine surface areas
    renyi          Renyi divergences of P_K and Q_K
    mixed          mixed as_p and mixed divergences of n bodies
    omega          Omega_K, A_K and their p-limits
    surface-body   surface-body volumes, quotients and limits (n = 2)
    oracle         closed forms (l_r balls, disk laws)
    verify         acceptance suites

Records go to stdout, one JSON object per line; logging goes to stderr.

EXIT CODES:
-----------
    0  success
    1  verification failure
    2  invalid input
    3  non-convergence
"""

import argparse
import sys

from . import __version__
from .command_base import CommandRegistry
from .errors import RenyiConvexError
from .log import configure, get_logger

log = get_logger("cli")


def build_parser(registry: CommandRegistry) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="renyi-convex",
        description="Renyi divergences and L_p affine surface areas of convex bodies",
        epilog="run 'renyi-convex <command> --help' for the flags of a command",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=registry.names(), help="subcommand")
    parser.add_argument("args", nargs=argparse.REMAINDER, help=argparse.SUPPRESS)
    return parser


def main(argv: list[str] | None = None, stdout=None) -> int:
    configure(0)
    registry = CommandRegistry()
    ns = build_parser(registry).parse_args(argv)
    try:
        command = registry.get_or_load(ns.command)
        return command.start(ns.args, stdout or sys.stdout)
    except RenyiConvexError as e:
        log.error(str(e))
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
