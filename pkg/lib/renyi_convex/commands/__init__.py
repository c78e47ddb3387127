"""Subcommands of renyi-convex. manifest.json maps module name -> subcommand name."""
