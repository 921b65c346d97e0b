"""Command-line interface."""

from src.cli.main import build_parser, main, run

__all__ = ["main", "run", "build_parser"]
