"""Command-line interface for the LBNN workbench."""

from .cli_interface import CLIInterface

__all__ = ['CLIInterface']
