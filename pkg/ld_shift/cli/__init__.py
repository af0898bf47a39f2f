"""CLI module for LD-Shift."""

from .cli import main

__all__ = ["main"]
