"""Error types shared across the package.

Three failure classes are distinguished so the CLI can map them to exit codes:
bad input (2), blown resource bound (3), and structural mismatches raised when
a requested certificate does not exist for the given input.
"""

from __future__ import annotations


class InputError(ValueError):
    """Malformed or semantically invalid input (bad file, bad subset, bad label)."""


class ResourceLimitError(RuntimeError):
    """A declared enumeration or stabilization bound was exceeded."""


class StructuralMismatchError(RuntimeError):
    """The input lacks the structure a verification routine needs (no witness exists)."""
