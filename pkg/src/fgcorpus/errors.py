"""Exception types shared across the package.

InputError maps to CLI exit code 1, InvariantError to exit code 2.
"""


class InputError(Exception):
    """A problem with user-supplied files, paths or configuration."""


class InvariantError(Exception):
    """An internal consistency guarantee was violated."""
