"""Error hierarchy shared by the engines, the CLI and the MCP tools."""


class LevelnessError(Exception):
    """Base error for every failure raised by this package."""

    exit_code = 1


class InputError(LevelnessError):
    """Malformed or unsupported input (exit code 1)."""

    exit_code = 1


class NotCohenMacaulayError(InputError):
    """A verdict that presupposes a Cohen-Macaulay ring was requested."""

    pass


class UnsupportedDimensionError(InputError):
    """Geometry requested in a dimension the engine refuses to approximate."""

    pass


class ResourceError(LevelnessError):
    """A configured pair or degree cap was exceeded (exit code 2)."""

    exit_code = 2


class InconsistencyError(LevelnessError):
    """Two independent computations disagree; always a bug (exit code 3)."""

    exit_code = 3
