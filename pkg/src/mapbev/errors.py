"""Exception types shared across the package."""


class MapBevError(Exception):
    """Base class for all package errors."""


class GeoDomainError(MapBevError, ValueError):
    """Coordinate outside the validity band of a projection."""


class ParseError(MapBevError, ValueError):
    """Malformed or inconsistent road-graph document."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class ConfigError(MapBevError, ValueError):
    """Invalid experiment configuration or raster geometry."""


class ShapeError(MapBevError, ValueError):
    """Tensor shape incompatible with the configured grid/model."""


class ValidationError(MapBevError, ValueError):
    """Runtime data failed a contract check (e.g. non-binary ground truth)."""
