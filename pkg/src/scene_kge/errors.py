"""Exception types shared across the toolkit."""


class SceneKgError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(SceneKgError):
    """Malformed input: bad term, out-of-range id, invalid config value."""


class FrozenGraphError(SceneKgError):
    """Mutation attempted on a frozen graph."""


class ParseError(SceneKgError):
    """N-Triples input rejected; carries 1-based line and 0-based byte column."""

    def __init__(self, line_number: int, byte_column: int, message: str):
        super().__init__(f"line {line_number}, col {byte_column}: {message}")
        self.line_number = line_number
        self.byte_column = byte_column
        self.message = message


class OntologyError(SceneKgError):
    """Invalid class hierarchy, e.g. a subclass cycle."""


class TrainingError(SceneKgError):
    """Training could not run or produced non-finite parameters."""


class SamplingError(SceneKgError):
    """Negative sampling impossible (e.g. single-entity graph)."""


class FormatError(SceneKgError):
    """Malformed embedding file."""


class NumericError(SceneKgError):
    """Numerically undefined operation, e.g. cosine of a zero vector."""


class DegenerateProjectionError(SceneKgError):
    """2D projection requested for points with no variance."""
