"""Exception hierarchy shared by the simulation services, the CLI and the HTTP API."""

from typing import Optional


class SimulationError(Exception):
    """Base class for every error raised by the simulator."""


class InvalidDimensionError(SimulationError, ValueError):
    """Array shapes or lengths do not fit the operation."""


class InsufficientLengthError(InvalidDimensionError):
    """OFDM symbol too short for the number of unknown channel coefficients."""


class InvalidParameterError(SimulationError, ValueError):
    """A scalar parameter is out of its admissible range."""


class InvalidReflectionError(SimulationError, ValueError):
    """An IRS reflection coefficient is not unit-modulus."""


class InvalidRootError(SimulationError, ValueError):
    """Zadoff-Chu root shares a factor with the sequence length."""


class SingularSystemError(SimulationError):
    """Training design leads to a rank-deficient least-squares system."""


class DegenerateChannelError(SimulationError):
    """Accumulated channel power is zero, normalization impossible."""


class ScenarioError(SimulationError):
    """Scenario file could not be parsed or validated."""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        where = path or "<scenario>"
        if line is not None:
            where = f"{where}:{line}"
        super().__init__(f"{where}: {message}")


class ExportError(SimulationError):
    """Result file could not be written."""

    def __init__(self, message: str, path: str):
        self.path = path
        super().__init__(f"{path}: {message}")
