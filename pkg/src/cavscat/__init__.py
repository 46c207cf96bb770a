"""Two-dimensional scattering of two-level atoms by a resonant cavity mode."""

__version__ = "0.1.0"

from .model import (Channel, ConfigError, ConvergenceError, ExitChannel, ModeFunction, ModeShape,  # noqa: E402
                    ScatterConfig, Tolerances)
from .scattering import amplitude, build_table, differential, totals  # noqa: E402

__all__ = ["Channel", "ConfigError", "ConvergenceError", "ExitChannel", "ModeFunction", "ModeShape",
           "ScatterConfig", "Tolerances", "amplitude", "build_table", "differential", "totals"]
