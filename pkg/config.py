"""Environment-driven defaults and the validated run configuration."""

import os
from dataclasses import dataclass, field
from typing import Optional

from dotenv import load_dotenv

load_dotenv()

INPUT_FORMATS = ("off", "grid", "facets", "field-json")
VALUE_FORMATS = ("csv", "embedded")


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")


def default_threads() -> int:
    """Worker threads for same-dimension region building (MORSE_THREADS, default 1)."""
    return max(1, _env_int("MORSE_THREADS", 1))


def max_dimension() -> int:
    """Dimension cap for inputs (MORSE_MAX_DIMENSION, default 6)."""
    return _env_int("MORSE_MAX_DIMENSION", 6)


def repair_step_factor() -> int:
    """Multiplier for the repair step budget (MORSE_REPAIR_STEP_FACTOR, default 10)."""
    return max(1, _env_int("MORSE_REPAIR_STEP_FACTOR", 10))


def max_vpaths() -> int:
    """Bound on enumerated V-paths (MORSE_MAX_VPATHS, default 10000)."""
    return max(1, _env_int("MORSE_MAX_VPATHS", 10000))


@dataclass(frozen=True)
class RunConfig:
    """
    One pipeline invocation.

    Attributes:
        command: Subcommand ('decompose', 'simplify', 'route', 'stats', 'validate')
        input_path: Complex or raster file
        input_format: One of INPUT_FORMATS
        values_path: CSV of vertex values, or None when values are embedded
        boundary: Build boundary-critical regions
        ascending: Build ascending regions and Morse-Smale labels
        repair: Push merge points until descending regions are disks
        simplify_threshold: Cancel pairs closer than this (0 disables)
        route: Optional (start, target) cell ids
        output_path: Destination for the JSON result, None for stdout
        threads: Worker threads per dimension
        verbose: Print stage messages
        allow_high_dimension: Lift the dimension cap
    """
    command: str
    input_path: str
    input_format: str
    values_path: Optional[str] = None
    boundary: bool = False
    ascending: bool = False
    repair: bool = False
    simplify_threshold: float = 0.0
    route: Optional[tuple[int, int]] = None
    output_path: Optional[str] = None
    threads: int = field(default_factory=default_threads)
    verbose: bool = False
    allow_high_dimension: bool = False

    def __post_init__(self):
        if self.input_format not in INPUT_FORMATS:
            raise ValueError(
                f"Unknown input format: {self.input_format}. "
                f"Supported: {', '.join(INPUT_FORMATS)}"
            )
        if self.simplify_threshold < 0:
            raise ValueError(
                f"Simplify threshold must be >= 0, got {self.simplify_threshold}"
            )
        if self.threads < 1:
            raise ValueError(f"Thread count must be >= 1, got {self.threads}")
        if self.command == "route" and self.route is None:
            raise ValueError("The 'route' command needs --route <start> <target>")

    @property
    def values_format(self) -> str:
        return "csv" if self.values_path else "embedded"

    @property
    def dimension_cap(self) -> Optional[int]:
        return None if self.allow_high_dimension else max_dimension()
