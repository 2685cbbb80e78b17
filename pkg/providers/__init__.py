"""Provider layers for reading inputs and writing JSON artifacts."""

from .readers import (
    LoadedInput,
    load_input,
    read_facets,
    read_field_json,
    read_grid,
    read_off,
    read_values_csv,
)
from .writers import decomposition_to_dict, dumps, field_to_dict, write_json

__all__ = [
    "LoadedInput",
    "decomposition_to_dict",
    "dumps",
    "field_to_dict",
    "load_input",
    "read_facets",
    "read_field_json",
    "read_grid",
    "read_off",
    "read_values_csv",
    "write_json",
]
