"""Input providers: OFF meshes, facet lists, grid rasters, CSV values and field JSON."""

import csv
import json
from dataclasses import dataclass
from typing import Any, Iterator, Optional

import numpy as np

from complexes import CellComplex, build_cubical, build_simplicial, from_incidence
from errors import MalformedInputError
from morse import GradientField, MorseFunction


@dataclass
class LoadedInput:
    """
    Everything read from one input.

    Attributes:
        complex: The cell complex
        vertex_values: Value per 0-cell id, when the input carried vertex data
        field: Gradient field, when the input carried one
        function: Value per cell, when the input carried one
    """
    complex: CellComplex
    vertex_values: Optional[dict[int, float]] = None
    field: Optional[GradientField] = None
    function: Optional[MorseFunction] = None


def _lines(path: str) -> Iterator[tuple[int, str]]:
    """Non-blank, non-comment lines with 1-based line numbers."""
    try:
        with open(path, encoding="utf-8") as handle:
            for number, raw in enumerate(handle, start=1):
                line = raw.split("#", 1)[0].strip()
                if line:
                    yield number, line
    except OSError as e:
        raise MalformedInputError(f"Cannot read input: {e.strerror}", path=path)


def _ints(tokens: list[str], path: str, line: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise MalformedInputError(f"Expected integers, got {' '.join(tokens)!r}", path, line)


def _floats(tokens: list[str], path: str, line: int) -> list[float]:
    try:
        return [float(t) for t in tokens]
    except ValueError:
        raise MalformedInputError(f"Expected numbers, got {' '.join(tokens)!r}", path, line)


def _build(builder, path: str, line: Optional[int], *args, **kwargs) -> CellComplex:
    try:
        return builder(*args, **kwargs)
    except MalformedInputError as e:
        if e.path is not None:
            raise
        raise MalformedInputError(str(e), path=path, line=line)


def _to_cells(complex_: CellComplex, values: dict[int, float], path: str) -> dict[int, float]:
    """Re-key external vertex ids to 0-cell ids."""
    mapping = complex_.vertex_ids or {}
    result = {}
    for vertex, value in values.items():
        if vertex not in mapping:
            continue
        result[mapping[vertex]] = value
    missing = sorted(v for v in mapping if v not in values)
    if missing:
        raise MalformedInputError(f"No value for vertices {missing[:10]}", path=path)
    return result


def read_off(path: str) -> LoadedInput:
    """
    Read an OFF-style mesh.

    An optional ``OFF`` keyword is followed by ``nv nf [ne]``, ``nv`` vertex
    lines and ``nf`` facet lines ``k v1 .. vk``. A vertex line with a fourth
    number after x y z carries that vertex's value.

    Raises:
        MalformedInputError: With ``path:line`` on any parse failure
    """
    lines = list(_lines(path))
    if lines and lines[0][1].upper().startswith("OFF"):
        keyword = lines[0][1][3:].split()
        lines = lines[1:] if not keyword else [(lines[0][0], " ".join(keyword))] + lines[1:]
    if not lines:
        raise MalformedInputError("Missing OFF counts line", path=path, line=1)

    number, header = lines[0]
    counts = _ints(header.split(), path, number)
    if len(counts) < 2:
        raise MalformedInputError("Counts line needs at least vertex and facet counts", path, number)
    nv, nf = counts[0], counts[1]
    if len(lines) < 1 + nv + nf:
        last = lines[-1][0]
        raise MalformedInputError(
            f"Expected {nv} vertex and {nf} facet lines, found {len(lines) - 1}", path, last
        )

    values: dict[int, float] = {}
    for vertex, (number, line) in enumerate(lines[1:1 + nv]):
        coords = _floats(line.split(), path, number)
        if len(coords) >= 4:
            values[vertex] = coords[3]

    facets = []
    for number, line in lines[1 + nv:1 + nv + nf]:
        entries = _ints(line.split(), path, number)
        if not entries or entries[0] != len(entries) - 1:
            raise MalformedInputError("Facet line must be 'k v1 .. vk'", path, number)
        if any(v >= nv for v in entries[1:]):
            raise MalformedInputError(f"Facet refers to a vertex beyond {nv - 1}", path, number)
        facets.append(entries[1:])

    complex_ = _build(build_simplicial, path, lines[1 + nv][0] if nf else None, facets)
    vertex_values = None
    if values:
        vertex_values = _to_cells(complex_, values, path)
    return LoadedInput(complex=complex_, vertex_values=vertex_values)


def read_facets(path: str) -> LoadedInput:
    """Read one facet per line as whitespace-separated vertex ids."""
    facets = []
    first_line = None
    for number, line in _lines(path):
        first_line = first_line or number
        facets.append(_ints(line.split(), path, number))
    if not facets:
        raise MalformedInputError("No facets given", path=path)
    return LoadedInput(complex=_build(build_simplicial, path, first_line, facets))


def read_grid(path: str, max_dimension: Optional[int] = 6) -> LoadedInput:
    """
    Read a grid raster: ``grid d e1 .. ed`` then row-major vertex values.

    The extents count cubes per axis, so Π(e_i + 1) values follow.

    Raises:
        MalformedInputError: With ``path:line`` on a bad header or value count
    """
    lines = list(_lines(path))
    if not lines:
        raise MalformedInputError("Empty grid raster", path=path, line=1)
    number, header = lines[0]
    tokens = header.split()
    if tokens[0] != "grid":
        raise MalformedInputError("Header must start with 'grid'", path, number)
    numbers = _ints(tokens[1:], path, number)
    if not numbers or numbers[0] != len(numbers) - 1:
        raise MalformedInputError("Header must be 'grid d e1 .. ed'", path, number)
    extents = numbers[1:]
    complex_ = _build(build_cubical, path, number, extents, max_dimension=max_dimension)

    raster: list[float] = []
    last = number
    for number, line in lines[1:]:
        raster.extend(_floats(line.split(), path, number))
        last = number
    expected = int(np.prod([e + 1 for e in extents]))
    if len(raster) != expected:
        raise MalformedInputError(f"Expected {expected} values, found {len(raster)}", path, last)

    values = np.asarray(raster, dtype=float)
    vertex_values = {
        complex_.vertex_ids[index]: float(value) for index, value in enumerate(values)
    }
    return LoadedInput(complex=complex_, vertex_values=vertex_values)


def read_values_csv(path: str) -> dict[int, float]:
    """
    Read ``vertex_id,value`` rows; a non-numeric first row is a header.

    Returns:
        External vertex id → value
    """
    values: dict[int, float] = {}
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            for number, row in enumerate(csv.reader(handle), start=1):
                if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
                    continue
                if len(row) < 2:
                    raise MalformedInputError("Expected 'vertex_id,value'", path, number)
                try:
                    vertex, value = int(row[0]), float(row[1])
                except ValueError:
                    if number == 1:
                        continue
                    raise MalformedInputError(f"Bad row {','.join(row)!r}", path, number)
                if vertex in values:
                    raise MalformedInputError(f"Vertex {vertex} listed twice", path, number)
                values[vertex] = value
    except OSError as e:
        raise MalformedInputError(f"Cannot read values: {e.strerror}", path=path)
    return values


def read_field_json(path: str) -> LoadedInput:
    """
    Read a complex with its field.

    Keys: ``dims``, ``faces`` (per cell), ``pairs`` ([[tail, head]]),
    ``critical``; optional ``values`` (per cell) and ``labels``.
    """
    try:
        with open(path, encoding="utf-8") as handle:
            data: dict[str, Any] = json.load(handle)
    except OSError as e:
        raise MalformedInputError(f"Cannot read input: {e.strerror}", path=path)
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"Invalid JSON: {e.msg}", path=path, line=e.lineno)

    try:
        dims, faces = data["dims"], data["faces"]
    except (KeyError, TypeError):
        raise MalformedInputError("Field JSON needs 'dims' and 'faces'", path=path)
    labels = data.get("labels")
    if labels is not None:
        labels = [tuple(label) if isinstance(label, list) else label for label in labels]
    try:
        complex_ = from_incidence(dims, faces, labels=labels)
        field_ = GradientField.from_dict(data)
    except MalformedInputError as e:
        raise MalformedInputError(str(e), path=path)

    function = None
    if data.get("values") is not None:
        if len(data["values"]) != len(complex_):
            raise MalformedInputError(
                f"{len(data['values'])} values for {len(complex_)} cells", path=path
            )
        function = MorseFunction(tuple(float(v) for v in data["values"]))
    return LoadedInput(complex=complex_, field=field_, function=function)


def load_input(
    path: str,
    fmt: str,
    values_path: Optional[str] = None,
    max_dimension: Optional[int] = 6,
) -> LoadedInput:
    """
    Read an input file of any supported format.

    Args:
        path: Input file
        fmt: 'off', 'grid', 'facets' or 'field-json'
        values_path: Optional CSV of vertex values overriding embedded ones
        max_dimension: Dimension cap; None disables it

    Returns:
        LoadedInput

    Raises:
        ValueError: On an unknown format
        MalformedInputError: On unreadable or inconsistent input

    Examples:
        >>> load_input("square.off", "off", values_path="square.csv")
        >>> load_input("bowl.grid", "grid")
    """
    if fmt == "off":
        loaded = read_off(path)
    elif fmt == "facets":
        loaded = read_facets(path)
    elif fmt == "grid":
        loaded = read_grid(path, max_dimension=max_dimension)
    elif fmt == "field-json":
        loaded = read_field_json(path)
    else:
        raise ValueError(
            f"Unknown input format: {fmt}. "
            f"Supported: off, grid, facets, field-json"
        )

    if max_dimension is not None and loaded.complex.dimension > max_dimension:
        raise MalformedInputError(
            f"Complex dimension {loaded.complex.dimension} exceeds the cap of {max_dimension}",
            path=path,
        )
    if values_path is not None:
        loaded.vertex_values = _to_cells(loaded.complex, read_values_csv(values_path), values_path)
    return loaded
