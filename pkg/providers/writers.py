"""Output providers: decomposition, field and route JSON."""

import json
import sys
from typing import Any, Optional

from complexes import CellComplex, ComplexStats
from morse import GradientField, MorseFunction


def _kind(complex_: CellComplex, cell: int) -> str:
    dim = complex_.dims[cell]
    if dim == 0:
        return "minimum"
    if dim == complex_.dimension:
        return "maximum"
    return "saddle"


def _label(complex_: CellComplex, cell: int) -> Any:
    if complex_.labels is None:
        return None
    label = complex_.labels[cell]
    return list(label) if isinstance(label, tuple) else label


def field_to_dict(
    complex_: CellComplex,
    field_: GradientField,
    function: Optional[MorseFunction] = None,
) -> dict[str, Any]:
    """Complex and field in the format read_field_json accepts."""
    data: dict[str, Any] = {
        "dims": list(complex_.dims),
        "faces": [list(f) for f in complex_.faces],
        **field_.to_dict(),
    }
    if function is not None:
        data["values"] = list(function.values)
    return data


def decomposition_to_dict(
    complex_: CellComplex,
    field_: GradientField,
    decomp,
    stats: Optional[ComplexStats] = None,
    route=None,
) -> dict[str, Any]:
    """
    Serialize a decomposition.

    Args:
        complex_: Complex the decomposition was built on
        field_: Its gradient field
        decomp: Decomposition
        stats: Size profile to embed
        route: Optional Route to embed

    Returns:
        Dict with ``critical``, ``regions``, ``ms_labels``, ``field`` and ``stats``
    """
    critical = [
        {"id": c, "dim": complex_.dims[c], "kind": _kind(complex_, c), "label": _label(complex_, c)}
        for c in sorted(field_.critical)
    ]
    critical.extend(
        {"id": r.critical, "dim": r.dimension, "kind": "boundary-critical",
         "label": _label(complex_, r.critical)}
        for r in decomp.descending if r.via_boundary
    )
    ms_labels = [
        {"cell": cell, "pairs": [list(pair) for pair in sorted(pairs)]}
        for cell, pairs in sorted(decomp.ms_label.items())
        if decomp.ascending
    ]
    data: dict[str, Any] = {
        "critical": critical,
        "regions": [r.to_dict() for r in decomp.regions],
        "ms_labels": ms_labels,
        "field": field_.to_dict(),
        "stats": None,
    }
    if stats is not None:
        data["stats"] = {**stats.to_dict(), "visits": decomp.visits}
    if route is not None:
        data["route"] = route.to_dict()
    return data


def dumps(data: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(data: Any, path: Optional[str] = None) -> None:
    """
    Write canonical JSON to a file, or to stdout when ``path`` is None.

    Example:
        >>> write_json({"b": 1, "a": [2]}, "out.json")
    """
    text = dumps(data)
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
