"""Builders for simplicial, cubical and explicitly listed cell complexes."""

from itertools import combinations, product
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from errors import MalformedInputError

from .cells import CellComplex


def build_simplicial(facets: Iterable[Sequence[int]]) -> CellComplex:
    """
    Build the simplicial complex generated by a list of facets.

    Every sub-simplex appears once, identified by its sorted vertex tuple.
    Cells are numbered by (dimension, vertex tuple).

    Args:
        facets: Vertex-id tuples; facets may have different sizes

    Returns:
        CellComplex whose labels are the sorted vertex tuples

    Raises:
        MalformedInputError: On empty input, negative ids or repeated vertices

    Example:
        >>> k = build_simplicial([(0, 1, 2)])
        >>> len(k), len(k.faces[k.find((0, 1, 2))])
        (7, 3)
    """
    simplices: set[tuple[int, ...]] = set()
    count = 0
    for facet in facets:
        count += 1
        vertices = tuple(int(v) for v in facet)
        if not vertices:
            raise MalformedInputError(f"Facet #{count} is empty")
        if any(v < 0 for v in vertices):
            raise MalformedInputError(f"Facet #{count} has a negative vertex id: {vertices}")
        if len(set(vertices)) != len(vertices):
            raise MalformedInputError(f"Facet #{count} repeats a vertex: {vertices}")
        ordered = tuple(sorted(vertices))
        for size in range(1, len(ordered) + 1):
            simplices.update(combinations(ordered, size))
    if not count:
        raise MalformedInputError("No facets given")

    ordered_simplices = sorted(simplices, key=lambda s: (len(s), s))
    index = {s: i for i, s in enumerate(ordered_simplices)}
    faces = []
    for simplex in ordered_simplices:
        if len(simplex) == 1:
            faces.append(())
            continue
        faces.append(tuple(sorted(
            index[simplex[:j] + simplex[j + 1:]] for j in range(len(simplex))
        )))

    complex_ = CellComplex(
        dims=tuple(len(s) - 1 for s in ordered_simplices),
        faces=tuple(faces),
        labels=tuple(ordered_simplices),
        vertex_ids={s[0]: i for s, i in index.items() if len(s) == 1},
    )
    complex_.validate()
    return complex_


def build_cubical(extents: Sequence[int], max_dimension: Optional[int] = 6) -> CellComplex:
    """
    Build the standard cubical grid with ``extents[i]`` cubes along axis i.

    Cells are encoded in doubled coordinates: odd entries mark the axes a
    cell extends along. Labels are ``(anchor, mask)`` with the anchor vertex
    coordinates and the bitmask of extent directions. External vertex ids are
    row-major vertex indices (first axis slowest).

    Args:
        extents: Top-dimensional cubes per axis
        max_dimension: Dimension cap; None disables it

    Returns:
        CellComplex with Π(2·e_i + 1) cells

    Raises:
        MalformedInputError: On empty/oversized extents or a non-positive extent

    Example:
        >>> build_cubical([2, 2]).dims.count(2)
        4
    """
    extents = tuple(int(e) for e in extents)
    if not extents:
        raise MalformedInputError("A grid needs at least one axis")
    if max_dimension is not None and len(extents) > max_dimension:
        raise MalformedInputError(
            f"Grid dimension {len(extents)} exceeds the cap of {max_dimension}"
        )
    if any(e <= 0 for e in extents):
        raise MalformedInputError(f"Grid extents must be positive, got {extents}")

    shape = tuple(e + 1 for e in extents)
    coords = sorted(
        product(*(range(2 * e + 1) for e in extents)),
        key=lambda c: (sum(x & 1 for x in c), c),
    )
    index = {c: i for i, c in enumerate(coords)}

    dims, faces, labels = [], [], []
    vertex_ids = {}
    for cell, c in enumerate(coords):
        odd_axes = [axis for axis, x in enumerate(c) if x & 1]
        dims.append(len(odd_axes))
        cell_faces = []
        for axis in odd_axes:
            for step in (-1, 1):
                shifted = list(c)
                shifted[axis] += step
                cell_faces.append(index[tuple(shifted)])
        faces.append(tuple(sorted(cell_faces)))
        anchor = tuple(x // 2 for x in c)
        labels.append((anchor, sum(1 << axis for axis in odd_axes)))
        if not odd_axes:
            vertex_ids[int(np.ravel_multi_index(anchor, shape))] = cell

    complex_ = CellComplex(
        dims=tuple(dims),
        faces=tuple(faces),
        labels=tuple(labels),
        vertex_ids=vertex_ids,
    )
    complex_.validate()
    return complex_


def from_incidence(
    dims: Sequence[int],
    faces: Sequence[Sequence[int]],
    labels: Optional[Sequence[Any]] = None,
    strict: bool = True,
) -> CellComplex:
    """
    Build a complex from explicit per-cell dimensions and face lists.

    Polytopality is not checked; only grading and the regularity proxy.

    Args:
        dims: Dimension of each cell
        faces: Codimension-1 faces of each cell
        labels: Optional per-cell payload
        strict: Enforce at least two faces per positive-dimensional cell

    Returns:
        Validated CellComplex; 0-cells double as external vertex ids
    """
    complex_ = CellComplex(
        dims=tuple(int(d) for d in dims),
        faces=tuple(tuple(sorted(int(f) for f in cell_faces)) for cell_faces in faces),
        labels=None if labels is None else tuple(labels),
        vertex_ids={c: c for c, d in enumerate(dims) if int(d) == 0},
    )
    complex_.validate(strict=strict)
    return complex_
