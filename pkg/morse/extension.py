"""Extension of vertex scalar data to a gradient field by lower-star pairing."""

import heapq
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

import networkx as nx

from complexes import CellComplex, boundary_subcomplex
from errors import MalformedInputError, NotPseudoManifoldError

from .field import GradientField, MorseFunction


@dataclass
class ExtensionReport:
    """
    Bookkeeping of one extension run.

    Attributes:
        boundary_first: Whether boundary cells of each lower star were matched first
        fallbacks: Vertices whose lower star was re-paired by the plain scheme
    """
    boundary_first: bool
    fallbacks: list[int] = field(default_factory=list)


def vertex_ranks(complex_: CellComplex, values: Mapping[int, float]) -> dict[int, int]:
    """
    Rank 0-cells by (value, cell id), the symbolic perturbation for ties.

    Raises:
        MalformedInputError: If a 0-cell has no value
    """
    vertices = complex_.cells_of_dim(0)
    missing = [v for v in vertices if v not in values]
    if missing:
        raise MalformedInputError(f"Missing vertex values for 0-cells {missing[:10]}")
    ordered = sorted(vertices, key=lambda v: (float(values[v]), v))
    return {v: rank for rank, v in enumerate(ordered)}


def lower_star_values(complex_: CellComplex, values: Mapping[int, float]) -> MorseFunction:
    """Value of each cell as the maximum over its vertices."""
    vertex_ranks(complex_, values)
    return MorseFunction(tuple(
        max(float(values[v]) for v in complex_.vertices[c]) for c in complex_.cells
    ))


def _greedy(
    complex_: CellComplex,
    cells: Iterable[int],
    keys: Mapping[int, tuple],
    allow: Callable[[int, int], bool],
) -> tuple[dict[int, int], list[int]]:
    """Pair cells with their unique unclassified face, else mark the least free cell critical."""
    unclassified = set(cells)
    pairs: dict[int, int] = {}
    critical: list[int] = []
    one: list[tuple[tuple, int]] = []
    zero: list[tuple[tuple, int]] = []

    def free_faces(cell: int) -> list[int]:
        return [f for f in complex_.faces[cell] if f in unclassified]

    def schedule(cell: int) -> None:
        count = len(free_faces(cell))
        if count == 1:
            heapq.heappush(one, (keys[cell], cell))
        elif count == 0:
            heapq.heappush(zero, (keys[cell], cell))

    def touch(cell: int) -> None:
        for coface in complex_.cofaces[cell]:
            if coface in unclassified:
                schedule(coface)

    for cell in sorted(unclassified, key=lambda c: keys[c]):
        schedule(cell)

    while unclassified:
        while one:
            _, cell = heapq.heappop(one)
            if cell not in unclassified:
                continue
            free = free_faces(cell)
            if len(free) != 1 or not allow(free[0], cell):
                if not free:
                    heapq.heappush(zero, (keys[cell], cell))
                continue
            face = free[0]
            pairs[face] = cell
            unclassified.discard(face)
            unclassified.discard(cell)
            touch(face)
            touch(cell)

        chosen = None
        while zero:
            _, cell = heapq.heappop(zero)
            if cell in unclassified and not free_faces(cell):
                chosen = cell
                break
        if chosen is None:
            for cell in sorted(unclassified, key=lambda c: keys[c]):
                schedule(cell)
            continue
        critical.append(chosen)
        unclassified.discard(chosen)
        touch(chosen)

    return pairs, critical


def _has_cycle(complex_: CellComplex, pairs: Mapping[int, int]) -> bool:
    graph = nx.DiGraph()
    for tail, head in pairs.items():
        graph.add_node(tail)
        for face in complex_.faces[head]:
            if face != tail and face in pairs:
                graph.add_edge(tail, face)
    return not nx.is_directed_acyclic_graph(graph)


def extend_with_report(
    complex_: CellComplex,
    values: Mapping[int, float],
    boundary_first: bool = True,
) -> tuple[GradientField, ExtensionReport]:
    """
    Extend vertex values to a gradient field, returning run bookkeeping.

    Each lower star (cells whose highest-ranked vertex is v) is matched
    greedily: a cell with exactly one unclassified face is paired with it,
    otherwise the least unclassified cell without free faces becomes
    critical. Cells are ordered by their descending vertex-rank vector.
    With ``boundary_first`` the boundary part of each lower star is matched
    first, exactly as on ∂K, and the remaining cells may then pair boundary
    cells left critical there with interior cofaces.

    Args:
        complex_: Cell complex
        values: Value per 0-cell id
        boundary_first: Keep the field compatible with the boundary's field

    Returns:
        (GradientField, ExtensionReport)
    """
    ranks = vertex_ranks(complex_, values)
    keys: dict[int, tuple] = {}
    stars: dict[int, list[int]] = {v: [] for v in ranks}
    for cell in complex_.cells:
        vector = tuple(sorted((ranks[v] for v in complex_.vertices[cell]), reverse=True))
        keys[cell] = (vector, cell)
        stars[max(complex_.vertices[cell], key=ranks.get)].append(cell)

    boundary: set[int] = set()
    if boundary_first and complex_.dimension >= 1:
        try:
            _, inclusion = boundary_subcomplex(complex_)
            boundary = set(inclusion)
        except NotPseudoManifoldError:
            boundary = set()
    report = ExtensionReport(boundary_first=bool(boundary))

    def anything(face: int, cell: int) -> bool:
        return True

    def not_within_boundary(face: int, cell: int) -> bool:
        return not (face in boundary and cell in boundary)

    pairs: dict[int, int] = {}
    critical: list[int] = []
    for vertex in sorted(ranks, key=ranks.get):
        star = stars[vertex]
        star_boundary = [c for c in star if c in boundary]
        if not star_boundary:
            star_pairs, star_critical = _greedy(complex_, star, keys, anything)
        else:
            first_pairs, pending = _greedy(complex_, star_boundary, keys, anything)
            rest = [c for c in star if c not in boundary] + pending
            second_pairs, star_critical = _greedy(complex_, rest, keys, not_within_boundary)
            star_pairs = {**first_pairs, **second_pairs}
            if _has_cycle(complex_, star_pairs):
                report.fallbacks.append(vertex)
                star_pairs, star_critical = _greedy(complex_, star, keys, anything)
        pairs.update(star_pairs)
        critical.extend(star_critical)

    return GradientField(pairs=pairs, critical=frozenset(critical)), report


def extend_from_vertex_values(
    complex_: CellComplex,
    values: Mapping[int, float],
    boundary_first: bool = True,
) -> GradientField:
    """
    Extend vertex scalar data to a valid discrete gradient field.

    Args:
        complex_: Cell complex
        values: Value per 0-cell id; ties are broken by cell id

    Returns:
        GradientField whose critical 0-cells include the global minimum

    Raises:
        MalformedInputError: If a vertex value is missing

    Example:
        >>> k = build_simplicial([(0, 1)])
        >>> extend_from_vertex_values(k, {0: 0.0, 1: 1.0}).pairs
        {1: 2}
    """
    field_, _ = extend_with_report(complex_, values, boundary_first=boundary_first)
    return field_
