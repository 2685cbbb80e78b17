"""V-path enumeration, cancellation of critical pairs and threshold simplification."""

from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

import config as settings
from complexes import CellComplex
from errors import AmbiguousCancellationError, NotCancellableError

from .field import GradientField, MorseFunction


@dataclass(frozen=True)
class VPath:
    """Alternating cells τ0 < σ0 > τ1 < σ1 ... with V(τ_i) = σ_i."""
    cells: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.cells)

    @property
    def end(self) -> int:
        return self.cells[-1]


@dataclass
class VPathEnumeration:
    """
    Result of enumerate_vpaths.

    Attributes:
        paths: Maximal V-paths in DFS order (ascending cell ids at each branch)
        truncated: True when the bound cut the enumeration short
    """
    paths: list[VPath] = field(default_factory=list)
    truncated: bool = False


def _successors(complex_: CellComplex, field_: GradientField, cell: int) -> tuple[int, ...]:
    head = field_.pairs.get(cell)
    if head is None:
        return ()
    return tuple(f for f in complex_.faces[head] if f != cell)


def enumerate_vpaths(
    complex_: CellComplex,
    field_: GradientField,
    start: int,
    max_paths: Optional[int] = None,
) -> VPathEnumeration:
    """
    List all maximal V-paths leaving a cell.

    Paths start at the faces of ``start`` when it is critical, or at
    ``start`` itself when it is a tail. A path ends at a cell that is not a
    tail: a critical cell or a cell paired upward into another head.

    Args:
        complex_: Cell complex
        field_: Acyclic gradient field
        start: Critical cell or tail
        max_paths: Stop after this many paths; None for the MORSE_MAX_VPATHS bound

    Returns:
        VPathEnumeration with ``truncated`` set when the bound was hit

    Example:
        >>> [p.cells for p in enumerate_vpaths(circle, v, edge_ab).paths]
        [(a,), (b, bc, c, ca, a)]
    """
    if max_paths is None:
        max_paths = settings.max_vpaths()
    if field_.is_critical(start):
        roots = complex_.faces[start]
    elif field_.is_tail(start):
        roots = (start,)
    else:
        roots = ()

    result = VPathEnumeration()
    for root in roots:
        stack: list[tuple[int, ...]] = [(root,)]
        while stack:
            path = stack.pop()
            tail = path[-1]
            nexts = [n for n in _successors(complex_, field_, tail) if n not in path]
            if not field_.is_tail(tail) or not nexts:
                if len(result.paths) >= max_paths:
                    result.truncated = True
                    return result
                result.paths.append(VPath(path + (field_.pairs[tail],) if field_.is_tail(tail) else path))
                continue
            head = field_.pairs[tail]
            for nxt in reversed(nexts):
                stack.append(path + (head, nxt))
    return result


def _count_paths_to(
    complex_: CellComplex,
    field_: GradientField,
    sources: tuple[int, ...],
    target: int,
) -> dict[int, int]:
    """Number of V-paths from each reachable cell to ``target``, iteratively memoized."""
    counts: dict[int, int] = {}
    for source in sources:
        stack = [source]
        while stack:
            cell = stack[-1]
            if cell in counts:
                stack.pop()
                continue
            if cell == target:
                counts[cell] = 1
                stack.pop()
                continue
            if not field_.is_tail(cell):
                counts[cell] = 0
                stack.pop()
                continue
            pending = [n for n in _successors(complex_, field_, cell) if n not in counts]
            if pending:
                stack.extend(pending)
                continue
            counts[cell] = sum(counts[n] for n in _successors(complex_, field_, cell))
            stack.pop()
    return counts


def count_connecting_paths(
    complex_: CellComplex,
    field_: GradientField,
    sigma: int,
    tau: int,
) -> int:
    """Number of V-paths from the faces of ``sigma`` to ``tau``."""
    faces = complex_.faces[sigma]
    counts = _count_paths_to(complex_, field_, faces, tau)
    return sum(counts[f] for f in faces)


def cancel(
    complex_: CellComplex,
    field_: GradientField,
    sigma: int,
    tau: int,
) -> GradientField:
    """
    Cancel a critical pair joined by exactly one V-path.

    Arrows along the connecting path τ0 < σ0 > ... > τ_r = τ are reversed:
    τ0 is paired with σ and τ_i with σ_{i-1}.

    Args:
        complex_: Cell complex
        field_: Acyclic gradient field
        sigma: Critical (p+1)-cell
        tau: Critical p-cell

    Returns:
        New field with sigma and tau no longer critical

    Raises:
        NotCancellableError: If the cells are not a critical pair of adjacent
                             dimension or no connecting path exists
        AmbiguousCancellationError: If two or more connecting paths exist
    """
    if not (field_.is_critical(sigma) and field_.is_critical(tau)):
        raise NotCancellableError(f"Cells {sigma} and {tau} must both be critical")
    if complex_.dims[sigma] != complex_.dims[tau] + 1:
        raise NotCancellableError(
            f"Cell {sigma} has dimension {complex_.dims[sigma]}, "
            f"expected {complex_.dims[tau] + 1}"
        )

    faces = complex_.faces[sigma]
    counts = _count_paths_to(complex_, field_, faces, tau)
    total = sum(counts[f] for f in faces)
    if total == 0:
        raise NotCancellableError(f"No V-path joins {sigma} to {tau}")
    if total > 1:
        raise AmbiguousCancellationError(
            f"{total} V-paths join {sigma} to {tau}; cancellation needs exactly one",
            path_count=total,
        )

    # Walk the unique path: at each branch exactly one continuation has count 1.
    cell = next(f for f in faces if counts[f] == 1)
    previous_head = sigma
    pairs = dict(field_.pairs)
    while True:
        head = pairs.pop(cell, None) if cell != tau else None
        pairs[cell] = previous_head
        if cell == tau:
            break
        previous_head = head
        cell = next(n for n in complex_.faces[head] if n != cell and counts.get(n) == 1)

    return GradientField(pairs=pairs, critical=field_.critical - {sigma, tau})


def _reachable_counts(
    complex_: CellComplex,
    field_: GradientField,
    sigma: int,
) -> dict[int, int]:
    """Number of V-paths from the faces of ``sigma`` arriving at every reachable cell."""
    graph = nx.DiGraph()
    frontier = list(complex_.faces[sigma])
    graph.add_nodes_from(frontier)
    seen = set(frontier)
    while frontier:
        cell = frontier.pop()
        for nxt in _successors(complex_, field_, cell):
            graph.add_edge(cell, nxt)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)

    arriving = {cell: 0 for cell in graph.nodes}
    for face in complex_.faces[sigma]:
        arriving[face] += 1
    for cell in nx.topological_sort(graph):
        for nxt in graph.successors(cell):
            arriving[nxt] += arriving[cell]
    return arriving


def simplify_with_log(
    complex_: CellComplex,
    field_: GradientField,
    threshold: float,
    function: MorseFunction,
) -> tuple[GradientField, list[tuple[int, int]]]:
    """
    Repeatedly cancel the closest uniquely connected critical pair.

    Args:
        complex_: Cell complex
        field_: Acyclic gradient field
        threshold: Cancel pairs with f(σ) - f(τ) strictly below this value
        function: Values used to order candidate pairs

    Returns:
        (simplified field, cancelled (σ, τ) pairs in order)
    """
    cancelled: list[tuple[int, int]] = []
    if threshold <= 0:
        return field_, cancelled

    current = field_
    while True:
        best: Optional[tuple[float, int, int]] = None
        for sigma in sorted(current.critical):
            if complex_.dims[sigma] == 0:
                continue
            arriving = _reachable_counts(complex_, current, sigma)
            for tau, count in arriving.items():
                if count != 1 or not current.is_critical(tau):
                    continue
                gap = function[sigma] - function[tau]
                if gap < threshold and (best is None or (gap, sigma, tau) < best):
                    best = (gap, sigma, tau)
        if best is None:
            return current, cancelled
        _, sigma, tau = best
        current = cancel(complex_, current, sigma, tau)
        cancelled.append((sigma, tau))


def simplify(
    complex_: CellComplex,
    field_: GradientField,
    threshold: float,
    function: MorseFunction,
) -> GradientField:
    """
    Cancel uniquely connected critical pairs with value gap below a threshold.

    Pairs are taken in ascending (gap, σ, τ) order; pairs joined by several
    paths are skipped. Threshold 0 returns the input field.

    Example:
        >>> simplify(circle, two_minima, 0.5, f).critical  # one min, one max
        frozenset({a, e_ab})
    """
    simplified, _ = simplify_with_log(complex_, field_, threshold, function)
    return simplified
