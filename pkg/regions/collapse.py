"""Greedy elementary-collapse oracle for regions."""

from collections import deque

from complexes import CellComplex

from .descending import Region


def _order_complex(complex_: CellComplex, cells: frozenset[int]) -> set[frozenset[int]]:
    """All chains c0 < c1 < ... of region cells under the face order."""
    below = {c: complex_.closure([c]) & cells - {c} for c in cells}
    simplices: set[frozenset[int]] = set()
    stack = [frozenset((c,)) for c in cells]
    while stack:
        chain = stack.pop()
        if chain in simplices:
            continue
        simplices.add(chain)
        lowest = min(chain, key=lambda c: complex_.dims[c])
        for face in below[lowest]:
            stack.append(chain | {face})
    return simplices


def collapse_residue(complex_: CellComplex, region: Region) -> set[int]:
    """
    Collapse a region greedily toward its critical cell.

    The region is an open set, so it is modelled by the order complex of
    its cells (one simplex per chain of cells ordered by the face
    relation), which is a compact deformation retract of it. Free faces are
    removed with their unique coface until nothing is free; the vertex of
    the critical cell is never removed.

    Args:
        complex_: Complex the region was built on
        region: Region to collapse

    Returns:
        Region cells still present in the collapsed model, the critical cell excluded
    """
    simplices = _order_complex(complex_, region.cells)
    cofaces: dict[frozenset[int], set[frozenset[int]]] = {s: set() for s in simplices}
    for simplex in simplices:
        if len(simplex) > 1:
            for cell in simplex:
                cofaces[simplex - {cell}].add(simplex)

    protected = frozenset((region.critical,))

    def order(simplex: frozenset[int]) -> tuple:
        return (len(simplex), sorted(simplex))

    alive = set(simplices)
    work = deque(sorted(alive, key=order))
    while work:
        face = work.popleft()
        if face not in alive or face == protected:
            continue
        ups = [c for c in cofaces[face] if c in alive]
        if len(ups) != 1 or any(c in alive for c in cofaces[ups[0]]):
            continue
        top = ups[0]
        alive.discard(face)
        alive.discard(top)
        for removed in (face, top):
            if len(removed) > 1:
                work.extend(removed - {cell} for cell in removed)

    return {cell for simplex in alive for cell in simplex} - {region.critical}


def collapses_to_critical(complex_: CellComplex, region: Region) -> bool:
    """True when greedy elementary collapses reduce the region to its critical cell."""
    return not collapse_residue(complex_, region)
