"""Descending regions: frame search along V and recursive completion."""

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from complexes import CellComplex
from errors import FieldContractError, OrderingError
from morse import GradientField

DESCENDING = "descending"
ASCENDING = "ascending"

_INCLUDED = 1
_EXCLUDED = 2
_IN_PROGRESS = 3


@dataclass(frozen=True)
class Region:
    """
    One critical cell and the regular cells swept by V-paths leaving it.

    Attributes:
        critical: Owning critical (or boundary-critical) cell
        kind: "descending" or "ascending"
        dimension: Index of the owning cell in the complex the region was built on
        cells: All cells of the region, the owner included
        frame: The p- and (p-1)-cells reached by the frame search
        via_boundary: Built from a boundary-critical cell
        visits: Frame steps plus completion pair checks spent on this region
    """
    critical: int
    kind: str
    dimension: int
    cells: frozenset[int]
    frame: frozenset[int]
    via_boundary: bool = False
    visits: int = 0

    def __contains__(self, cell: int) -> bool:
        return cell in self.cells

    def __len__(self) -> int:
        return len(self.cells)

    def to_dict(self) -> dict:
        return {
            "critical": self.critical,
            "kind": self.kind,
            "dim": self.dimension,
            "via_boundary": self.via_boundary,
            "cells": sorted(self.cells),
        }


class MembershipIndex:
    """
    Per-cell owners of the regions built so far.

    Owners carry a rank; completion at rank p only treats owners of rank
    below p as blocking.
    """

    def __init__(self):
        self.owners: dict[int, set[int]] = {}
        self.ranks: dict[int, int] = {}

    def add(self, owner: int, rank: int, cells: Iterable[int]) -> None:
        self.ranks[owner] = rank
        for cell in cells:
            self.owners.setdefault(cell, set()).add(owner)

    def add_region(self, region: Region) -> None:
        self.add(region.critical, region.dimension, region.cells)

    def blocks(self, cell: int, owner: int, rank: int) -> bool:
        """True if ``cell`` lies in a region of another owner of lower rank."""
        return any(
            other != owner and self.ranks[other] < rank
            for other in self.owners.get(cell, ())
        )


def frame_search(
    complex_: CellComplex,
    field_: GradientField,
    seeds: Iterable[int],
) -> tuple[set[int], int]:
    """Breadth-first V-path search from the tail cells among ``seeds``; returns (frame, steps)."""
    frame: set[int] = set()
    seen: set[int] = set()
    queue = deque(sorted(s for s in seeds if field_.is_tail(s)))
    steps = 0
    while queue:
        tail = queue.popleft()
        if tail in seen:
            continue
        seen.add(tail)
        steps += 1
        head = field_.pairs[tail]
        frame.add(tail)
        frame.add(head)
        for face in complex_.faces[head]:
            if face != tail and face not in seen and field_.is_tail(face):
                queue.append(face)
    return frame, steps


def descending_frame(complex_: CellComplex, field_: GradientField, critical: int) -> set[int]:
    """
    Collect the p- and (p-1)-cells on V-paths leaving a critical p-cell.

    Breadth-first search seeded with the faces of ``critical`` that are
    tails; each tail τ adds V(τ) and then the tail faces of V(τ).

    Args:
        complex_: Cell complex
        field_: Acyclic gradient field
        critical: Critical cell s

    Returns:
        Frame cells (empty for a critical 0-cell)

    Raises:
        FieldContractError: If ``critical`` is not critical in ``field_``
    """
    if not field_.is_critical(critical):
        raise FieldContractError(f"Cell {critical} is not critical")
    frame, _ = frame_search(complex_, field_, complex_.faces[critical])
    return frame


def complete_cells(
    complex_: CellComplex,
    field_: GradientField,
    owner: int,
    rank: int,
    start: set[int],
    index: MembershipIndex,
) -> tuple[set[int], int]:
    """
    Grow ``start`` by the V-pairs below its rank-p cells whose other cofaces all belong.

    A pair (α, β) under the closure of the region's p-cells is included when
    every coface of α other than β inside that closure is in the region,
    checking unresolved cofaces first. It is excluded when α, β or such a
    coface lies in a lower-rank region of another owner, is critical, or
    flows out of the closure.
    """
    region = set(start)
    tops = [c for c in region if complex_.dims[c] == rank]
    hull = complex_.closure(tops)
    verdict: dict[int, int] = {}
    checks = 0

    def blocked(cell: int) -> bool:
        return index.blocks(cell, owner, rank)

    candidates = sorted(
        c for c in hull
        if c not in region and field_.is_tail(c) and field_.pairs[c] in hull
    )
    for candidate in candidates:
        if candidate in verdict:
            continue
        stack = [candidate]
        while stack:
            alpha = stack[-1]
            state = verdict.get(alpha)
            if state in (_INCLUDED, _EXCLUDED):
                stack.pop()
                continue
            beta = field_.pairs[alpha]
            if state is None:
                verdict[alpha] = _IN_PROGRESS
                checks += 1
                if blocked(alpha) or blocked(beta):
                    verdict[alpha] = _EXCLUDED
                    stack.pop()
                    continue

            outcome, pending = _INCLUDED, None
            for gamma in complex_.cofaces[alpha]:
                if gamma == beta or gamma not in hull or gamma in region:
                    continue
                if field_.is_critical(gamma) or blocked(gamma):
                    outcome = _EXCLUDED
                    break
                tail = field_.tail_of(gamma)
                if tail is None:
                    if field_.pairs[gamma] not in hull:
                        outcome = _EXCLUDED
                        break
                    tail = gamma
                state = verdict.get(tail)
                if state == _EXCLUDED:
                    outcome = _EXCLUDED
                    break
                if state == _IN_PROGRESS:
                    raise FieldContractError(
                        f"Completion re-entered pair ({tail}, {field_.pairs[tail]}); "
                        f"the field has a closed V-path"
                    )
                if state is None:
                    pending = tail
                    break

            if pending is not None:
                stack.append(pending)
                continue
            verdict[alpha] = outcome
            if outcome == _INCLUDED:
                region.add(alpha)
                region.add(beta)
            stack.pop()

    return region, checks


def build_region(
    complex_: CellComplex,
    field_: GradientField,
    critical: int,
    index: MembershipIndex,
    kind: str = DESCENDING,
) -> Region:
    """Frame plus completion for one critical cell against a frozen index."""
    rank = complex_.dims[critical]
    frame, steps = frame_search(complex_, field_, complex_.faces[critical])
    cells, checks = complete_cells(complex_, field_, critical, rank, {critical} | frame, index)
    return Region(
        critical=critical,
        kind=kind,
        dimension=rank,
        cells=frozenset(cells),
        frame=frozenset(frame),
        visits=steps + checks,
    )


def complete_region(
    complex_: CellComplex,
    field_: GradientField,
    critical: int,
    frame: Iterable[int],
    lower_regions: Sequence[Region],
) -> Region:
    """
    Complete a frame into the descending region of its critical cell.

    Args:
        complex_: Cell complex
        field_: Acyclic gradient field
        critical: Critical p-cell s
        frame: Output of descending_frame for s
        lower_regions: Regions of every critical cell of dimension below p

    Returns:
        Region containing s, the frame and every included pair

    Raises:
        OrderingError: If a lower-dimensional region is missing
    """
    rank = complex_.dims[critical]
    built = {r.critical for r in lower_regions}
    missing = sorted(
        c for c in field_.critical
        if complex_.dims[c] < rank and c not in built
    )
    if missing:
        raise OrderingError(
            f"Regions of critical cells {missing[:10]} must be built before cell {critical}"
        )
    index = MembershipIndex()
    for region in lower_regions:
        if region.dimension < rank:
            index.add_region(region)
    frame = set(frame)
    cells, checks = complete_cells(complex_, field_, critical, rank, {critical} | frame, index)
    return Region(
        critical=critical,
        kind=DESCENDING,
        dimension=rank,
        cells=frozenset(cells),
        frame=frozenset(frame),
        visits=checks,
    )


def critical_order(complex_: CellComplex, field_: GradientField) -> list[int]:
    """Critical cells by ascending (dimension, id)."""
    return sorted(field_.critical, key=lambda c: (complex_.dims[c], c))


def descending_regions(
    complex_: CellComplex,
    field_: GradientField,
    threads: int = 1,
    kind: str = DESCENDING,
    index: Optional[MembershipIndex] = None,
) -> list[Region]:
    """
    Build the descending region of every critical cell.

    Dimensions are processed in ascending order. Cells of one dimension
    only consult regions of lower dimension, so they are built in parallel
    against a frozen index; the index is extended after each dimension.

    Args:
        complex_: Cell complex
        field_: Acyclic gradient field
        threads: Worker threads per dimension
        kind: Label stored on the regions
        index: Index to extend; a fresh one when None

    Returns:
        Regions in ascending (dimension, id) order

    Example:
        >>> [len(r) for r in descending_regions(circle, two_minima)]
        [1, 1, 1, 3]
    """
    index = index if index is not None else MembershipIndex()
    order = critical_order(complex_, field_)
    regions: list[Region] = []
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        for dim in range(complex_.dimension + 1):
            batch = [c for c in order if complex_.dims[c] == dim]
            if not batch:
                continue
            built = list(pool.map(
                lambda c: build_region(complex_, field_, c, index, kind=kind), batch
            ))
            for region in built:
                index.add_region(region)
            regions.extend(built)
    return regions


def membership(regions: Sequence[Region]) -> dict[int, set[int]]:
    """Cell → indices into ``regions`` containing it."""
    result: dict[int, set[int]] = {}
    for position, region in enumerate(regions):
        for cell in region.cells:
            result.setdefault(cell, set()).add(position)
    return result


def region_of(regions: Sequence[Region], critical: int) -> Optional[Region]:
    return next((r for r in regions if r.critical == critical), None)
