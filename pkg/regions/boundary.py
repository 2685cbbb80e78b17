"""Descending regions of boundary-critical cells on complexes with boundary."""

from typing import Optional, Sequence

from complexes import CellComplex, boundary_subcomplex
from errors import FieldContractError
from morse import GradientField, restrict_field, validate_field

from .descending import (
    DESCENDING,
    MembershipIndex,
    Region,
    complete_cells,
    critical_order,
    descending_regions,
    frame_search,
)


def check_compatible(
    field_: GradientField,
    boundary_field: GradientField,
    inclusion: Sequence[int],
) -> None:
    """
    Require V and V_b to agree on every V-pair lying inside ∂K.

    Raises:
        FieldContractError: On a disagreeing pair
    """
    local = {parent: index for index, parent in enumerate(inclusion)}
    for tail, head in sorted(field_.pairs.items()):
        if tail in local and head in local:
            if boundary_field.pairs.get(local[tail]) != local[head]:
                raise FieldContractError(
                    f"V pairs boundary cells ({tail}, {head}) but the boundary field does not"
                )


def boundary_critical_cells(
    field_: GradientField,
    boundary_field: GradientField,
    inclusion: Sequence[int],
) -> list[int]:
    """Boundary-field critical cells that V pairs into the interior, as ids in K."""
    local = set(inclusion)
    result = []
    for index in sorted(boundary_field.critical):
        parent = inclusion[index]
        head = field_.pairs.get(parent)
        if head is not None and head not in local:
            result.append(parent)
    return result


def boundary_regions(
    complex_: CellComplex,
    field_: GradientField,
    boundary_field: Optional[GradientField] = None,
    interior_regions: Optional[Sequence[Region]] = None,
    threads: int = 1,
) -> list[Region]:
    """
    Build descending regions of boundary-critical cells.

    A boundary-field critical cell ν that V pairs into the interior gets a
    region in two stages: its descending region inside ∂K under V_b, then
    for every dim-ν cell of that region paired by V to an interior β, the
    descending region of β treated as critical. The union is ν's region.
    Cells critical in V itself need no extra work and are skipped.

    Args:
        complex_: Pseudo-manifold with boundary
        field_: Gradient field on the whole complex
        boundary_field: Field on ∂K; V restricted to ∂K when None
        interior_regions: Already built descending regions of V
        threads: Worker threads for the ∂K pass

    Returns:
        Regions (kind descending, via_boundary set) keyed by ids in K,
        empty when the boundary is empty

    Raises:
        FieldContractError: If V and V_b disagree or V_b is not a valid field
    """
    boundary, inclusion = boundary_subcomplex(complex_)
    if not len(boundary):
        return []

    if boundary_field is None:
        boundary_field = restrict_field(field_, inclusion)
    else:
        report = validate_field(boundary, boundary_field)
        if not report.ok:
            raise FieldContractError(
                f"Boundary field is invalid: {'; '.join(report.violations)}"
            )
    check_compatible(field_, boundary_field, inclusion)

    if interior_regions is None:
        interior_regions = descending_regions(complex_, field_, threads=threads)
    index = MembershipIndex()
    for region in interior_regions:
        index.add_region(region)

    surface = {
        region.critical: region
        for region in descending_regions(boundary, boundary_field, threads=threads)
    }
    local_boundary = set(inclusion)

    result: list[Region] = []
    pending_dim: Optional[int] = None
    pending: list[Region] = []
    for local_critical in critical_order(boundary, boundary_field):
        nu = inclusion[local_critical]
        head = field_.pairs.get(nu)
        if head is None or head in local_boundary:
            continue
        rank = complex_.dims[nu]
        if pending_dim is not None and rank != pending_dim:
            for region in pending:
                index.add(region.critical, region.dimension + 1, region.cells)
            pending = []
        pending_dim = rank

        stage_one = surface[local_critical]
        cells = {inclusion[c] for c in stage_one.cells}
        frame = {inclusion[c] for c in stage_one.frame}
        visits = stage_one.visits
        for alpha in sorted(cells):
            if complex_.dims[alpha] != rank:
                continue
            beta = field_.pairs.get(alpha)
            if beta is None or beta in local_boundary:
                continue
            seeds = [f for f in complex_.faces[beta] if f != alpha]
            beta_frame, steps = frame_search(complex_, field_, seeds)
            beta_cells, checks = complete_cells(
                complex_, field_, nu, rank + 1, {alpha, beta} | beta_frame, index
            )
            cells |= beta_cells
            frame |= beta_frame
            visits += steps + checks

        region = Region(
            critical=nu,
            kind=DESCENDING,
            dimension=rank,
            cells=frozenset(cells),
            frame=frozenset(frame),
            via_boundary=True,
            visits=visits,
        )
        pending.append(region)
        result.append(region)
    return result
