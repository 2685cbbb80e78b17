"""Ascending regions through the dual complex and the Morse–Smale labeling."""

from dataclasses import dataclass, field, replace
from itertools import product
from typing import Optional

from complexes import CellComplex, dual
from morse import GradientField

from .boundary import boundary_regions
from .descending import ASCENDING, Region, descending_regions


def ascending_regions(
    complex_: CellComplex,
    field_: GradientField,
    threads: int = 1,
) -> list[Region]:
    """
    Build ascending regions as descending regions of the dual.

    On K* a p-cell becomes an (n-p)-cell and every arrow (α, β) becomes
    (β, α). Cell ids are shared, so the descending region of α* in K* is
    read directly as the ascending region of α in K.

    Args:
        complex_: Cell complex (closed inputs give the documented guarantees)
        field_: Acyclic gradient field
        threads: Worker threads per dimension

    Returns:
        Regions of kind "ascending" whose ``dimension`` is the index in K
    """
    regions = descending_regions(dual(complex_), field_.reversed(), threads=threads, kind=ASCENDING)
    return [replace(r, dimension=complex_.dims[r.critical]) for r in regions]


@dataclass
class Decomposition:
    """
    All regions of a field and the per-cell Morse–Smale labels.

    Attributes:
        descending: Descending regions (boundary-critical ones last)
        ascending: Ascending regions
        membership: Cell → indices into ``descending + ascending``
        ms_label: Cell → {(descending owner, ascending owner)}
    """
    descending: list[Region]
    ascending: list[Region]
    membership: dict[int, set[int]] = field(default_factory=dict)
    ms_label: dict[int, set[tuple[int, int]]] = field(default_factory=dict)

    @property
    def regions(self) -> list[Region]:
        return self.descending + self.ascending

    def region(self, critical: int, kind: str = "descending") -> Optional[Region]:
        pool = self.descending if kind == "descending" else self.ascending
        return next((r for r in pool if r.critical == critical), None)

    def owners(self, cell: int, kind: str = "descending") -> list[int]:
        """Critical cells whose region of the given kind contains ``cell``."""
        offset = 0 if kind == "descending" else len(self.descending)
        pool = self.descending if kind == "descending" else self.ascending
        return sorted(
            pool[i - offset].critical
            for i in self.membership.get(cell, ())
            if offset <= i < offset + len(pool)
        )

    def uncovered(self, complex_: CellComplex, field_: GradientField, kind: str = "descending") -> list[int]:
        """Regular cells in no region of the given kind."""
        return [
            c for c in complex_.cells
            if not field_.is_critical(c) and not self.owners(c, kind)
        ]

    def overlaps(self, kind: str = "descending") -> list[int]:
        """Cells lying in more than one region of the given kind."""
        return [c for c in sorted(self.membership) if len(self.owners(c, kind)) > 1]

    @property
    def visits(self) -> int:
        return sum(r.visits for r in self.regions)


def label_cells(
    complex_: CellComplex,
    descending: list[Region],
    ascending: list[Region],
) -> Decomposition:
    """Index region membership and intersect owners into Morse–Smale labels."""
    membership: dict[int, set[int]] = {}
    down: dict[int, list[int]] = {}
    up: dict[int, list[int]] = {}
    for position, region in enumerate(descending + ascending):
        owners = down if position < len(descending) else up
        for cell in region.cells:
            membership.setdefault(cell, set()).add(position)
            owners.setdefault(cell, []).append(region.critical)

    ms_label = {
        cell: set(product(down.get(cell, ()), up.get(cell, ())))
        for cell in complex_.cells
    }
    return Decomposition(
        descending=descending,
        ascending=ascending,
        membership=membership,
        ms_label=ms_label,
    )


def morse_smale(
    complex_: CellComplex,
    field_: GradientField,
    threads: int = 1,
    boundary: bool = False,
    boundary_field: Optional[GradientField] = None,
    ascending: bool = True,
) -> Decomposition:
    """
    Compute the full decomposition of a field.

    Args:
        complex_: Cell complex
        field_: Acyclic gradient field
        threads: Worker threads per dimension
        boundary: Also build regions of boundary-critical cells
        boundary_field: Field on ∂K; V restricted to ∂K when None
        ascending: Build ascending regions (labels stay empty otherwise)

    Returns:
        Decomposition with regions, membership and labels

    Example:
        >>> d = morse_smale(k, classify(k, dimension_function))
        >>> all(d.ms_label[c] == {(c, c)} for c in k.cells)
        True
    """
    down = descending_regions(complex_, field_, threads=threads)
    if boundary:
        down = down + boundary_regions(
            complex_, field_, boundary_field=boundary_field,
            interior_regions=down, threads=threads,
        )
    up = ascending_regions(complex_, field_, threads=threads) if ascending else []
    return label_cells(complex_, down, up)
